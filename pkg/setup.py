"""Build script for the optional compiled table kernels.

The package is fully functional without the extension: a pure-Python
implementation of the same kernels is selected at import time when the
compiled module is unavailable.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "spincover._kernels._tables",
                sources=["src/spincover/_kernels/_tables.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
else:
    ext_modules = []

setup(ext_modules=ext_modules)
