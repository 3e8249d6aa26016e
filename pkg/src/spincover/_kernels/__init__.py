"""Multiplication-table kernels with a compiled core and a pure fallback.

The compiled extension (``_tables``, built from Cython) carries the hot
loops: associativity validation, element orders and the isomorphism
backtracking search.  When it is not built, or when the environment
variable ``SPINCOVER_PURE_PYTHON`` is set, the pure-Python twin
``tables_py`` is used instead.  Both produce identical results, including
identical isomorphism witnesses; ``benchmarks/bench_tables.py`` compares
their speed.
"""

from __future__ import annotations

import os

if os.environ.get("SPINCOVER_PURE_PYTHON"):
    from spincover._kernels import tables_py as _impl

    BACKEND = "python"
else:
    try:
        from spincover._kernels import _tables as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        from spincover._kernels import tables_py as _impl  # type: ignore[no-redef]

        BACKEND = "python"

EXHAUSTIVE_ASSOCIATIVITY_LIMIT = _impl.EXHAUSTIVE_ASSOCIATIVITY_LIMIT
find_identity = _impl.find_identity
latin_square_violation = _impl.latin_square_violation
inverse_table = _impl.inverse_table
associativity_violation = _impl.associativity_violation
element_orders = _impl.element_orders
is_abelian = _impl.is_abelian
find_isomorphism = _impl.find_isomorphism
check_isomorphism = _impl.check_isomorphism

__all__ = [
    "BACKEND",
    "EXHAUSTIVE_ASSOCIATIVITY_LIMIT",
    "find_identity",
    "latin_square_violation",
    "inverse_table",
    "associativity_violation",
    "element_orders",
    "is_abelian",
    "find_isomorphism",
    "check_isomorphism",
]
