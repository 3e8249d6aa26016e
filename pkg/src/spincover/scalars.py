"""Exact complex scalars over the Gaussian rationals, plus the float backend.

Every matrix entry in the exact layers of this package is a
:class:`GaussianRational`: a complex number whose real and imaginary parts
are arbitrary-precision rationals.  All arithmetic is exact; there is no
tolerance anywhere in the exact layer.  The float backend (plain ``complex``
values compared with :func:`approx_equal`) exists only for finite double
groups whose entries involve cos(pi/n) for general n.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

# Rational scalars are plain fractions: arbitrary precision, always stored
# reduced with a positive denominator, structural equality.
Rational = Fraction

#: Equality tolerance of the float backend, per real/imaginary component.
DEFAULT_TOLERANCE = 1e-9

_RationalLike = Union[int, Fraction]

_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


class ScalarParseError(ValueError):
    """Raised when a scalar string is not in the wire grammar."""


def _as_fraction(value: _RationalLike) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"exact scalars do not accept {type(value).__name__} values")
    return Fraction(value)


class GaussianRational:
    """A complex number with exact rational real and imaginary parts.

    Immutable and hashable.  Field operations are exact: associativity,
    distributivity and inverses hold with no tolerance.
    """

    __slots__ = ("_re", "_im")

    def __init__(self, re: _RationalLike = 0, im: _RationalLike = 0) -> None:
        object.__setattr__(self, "_re", _as_fraction(re))
        object.__setattr__(self, "_im", _as_fraction(im))

    @classmethod
    def _wrap(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        # Internal fast path: components are already Fraction instances.
        self = object.__new__(cls)
        object.__setattr__(self, "_re", re)
        object.__setattr__(self, "_im", im)
        return self

    @property
    def re(self) -> Fraction:
        return self._re

    @property
    def im(self) -> Fraction:
        return self._im

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("GaussianRational is immutable")

    # -- ring structure -------------------------------------------------

    def _coerce(self, other: object) -> "GaussianRational | None":
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return GaussianRational(other)
        return None

    def __add__(self, other: object) -> "GaussianRational":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return GaussianRational._wrap(self._re + rhs._re, self._im + rhs._im)

    __radd__ = __add__

    def __sub__(self, other: object) -> "GaussianRational":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return GaussianRational._wrap(self._re - rhs._re, self._im - rhs._im)

    def __rsub__(self, other: object) -> "GaussianRational":
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs - self

    def __mul__(self, other: object) -> "GaussianRational":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return GaussianRational._wrap(
            self._re * rhs._re - self._im * rhs._im,
            self._re * rhs._im + self._im * rhs._re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "GaussianRational":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self * rhs.inverse()

    def __rtruediv__(self, other: object) -> "GaussianRational":
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs * self.inverse()

    def __neg__(self) -> "GaussianRational":
        return GaussianRational._wrap(-self._re, -self._im)

    def __pos__(self) -> "GaussianRational":
        return self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._wrap(self._re, -self._im)

    def inverse(self) -> "GaussianRational":
        n = self.norm_sq()
        if n == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return GaussianRational._wrap(self._re / n, -self._im / n)

    def norm_sq(self) -> Fraction:
        """Exact squared modulus re^2 + im^2, a nonnegative rational."""
        return self._re * self._re + self._im * self._im

    def is_zero(self) -> bool:
        return self._re == 0 and self._im == 0

    # -- comparison and hashing -----------------------------------------

    def __eq__(self, other: object) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self._re == rhs._re and self._im == rhs._im

    def __hash__(self) -> int:
        return hash((self._re, self._im))

    def sort_key(self) -> tuple:
        return (self._re, self._im)

    # -- conversion ------------------------------------------------------

    def to_complex(self) -> complex:
        return complex(float(self._re), float(self._im))

    def __str__(self) -> str:
        return format_complex(self)

    def __repr__(self) -> str:
        return f"GaussianRational({self._re!r}, {self._im!r})"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I_UNIT = GaussianRational(0, 1)


# -- text grammar ---------------------------------------------------------
#
# Rationals:   p/q with the /q omitted when q = 1, e.g. "3/5", "-2", "0".
# Complex:     a+bi / a-bi, compressed: "0", "3/5", "i", "-i", "2i",
#              "1+i", "1-2/3i".  Printing always emits the reduced
#              canonical form; the parser accepts exactly this grammar.


def parse_rational(text: str) -> Fraction:
    s = text.strip()
    if not _RATIONAL_RE.match(s):
        raise ScalarParseError(f"not a rational scalar: {text!r}")
    return Fraction(s)


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


def _parse_imag_coefficient(token: str) -> Fraction:
    if token in ("", "+"):
        return Fraction(1)
    if token == "-":
        return Fraction(-1)
    return parse_rational(token)


def parse_complex(text: str) -> GaussianRational:
    """Parse ``a+bi`` / ``a-bi`` and its compressed forms."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ScalarParseError("empty scalar")
    if not s.endswith("i"):
        return GaussianRational(parse_rational(s), 0)
    body = s[:-1]
    split = 0
    for k in range(len(body) - 1, 0, -1):
        if body[k] in "+-" and body[k - 1] not in "+-/":
            split = k
            break
    re_token, im_token = body[:split], body[split:]
    try:
        im_part = _parse_imag_coefficient(im_token)
        re_part = parse_rational(re_token) if re_token else Fraction(0)
    except ScalarParseError:
        raise ScalarParseError(f"not a complex scalar: {text!r}") from None
    return GaussianRational(re_part, im_part)


def _imag_str(coefficient: Fraction) -> str:
    if coefficient == 1:
        return "i"
    if coefficient == -1:
        return "-i"
    return f"{coefficient}i"


def format_complex(value: GaussianRational) -> str:
    if value.im == 0:
        return format_rational(value.re)
    if value.re == 0:
        return _imag_str(value.im)
    sign = "+" if value.im > 0 else "-"
    magnitude = abs(value.im)
    tail = "i" if magnitude == 1 else f"{magnitude}i"
    return f"{value.re}{sign}{tail}"


# -- float backend --------------------------------------------------------


def approx_equal(a: complex, b: complex, tolerance: float = DEFAULT_TOLERANCE) -> bool:
    """Componentwise comparison used only by the float group backend."""
    return abs(a.real - b.real) <= tolerance and abs(a.imag - b.imag) <= tolerance


def component_distance(a: complex, b: complex) -> float:
    """Sup distance over the real and imaginary components."""
    return max(abs(a.real - b.real), abs(a.imag - b.imag))
