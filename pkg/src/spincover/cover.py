"""Exact 2x2 unitary and 3x3 orthogonal matrices and the spin covering maps.

The unitary matrices here have determinant +1 or -1 exactly; the det = +1
part is SU(2) and the det = -1 coset is reached by multiplying with the
parity lift i*Identity.  The two-to-one projection onto rotations is
:func:`covering_map`, and :func:`extended_covering_map` extends it over the
det = -1 coset so that the image is all of O(3) with the same kernel
{I, -I}.

Everything is computed over Gaussian rationals, so homomorphism and kernel
statements are checked by exact equality, never by closeness.  Topology is
out of scope: the two-component group here double-covers O(3) but, being
disconnected, is not a universal cover; nothing in this package asserts or
depends on connectivity statements, only on finite algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .scalars import (
    GaussianRational,
    ScalarParseError,
    format_complex,
    format_rational,
    parse_complex,
    parse_rational,
)

_ZERO = GaussianRational(0)
_ONE = GaussianRational(1)
_I = GaussianRational(0, 1)

Entry = GaussianRational
Row2 = tuple[Entry, Entry]


def _entry(value) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    return GaussianRational(value)


class UnitaryMat2:
    """A 2x2 unitary matrix over Gaussian rationals with det in {+1, -1}.

    Unitarity and the determinant constraint are validated exactly on
    construction, so every instance is an element of the det = +/-1
    unitary group.  For det = +1 the matrix automatically has the form
    ((z, w), (-conj w, conj z)) with |z|^2 + |w|^2 = 1.
    """

    __slots__ = ("_rows", "_det_sign")

    def __init__(self, rows: Sequence[Sequence[object]]) -> None:
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ValueError("expected a 2x2 matrix")
        m = tuple(tuple(_entry(v) for v in r) for r in rows)
        (a, b), (c, d) = m
        # M * M^dagger = I, checked entry by entry.
        if (
            a * a.conjugate() + b * b.conjugate() != _ONE
            or c * c.conjugate() + d * d.conjugate() != _ONE
            or not (a * c.conjugate() + b * d.conjugate()).is_zero()
        ):
            raise ValueError("matrix is not unitary")
        det = a * d - b * c
        if det == _ONE:
            sign = 1
        elif det == -_ONE:
            sign = -1
        else:
            raise ValueError(f"determinant must be +1 or -1, got {det}")
        object.__setattr__(self, "_rows", m)
        object.__setattr__(self, "_det_sign", sign)

    @classmethod
    def _trusted(cls, rows: tuple[Row2, Row2], det_sign: int) -> "UnitaryMat2":
        # Internal: for results of operations that preserve unitarity and
        # the det = +/-1 constraint by construction (products, negation,
        # conjugation).  External inputs always go through __init__.
        self = object.__new__(cls)
        object.__setattr__(self, "_rows", rows)
        object.__setattr__(self, "_det_sign", det_sign)
        return self

    @property
    def rows(self) -> tuple[Row2, Row2]:
        return self._rows

    @property
    def det_sign(self) -> int:
        return self._det_sign

    def is_special(self) -> bool:
        return self._det_sign == 1

    def is_unitary(self) -> bool:
        """Recheck the defining equations (used by the invariant tests)."""
        (a, b), (c, d) = self._rows
        det = a * d - b * c
        return (
            a * a.conjugate() + b * b.conjugate() == _ONE
            and c * c.conjugate() + d * d.conjugate() == _ONE
            and (a * c.conjugate() + b * d.conjugate()).is_zero()
            and det == GaussianRational(self._det_sign)
        )

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("UnitaryMat2 is immutable")

    def __getitem__(self, index: int) -> Row2:
        return self._rows[index]

    def __mul__(self, other: "UnitaryMat2") -> "UnitaryMat2":
        if not isinstance(other, UnitaryMat2):
            return NotImplemented
        a, b = self._rows, other._rows
        rows = (
            (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
            (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
        )
        return UnitaryMat2._trusted(rows, self._det_sign * other._det_sign)

    def __neg__(self) -> "UnitaryMat2":
        rows = tuple(tuple(-v for v in row) for row in self._rows)
        return UnitaryMat2._trusted(rows, self._det_sign)

    def scalar_mul(self, phase: GaussianRational) -> "UnitaryMat2":
        """Multiply by a fourth root of unity; det scales by phase squared."""
        ph2 = phase * phase
        if ph2 == _ONE:
            sign = self._det_sign
        elif ph2 == -_ONE:
            sign = -self._det_sign
        else:
            raise ValueError("scalar factor must be one of 1, -1, i, -i")
        rows = tuple(tuple(phase * v for v in row) for row in self._rows)
        return UnitaryMat2._trusted(rows, sign)

    def conjugate(self) -> "UnitaryMat2":
        """Entrywise complex conjugate (still unitary with the same det)."""
        rows = tuple(tuple(v.conjugate() for v in row) for row in self._rows)
        return UnitaryMat2._trusted(rows, self._det_sign)

    def conjugate_transpose(self) -> "UnitaryMat2":
        r = self._rows
        rows = (
            (r[0][0].conjugate(), r[1][0].conjugate()),
            (r[0][1].conjugate(), r[1][1].conjugate()),
        )
        return UnitaryMat2._trusted(rows, self._det_sign)

    def inverse(self) -> "UnitaryMat2":
        return self.conjugate_transpose()

    def apply(self, u: GaussianRational, v: GaussianRational) -> tuple[GaussianRational, GaussianRational]:
        r = self._rows
        return (r[0][0] * u + r[0][1] * v, r[1][0] * u + r[1][1] * v)

    def su2_components(self) -> tuple[GaussianRational, GaussianRational]:
        """Return (z, w) for a det = +1 matrix ((z, w), (-conj w, conj z))."""
        if self._det_sign != 1:
            raise ValueError("only det = +1 matrices have SU(2) components")
        return self._rows[0][0], self._rows[0][1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UnitaryMat2):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def sort_key(self) -> tuple:
        return tuple(part for row in self._rows for v in row for part in v.sort_key())

    def to_complex_rows(self) -> tuple[tuple[complex, complex], tuple[complex, complex]]:
        return tuple(tuple(v.to_complex() for v in row) for row in self._rows)

    def to_text(self) -> str:
        return ";".join(",".join(format_complex(v) for v in row) for row in self._rows)

    @classmethod
    def from_text(cls, text: str) -> "UnitaryMat2":
        return cls(_parse_rows(text, parse_complex, 2))

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"UnitaryMat2.from_text({self.to_text()!r})"


class OrthogonalMat3:
    """A 3x3 rational orthogonal matrix; R * R^T = I exactly, det = +/-1."""

    __slots__ = ("_rows", "_det_sign")

    def __init__(self, rows: Sequence[Sequence[object]]) -> None:
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("expected a 3x3 matrix")
        m = tuple(tuple(Fraction(v) for v in r) for r in rows)
        for i in range(3):
            for j in range(3):
                dot = sum(m[i][k] * m[j][k] for k in range(3))
                if dot != (1 if i == j else 0):
                    raise ValueError("matrix is not orthogonal")
        det = (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )
        if det == 1:
            sign = 1
        elif det == -1:
            sign = -1
        else:  # unreachable for an exactly orthogonal matrix
            raise ValueError(f"determinant must be +1 or -1, got {det}")
        object.__setattr__(self, "_rows", m)
        object.__setattr__(self, "_det_sign", sign)

    @classmethod
    def _trusted(cls, rows: tuple, det_sign: int) -> "OrthogonalMat3":
        # Internal: for operations preserving orthogonality by construction.
        self = object.__new__(cls)
        object.__setattr__(self, "_rows", rows)
        object.__setattr__(self, "_det_sign", det_sign)
        return self

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    @property
    def det_sign(self) -> int:
        return self._det_sign

    def is_orthogonal(self) -> bool:
        """Recheck the defining equations (used by the invariant tests)."""
        m = self._rows
        for i in range(3):
            for j in range(3):
                if sum(m[i][k] * m[j][k] for k in range(3)) != (1 if i == j else 0):
                    return False
        det = (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )
        return det == self._det_sign

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("OrthogonalMat3 is immutable")

    def __getitem__(self, index: int) -> tuple[Fraction, ...]:
        return self._rows[index]

    def __mul__(self, other: "OrthogonalMat3") -> "OrthogonalMat3":
        if not isinstance(other, OrthogonalMat3):
            return NotImplemented
        a, b = self._rows, other._rows
        rows = tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3))
            for i in range(3)
        )
        return OrthogonalMat3._trusted(rows, self._det_sign * other._det_sign)

    def __neg__(self) -> "OrthogonalMat3":
        rows = tuple(tuple(-v for v in row) for row in self._rows)
        return OrthogonalMat3._trusted(rows, -self._det_sign)

    def transpose(self) -> "OrthogonalMat3":
        rows = tuple(tuple(self._rows[j][i] for j in range(3)) for i in range(3))
        return OrthogonalMat3._trusted(rows, self._det_sign)

    def inverse(self) -> "OrthogonalMat3":
        return self.transpose()

    def apply(self, v: Sequence[Fraction]) -> tuple[Fraction, Fraction, Fraction]:
        return tuple(sum(self._rows[i][k] * v[k] for k in range(3)) for i in range(3))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OrthogonalMat3):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def sort_key(self) -> tuple:
        return tuple(v for row in self._rows for v in row)

    def to_text(self) -> str:
        return ";".join(",".join(format_rational(v) for v in row) for row in self._rows)

    @classmethod
    def from_text(cls, text: str) -> "OrthogonalMat3":
        return cls(_parse_rows(text, parse_rational, 3))

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"OrthogonalMat3.from_text({self.to_text()!r})"


def _parse_rows(text: str, scalar_parser, size: int) -> list[list]:
    rows = [part for part in text.strip().split(";")]
    if len(rows) != size:
        raise ScalarParseError(f"expected {size} rows separated by ';', got {len(rows)}")
    parsed = []
    for row in rows:
        cells = row.split(",")
        if len(cells) != size:
            raise ScalarParseError(f"expected {size} entries per row, got {len(cells)}")
        parsed.append([scalar_parser(cell) for cell in cells])
    return parsed


@dataclass(frozen=True)
class UnitQuaternion:
    """A quaternion with rational components and exact unit norm."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self) -> None:
        if self.a**2 + self.b**2 + self.c**2 + self.d**2 != 1:
            raise ValueError("components must have unit sum of squares")

    def components(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)


# -- fixed matrices ---------------------------------------------------------

IDENTITY2 = UnitaryMat2([[_ONE, _ZERO], [_ZERO, _ONE]])
PAULI_X = UnitaryMat2([[_ZERO, _ONE], [_ONE, _ZERO]])
PAULI_Y = UnitaryMat2([[_ZERO, -_I], [_I, _ZERO]])
PAULI_Z = UnitaryMat2([[_ONE, _ZERO], [_ZERO, -_ONE]])

IDENTITY3 = OrthogonalMat3([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
SPACE_INVERSION = OrthogonalMat3([[-1, 0, 0], [0, -1, 0], [0, 0, -1]])
#: The half turn about the y axis, diag(-1, 1, -1).
HALF_TURN_Y = OrthogonalMat3([[-1, 0, 0], [0, 1, 0], [0, 0, -1]])
#: diag(1, 1, -1), the mirror through the xy plane.
XY_MIRROR = OrthogonalMat3([[1, 0, 0], [0, 1, 0], [0, 0, -1]])


def parity_operator() -> UnitaryMat2:
    """The spinor lift of spatial inversion: i * Identity, squaring to -I."""
    return IDENTITY2.scalar_mul(_I)


def su2_from_zw(z: GaussianRational, w: GaussianRational) -> UnitaryMat2:
    """Build ((z, w), (-conj w, conj z)); requires |z|^2 + |w|^2 = 1."""
    return UnitaryMat2([[z, w], [-w.conjugate(), z.conjugate()]])


def covering_map(matrix: UnitaryMat2) -> OrthogonalMat3:
    """The two-to-one homomorphism from det = +1 unitaries onto rotations.

    For ((z, w), (-conj w, conj z)) the image rotation is

        [  Re(z^2 - w^2)   Im(z^2 + w^2)   -2 Re(z w) ]
        [ -Im(z^2 - w^2)   Re(z^2 + w^2)    2 Im(z w) ]
        [  2 Re(z conj w)  2 Im(z conj w)  |z|^2 - |w|^2 ]

    computed exactly.  A and -A map to the same rotation.
    """
    if not matrix.is_special():
        raise ValueError("covering_map requires det = +1; use extended_covering_map")
    z, w = matrix.su2_components()
    z2 = z * z
    w2 = w * w
    zw = z * w
    zwc = z * w.conjugate()
    # Orthogonality with det +1 is automatic for unit (z, w); the invariant
    # suites recheck it sample by sample via is_orthogonal().
    rows = (
        (z2.re - w2.re, z2.im + w2.im, -2 * zw.re),
        (-(z2.im - w2.im), z2.re + w2.re, 2 * zw.im),
        (2 * zwc.re, 2 * zwc.im, z.norm_sq() - w.norm_sq()),
    )
    return OrthogonalMat3._trusted(rows, 1)


def extended_covering_map(matrix: UnitaryMat2) -> OrthogonalMat3:
    """Extend the covering map over the det = -1 coset, onto all of O(3).

    A det = -1 matrix C factors as C = A * (i I) with A = C * (-i I) of
    det +1; its image is minus the rotation of A.  The factorisation is
    recomputed here, never trusted from the caller.  The image determinant
    matches the input determinant and the kernel stays {I, -I}.
    """
    if matrix.is_special():
        return covering_map(matrix)
    special_part = matrix.scalar_mul(-_I)
    return -covering_map(special_part)


def determinant_section(sign: int) -> UnitaryMat2:
    """The homomorphic right inverse of det: +1 -> I, -1 -> diag(-1, 1).

    diag(1, -1) would serve equally well; the single fixed choice keeps the
    twisted-pair form of the extension canonical.
    """
    if sign == 1:
        return IDENTITY2
    if sign == -1:
        return -PAULI_Z
    raise ValueError(f"sign must be +1 or -1, got {sign}")


@dataclass(frozen=True)
class SequenceAssertion:
    name: str
    passed: bool
    witness: Optional[str] = None

    def to_json(self) -> dict:
        return {"assertion": self.name, "pass": self.passed, "witness": self.witness}


@dataclass(frozen=True)
class ExactSequenceReport:
    """Results of the finite checks behind the split extension by Z2."""

    assertions: tuple[SequenceAssertion, ...]

    @property
    def all_pass(self) -> bool:
        return all(a.passed for a in self.assertions)

    def to_json(self) -> dict:
        return {
            "all_pass": self.all_pass,
            "assertions": [a.to_json() for a in self.assertions],
        }


def check_exact_sequence(samples: Iterable[UnitaryMat2]) -> ExactSequenceReport:
    """Check, on the given samples, that det splits the extension by Z2.

    The checks: the kernel of det coincides with the embedded special
    subgroup on the samples, det is surjective onto {+1, -1} (witnessed by
    the identity and the parity lift), and the section s -> diag(+/-1, 1)
    is a homomorphic right inverse of det (all four products checked).
    """
    results: list[SequenceAssertion] = []

    kernel_witness: Optional[str] = None
    for m in samples:
        in_kernel = m.is_special()
        (z, w), (c, d) = m.rows
        canonical = c == -w.conjugate() and d == z.conjugate()
        if in_kernel != canonical:
            kernel_witness = m.to_text()
            break
    results.append(
        SequenceAssertion(
            "kernel of det equals the embedded special subgroup on samples",
            kernel_witness is None,
            kernel_witness,
        )
    )

    parity = parity_operator()
    surjective = IDENTITY2.det_sign == 1 and parity.det_sign == -1
    results.append(
        SequenceAssertion(
            "det is surjective onto {+1,-1} (witnesses: identity, parity lift)",
            surjective,
            None if surjective else parity.to_text(),
        )
    )

    right_inverse = all(determinant_section(s).det_sign == s for s in (1, -1))
    results.append(
        SequenceAssertion(
            "section is a right inverse of det on both signs",
            right_inverse,
        )
    )

    hom_witness: Optional[str] = None
    for s in (1, -1):
        for t in (1, -1):
            if determinant_section(s) * determinant_section(t) != determinant_section(s * t):
                hom_witness = f"signs ({s}, {t})"
    results.append(
        SequenceAssertion(
            "section is a homomorphism on Z2 (all four products)",
            hom_witness is None,
            hom_witness,
        )
    )

    return ExactSequenceReport(tuple(results))


def rational_unit_quaternion(x: Fraction, y: Fraction, z: Fraction) -> UnitQuaternion:
    """Map a rational 3-vector to a rational point of the unit 3-sphere.

    Inverse stereographic projection: with s = x^2 + y^2 + z^2 the image is
    ((1-s)/(1+s), 2x/(1+s), 2y/(1+s), 2z/(1+s)).  Every rational input gives
    an exactly unit quaternion; only (-1, 0, 0, 0) is unreachable.
    """
    x, y, z = Fraction(x), Fraction(y), Fraction(z)
    s = x * x + y * y + z * z
    return UnitQuaternion((1 - s) / (1 + s), 2 * x / (1 + s), 2 * y / (1 + s), 2 * z / (1 + s))


def quaternion_to_su2(q: UnitQuaternion) -> UnitaryMat2:
    """Identify a unit quaternion (a, b, c, d) with the det = +1 matrix
    built from z = a + b i and w = c + d i."""
    z = GaussianRational(q.a, q.b)
    w = GaussianRational(q.c, q.d)
    return su2_from_zw(z, w)
