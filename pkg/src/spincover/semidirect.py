"""The twisted-pair form of the det = +/-1 unitary group.

A pair (A, B) holds a det = +1 matrix A and a section matrix B in
{I, diag(-1, 1)}.  Pairs compose with a twist: the left factor's section
conjugates the right factor's special part.  Fusing a pair into the single
matrix A*B is an isomorphism onto the det = +/-1 group, and the bundle
projection onto O(3) transports along it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cover import (
    IDENTITY2,
    PAULI_Z,
    OrthogonalMat3,
    UnitaryMat2,
    XY_MIRROR,
    covering_map,
    parity_operator,
)

#: The image of -1 under the section: diag(-1, 1), an involution of det -1.
SECTION_MIRROR = -PAULI_Z


@dataclass(frozen=True)
class Z2Rep:
    """One of the two section matrices {I, diag(-1, 1)} representing Z2."""

    matrix: UnitaryMat2

    def __post_init__(self) -> None:
        if self.matrix not in (IDENTITY2, SECTION_MIRROR):
            raise ValueError("section matrix must be I or diag(-1, 1)")

    @classmethod
    def from_sign(cls, sign: int) -> "Z2Rep":
        if sign == 1:
            return cls(IDENTITY2)
        if sign == -1:
            return cls(SECTION_MIRROR)
        raise ValueError(f"sign must be +1 or -1, got {sign}")

    @property
    def sign(self) -> int:
        return self.matrix.det_sign

    def __mul__(self, other: "Z2Rep") -> "Z2Rep":
        return Z2Rep.from_sign(self.sign * other.sign)


Z2_IDENTITY = Z2Rep(IDENTITY2)
Z2_MIRROR = Z2Rep(SECTION_MIRROR)


def twist_automorphism(b: Z2Rep, a: UnitaryMat2) -> UnitaryMat2:
    """Conjugate a det = +1 matrix by a section matrix.

    This is the Z2 action defining the twisted composition.  The identity
    section acts trivially; the mirror section acts as the involution
    ((z, w), ...) -> ((z, -w), ...).
    """
    if not a.is_special():
        raise ValueError("the twist acts on det = +1 matrices")
    if b.sign == 1:
        return a
    return b.matrix * a * b.matrix.inverse()


@dataclass(frozen=True)
class SemidirectElement:
    """A pair (special part, section part) under the twisted composition."""

    su2_part: UnitaryMat2
    z2_part: Z2Rep

    def __post_init__(self) -> None:
        if not self.su2_part.is_special():
            raise ValueError("special part must have det = +1")

    def __mul__(self, other: "SemidirectElement") -> "SemidirectElement":
        return compose(self, other)

    def inverse(self) -> "SemidirectElement":
        return from_unitary(to_unitary(self).inverse())

    def to_text(self) -> str:
        return f"({self.su2_part.to_text()} | {self.z2_part.matrix.to_text()})"

    @classmethod
    def from_text(cls, text: str) -> "SemidirectElement":
        body = text.strip()
        if not (body.startswith("(") and body.endswith(")")):
            raise ValueError(f"expected '(A | B)', got {text!r}")
        left, sep, right = body[1:-1].partition("|")
        if not sep:
            raise ValueError(f"expected '(A | B)', got {text!r}")
        return cls(UnitaryMat2.from_text(left), Z2Rep(UnitaryMat2.from_text(right)))


IDENTITY_ELEMENT = SemidirectElement(IDENTITY2, Z2_IDENTITY)


def compose(e1: SemidirectElement, e2: SemidirectElement) -> SemidirectElement:
    """Twisted composition: (A', B') (A, B) = (A' B' A B'^-1, B' B)."""
    twisted = twist_automorphism(e1.z2_part, e2.su2_part)
    return SemidirectElement(e1.su2_part * twisted, e1.z2_part * e2.z2_part)


def to_unitary(e: SemidirectElement) -> UnitaryMat2:
    """Fuse a pair into the single matrix A * B; det matches the section sign."""
    return e.su2_part * e.z2_part.matrix


def from_unitary(c: UnitaryMat2) -> SemidirectElement:
    """Split a det = +/-1 matrix back into a pair; inverse of :func:`to_unitary`."""
    if c.is_special():
        return SemidirectElement(c, Z2_IDENTITY)
    return SemidirectElement(c * SECTION_MIRROR, Z2_MIRROR)


def project_to_o3(e: SemidirectElement) -> OrthogonalMat3:
    """The bundle projection of a pair onto O(3).

    Identity section: the rotation of the special part.  Mirror section:
    that rotation followed by the xy-plane mirror diag(1, 1, -1).  Always
    equal to the extended covering map of the fused matrix.
    """
    rotation = covering_map(e.su2_part)
    if e.z2_part.sign == 1:
        return rotation
    return rotation * XY_MIRROR


def parity_element() -> SemidirectElement:
    """The pair that fuses to the parity lift i*I: (diag(-i, i), mirror)."""
    return from_unitary(parity_operator())
