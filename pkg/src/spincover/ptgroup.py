"""Parity and time reversal acting on spin-1/2 sample fields.

The symmetry elements here are pairs (C, a): a det = +/-1 unitary matrix C
together with a time sign a in {+1, -1}, multiplying componentwise.  The
group is a double cover of the spacetime symmetries (O(3) x time flip);
:func:`spacetime_projection` is the two-to-one projection, normalised so
that the canonical time-reversal pair projects to a pure time flip with no
spatial rotation.

Spinor fields are finite exact sample maps from events (t, x) to
two-component Gaussian-rational values.  The four actions (rotation, time
reversal, parity, parity-time) rebind arguments literally and conjugate
values entrywise in the antiunitary sectors, so every transformation law is
checked by exact equality on the sampled events.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from .cover import (
    HALF_TURN_Y,
    IDENTITY2,
    OrthogonalMat3,
    UnitaryMat2,
    covering_map,
    extended_covering_map,
    parity_operator,
)
from .scalars import (
    GaussianRational,
    ScalarParseError,
    format_complex,
    format_rational,
    parse_complex,
    parse_rational,
)
from .semidirect import SemidirectElement, from_unitary, to_unitary

_ZERO = GaussianRational(0)
_ONE = GaussianRational(1)
_MINUS_ONE = GaussianRational(-1)


def time_reversal_operator() -> UnitaryMat2:
    """The unitary part of time reversal: ((0, -1), (1, 0)), det +1.

    It squares to -I, and the full time-reversal action pairs it with
    entrywise conjugation of the field values.
    """
    return UnitaryMat2([[_ZERO, _MINUS_ONE], [_ONE, _ZERO]])


def _check_sign(sign: int) -> int:
    if sign not in (1, -1):
        raise ValueError(f"time sign must be +1 or -1, got {sign}")
    return sign


@dataclass(frozen=True)
class SpinorSymmetry:
    """A double-cover element: (matrix, time sign), componentwise product."""

    matrix: UnitaryMat2
    time_sign: int

    def __post_init__(self) -> None:
        _check_sign(self.time_sign)

    def __mul__(self, other: "SpinorSymmetry") -> "SpinorSymmetry":
        return SpinorSymmetry(self.matrix * other.matrix, self.time_sign * other.time_sign)

    def inverse(self) -> "SpinorSymmetry":
        return SpinorSymmetry(self.matrix.inverse(), self.time_sign)

    @classmethod
    def identity(cls) -> "SpinorSymmetry":
        return cls(IDENTITY2, 1)

    @classmethod
    def parity(cls) -> "SpinorSymmetry":
        return cls(parity_operator(), 1)

    @classmethod
    def time_reversal(cls) -> "SpinorSymmetry":
        return cls(time_reversal_operator(), -1)

    @classmethod
    def parity_time(cls) -> "SpinorSymmetry":
        """The transformation that reverses both space and time.

        This is (parity matrix, -1): the improper antiunitary sector enters
        the time-reversal matrix through the action itself, so the values
        are multiplied by parity*time-reversal and conjugated while both
        arguments flip.  The bare group product of :meth:`parity` and
        :meth:`time_reversal` is a different element (its matrix already
        contains the time-reversal factor) and is obtained by multiplying
        them.
        """
        return cls(parity_operator(), -1)

    def to_text(self) -> str:
        return f"{self.matrix.to_text()} @ {self.time_sign:+d}"


@dataclass(frozen=True)
class SpacetimeSymmetry:
    """A spatial orthogonal matrix together with a time sign.

    Composition carries an inner twist: a time-reversing left factor
    conjugates the right factor's spatial part by the fixed half turn about
    the y axis.  This is the group law transported through the double-cover
    projection (the unique one making that projection multiplicative on
    every pair); it reduces to the componentwise product whenever the
    spatial parts involved commute with the half turn, in particular on all
    products of pure inversions, pure time flips and y-axis half turns.
    """

    spatial: OrthogonalMat3
    time_sign: int

    def __post_init__(self) -> None:
        _check_sign(self.time_sign)

    def __mul__(self, other: "SpacetimeSymmetry") -> "SpacetimeSymmetry":
        rhs_spatial = other.spatial
        if self.time_sign == -1:
            rhs_spatial = HALF_TURN_Y * rhs_spatial * HALF_TURN_Y
        return SpacetimeSymmetry(self.spatial * rhs_spatial, self.time_sign * other.time_sign)

    def to_text(self) -> str:
        return f"{self.spatial.to_text()} @ {self.time_sign:+d}"

    def to_json(self) -> dict:
        return {"spatial": self.spatial.to_text(), "time_sign": self.time_sign}


def spacetime_projection(g: SpinorSymmetry) -> SpacetimeSymmetry:
    """Project a double-cover element to its spacetime symmetry, two-to-one.

    The spatial part is the extended covering image of the matrix; when the
    time sign is -1 it is multiplied by the half turn about y, so that the
    canonical time-reversal pair maps to (identity, -1) and the canonical
    parity-time pair maps to (-identity, -1).  The kernel is
    {(I, +1), (-I, +1)}.
    """
    spatial = extended_covering_map(g.matrix)
    if g.time_sign == -1:
        spatial = spatial * HALF_TURN_Y
    return SpacetimeSymmetry(spatial, g.time_sign)


def from_semidirect(e: SemidirectElement, time_sign: int) -> SpinorSymmetry:
    """Fuse a twisted pair with a time sign into a double-cover element."""
    return SpinorSymmetry(to_unitary(e), _check_sign(time_sign))


def to_semidirect(g: SpinorSymmetry) -> tuple[SemidirectElement, int]:
    return from_unitary(g.matrix), g.time_sign


def pair_spacetime_projection(e: SemidirectElement, time_sign: int) -> SpacetimeSymmetry:
    """Spacetime projection of a twisted pair; kernel {(I,I,+1), (-I,I,+1)}."""
    return spacetime_projection(from_semidirect(e, time_sign))


# -- spinor values and sample fields ---------------------------------------


@dataclass(frozen=True)
class SpinorValue:
    """A two-component complex value (u, v)."""

    u: GaussianRational
    v: GaussianRational

    def conjugate(self) -> "SpinorValue":
        return SpinorValue(self.u.conjugate(), self.v.conjugate())

    def __neg__(self) -> "SpinorValue":
        return SpinorValue(-self.u, -self.v)

    def scale(self, factor: GaussianRational) -> "SpinorValue":
        return SpinorValue(factor * self.u, factor * self.v)

    def norm_sq(self) -> Fraction:
        return self.u.norm_sq() + self.v.norm_sq()

    def is_zero(self) -> bool:
        return self.u.is_zero() and self.v.is_zero()

    def to_text(self) -> str:
        return f"{format_complex(self.u)}; {format_complex(self.v)}"


def transform_value(matrix: UnitaryMat2, value: SpinorValue) -> SpinorValue:
    u, v = matrix.apply(value.u, value.v)
    return SpinorValue(u, v)


def inner_product(a: SpinorValue, b: SpinorValue) -> GaussianRational:
    return a.u.conjugate() * b.u + a.v.conjugate() * b.v


@dataclass(frozen=True, order=True)
class Event:
    """A sample point (t, x) with rational coordinates."""

    t: Fraction
    x: tuple[Fraction, Fraction, Fraction]

    @classmethod
    def make(cls, t, x1, x2, x3) -> "Event":
        return cls(Fraction(t), (Fraction(x1), Fraction(x2), Fraction(x3)))

    def time_flipped(self) -> "Event":
        return Event(-self.t, self.x)

    def space_flipped(self) -> "Event":
        return Event(self.t, tuple(-c for c in self.x))

    def rotated(self, rotation: OrthogonalMat3) -> "Event":
        return Event(self.t, rotation.apply(self.x))

    def to_text(self) -> str:
        coords = ",".join(format_rational(c) for c in self.x)
        return f"{format_rational(self.t)}; {coords}"


class DomainClosureError(KeyError):
    """A field transformation needed a sample event that is not present."""

    def __init__(self, missing: Event) -> None:
        self.missing = missing
        super().__init__(f"field domain is missing the event ({missing.to_text()})")

    def __str__(self) -> str:
        return f"field domain is missing the event ({self.missing.to_text()})"


class FieldParseError(ValueError):
    """A field file line is not in the `t; x1,x2,x3; u; v` grammar."""

    def __init__(self, line_number: int, message: str) -> None:
        self.line_number = line_number
        super().__init__(f"line {line_number}: {message}")


@dataclass(frozen=True, eq=False)
class SpinorSampleField:
    """A finite exact map from events to spinor values.

    ``closure_group`` declares the rotations the sample domain is meant to
    be closed under; it is metadata for callers building fields.  The
    transformations themselves simply look up the rebound source events and
    raise :class:`DomainClosureError` naming the first missing one.
    """

    samples: Mapping[Event, SpinorValue]
    closure_group: tuple[OrthogonalMat3, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "samples", dict(self.samples))

    def events(self) -> list[Event]:
        return sorted(self.samples)

    def value_at(self, event: Event) -> SpinorValue:
        try:
            return self.samples[event]
        except KeyError:
            raise DomainClosureError(event) from None

    def map_values(self, fn) -> "SpinorSampleField":
        return SpinorSampleField({e: fn(v) for e, v in self.samples.items()}, self.closure_group)

    def scale(self, factor: GaussianRational) -> "SpinorSampleField":
        return self.map_values(lambda v: v.scale(factor))

    def __neg__(self) -> "SpinorSampleField":
        return self.map_values(lambda v: -v)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SpinorSampleField):
            return NotImplemented
        return dict(self.samples) == dict(other.samples)

    def closed_under(self, rebind) -> Optional[Event]:
        """Return the first event whose rebound source is missing, if any."""
        for event in self.events():
            if rebind(event) not in self.samples:
                return event
        return None

    def to_lines(self) -> list[str]:
        return [f"{e.to_text()}; {self.samples[e].to_text()}" for e in self.events()]

    def to_text(self) -> str:
        return "\n".join(self.to_lines()) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SpinorSampleField":
        samples: dict[Event, SpinorValue] = {}
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line:
                continue
            parts = [p.strip() for p in line.split(";")]
            if len(parts) != 4:
                raise FieldParseError(number, f"expected 't; x1,x2,x3; u; v', got {raw!r}")
            coords = [c.strip() for c in parts[1].split(",")]
            if len(coords) != 3:
                raise FieldParseError(number, f"expected three spatial coordinates, got {parts[1]!r}")
            try:
                event = Event(parse_rational(parts[0]), tuple(parse_rational(c) for c in coords))
                value = SpinorValue(parse_complex(parts[2]), parse_complex(parts[3]))
            except ScalarParseError as exc:
                raise FieldParseError(number, str(exc)) from None
            if event in samples:
                raise FieldParseError(number, f"duplicate event ({event.to_text()})")
            samples[event] = value
        return cls(samples)


def constant_field(value: SpinorValue, events: Iterable[Event]) -> SpinorSampleField:
    return SpinorSampleField({e: value for e in events})


# -- the four actions -------------------------------------------------------


def apply_rotation(matrix: UnitaryMat2, f: SpinorSampleField) -> SpinorSampleField:
    """Unitary sector with trivial time sign: g(t, x) = A f(t, R x).

    R is the rotation covering image of A, applied to the argument exactly
    as written (not inverted); the composition behaviour this induces is
    surfaced by :func:`composition_defect`.
    """
    rotation = covering_map(matrix)
    out = {}
    for event in f.events():
        source = event.rotated(rotation)
        out[event] = transform_value(matrix, f.value_at(source))
    return SpinorSampleField(out, f.closure_group)


def apply_time_reversal(matrix: UnitaryMat2, f: SpinorSampleField) -> SpinorSampleField:
    """Antiunitary sector: g(t, x) = A conj(f(-t, x))."""
    if not matrix.is_special():
        raise ValueError("time-reversal sector takes a det = +1 matrix")
    out = {}
    for event in f.events():
        source = event.time_flipped()
        out[event] = transform_value(matrix, f.value_at(source).conjugate())
    return SpinorSampleField(out, f.closure_group)


def apply_parity(matrix: UnitaryMat2, f: SpinorSampleField) -> SpinorSampleField:
    """Improper sector: g(t, y) = B f(t, -y)."""
    if matrix.is_special():
        raise ValueError("parity sector takes a det = -1 matrix")
    out = {}
    for event in f.events():
        source = event.space_flipped()
        out[event] = transform_value(matrix, f.value_at(source))
    return SpinorSampleField(out, f.closure_group)


def apply_parity_time(matrix: UnitaryMat2, f: SpinorSampleField) -> SpinorSampleField:
    """Improper antiunitary sector: g(t, y) = B T conj(f(-t, -y)),
    with T the unitary part of time reversal."""
    if matrix.is_special():
        raise ValueError("parity-time sector takes a det = -1 matrix")
    combined = matrix * time_reversal_operator()
    out = {}
    for event in f.events():
        source = event.time_flipped().space_flipped()
        out[event] = transform_value(combined, f.value_at(source).conjugate())
    return SpinorSampleField(out, f.closure_group)


def apply_symmetry(g: SpinorSymmetry, f: SpinorSampleField) -> SpinorSampleField:
    """Dispatch on (det, time sign) to the four sector actions."""
    if g.matrix.is_special():
        if g.time_sign == 1:
            return apply_rotation(g.matrix, f)
        return apply_time_reversal(g.matrix, f)
    if g.time_sign == 1:
        return apply_parity(g.matrix, f)
    return apply_parity_time(g.matrix, f)


@dataclass(frozen=True)
class CompositionDefect:
    """Comparison of acting twice against acting by the group product.

    ``matrix_two_step`` is the matrix the two-step path actually applies to
    the field values: the left matrix times the right matrix conjugated
    entrywise when the left element is antiunitary.  ``matrix_one_step`` is
    the plain product matrix.  ``sign_defect`` is the single scalar relating
    the two result fields when one exists (1 when they agree exactly).
    """

    left: SpinorSymmetry
    right: SpinorSymmetry
    law_holds: bool
    sign_defect: Optional[GaussianRational]
    witnesses: tuple[Event, ...]
    matrix_two_step: UnitaryMat2
    matrix_one_step: UnitaryMat2

    def to_json(self) -> dict:
        return {
            "pair": [self.left.to_text(), self.right.to_text()],
            "law_holds": self.law_holds,
            "sign_defect": None if self.sign_defect is None else format_complex(self.sign_defect),
            "witnesses": [w.to_text() for w in self.witnesses],
            "matrix_two_step": self.matrix_two_step.to_text(),
            "matrix_one_step": self.matrix_one_step.to_text(),
        }


def _global_ratio(numerator: SpinorSampleField, denominator: SpinorSampleField) -> Optional[GaussianRational]:
    """The scalar r with numerator = r * denominator pointwise, if one exists."""
    ratio: Optional[GaussianRational] = None
    for event in denominator.events():
        d = denominator.value_at(event)
        n = numerator.value_at(event)
        if d.is_zero():
            if not n.is_zero():
                return None
            continue
        candidate = n.u / d.u if not d.u.is_zero() else n.v / d.v
        if n != d.scale(candidate):
            return None
        if ratio is None:
            ratio = candidate
        elif ratio != candidate:
            return None
    return ratio


def composition_defect(
    g: SpinorSymmetry, h: SpinorSymmetry, f: SpinorSampleField
) -> CompositionDefect:
    """Act by h then g, act by g*h, and report how the two paths differ.

    The value matrices compose with a conjugation twist in the antiunitary
    sector; argument rebinding composes in the opposite order in the
    rotation sector.  Both effects show up here as per-event mismatches,
    with the global scalar extracted when the mismatch is one overall
    factor.
    """
    two_step = apply_symmetry(g, apply_symmetry(h, f))
    one_step = apply_symmetry(g * h, f)
    witnesses = tuple(
        e for e in f.events() if two_step.value_at(e) != one_step.value_at(e)
    )
    law_holds = not witnesses
    sign = GaussianRational(1) if law_holds else _global_ratio(two_step, one_step)
    right_matrix = h.matrix.conjugate() if g.time_sign == -1 else h.matrix
    return CompositionDefect(
        left=g,
        right=h,
        law_holds=law_holds,
        sign_defect=sign,
        witnesses=witnesses,
        matrix_two_step=g.matrix * right_matrix,
        matrix_one_step=(g * h).matrix,
    )


# -- ray space ---------------------------------------------------------------


class ZeroSpinorError(ValueError):
    """The zero value has no ray."""


@dataclass(frozen=True)
class RayPoint:
    """A spinor value modulo a global complex scale.

    Two rays are equal exactly when |<a, b>|^2 = |a|^2 |b|^2, which avoids
    any square-root normalisation; for unit representatives this is the
    unit-modulus inner product criterion.
    """

    representative: SpinorValue

    def __post_init__(self) -> None:
        if self.representative.is_zero():
            raise ZeroSpinorError("cannot project the zero spinor to a ray")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RayPoint):
            return NotImplemented
        a, b = self.representative, other.representative
        return inner_product(a, b).norm_sq() == a.norm_sq() * b.norm_sq()

    def __hash__(self) -> int:
        # The projective slope determines the ray and is scale-free.
        a = self.representative
        if a.u.is_zero():
            return hash(("ray-at-infinity",))
        return hash(("ray", a.v / a.u))


def ray_project(value: SpinorValue) -> RayPoint:
    """Project a nonzero spinor value to its ray."""
    return RayPoint(value)
