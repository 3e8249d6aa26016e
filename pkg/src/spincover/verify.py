"""Seeded invariant suites behind the `verify` command.

Each suite is a fixed ordered list of named assertions over exact samples
drawn from a seeded generator, so a given (suite, seed, samples) triple
always produces the identical report.  Assertions never raise on failure;
they record a witness string instead.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .cover import (
    IDENTITY2,
    IDENTITY3,
    SPACE_INVERSION,
    UnitaryMat2,
    check_exact_sequence,
    covering_map,
    determinant_section,
    extended_covering_map,
    parity_operator,
    quaternion_to_su2,
    rational_unit_quaternion,
)
from .groups import spinor_pt_group
from .ptgroup import (
    Event,
    SpacetimeSymmetry,
    SpinorSampleField,
    SpinorSymmetry,
    SpinorValue,
    apply_symmetry,
    ray_project,
    spacetime_projection,
    time_reversal_operator,
    transform_value,
)
from .scalars import GaussianRational
from .semidirect import (
    SemidirectElement,
    Z2_IDENTITY,
    Z2_MIRROR,
    compose,
    from_unitary,
    project_to_o3,
    to_unitary,
)

SUITE_NAMES = ("cover", "semidirect", "ptgroup")


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    witness: Optional[str] = None

    def to_json(self) -> dict:
        return {"assertion": self.name, "pass": self.passed, "witness": self.witness}


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    checks: tuple[CheckResult, ...]

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "all_pass": self.all_pass,
            "assertions": [c.to_json() for c in self.checks],
        }


# -- seeded exact sampling ----------------------------------------------------


def sample_rational(rng: random.Random, span: int = 9) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, span))


def sample_su2(rng: random.Random) -> UnitaryMat2:
    q = rational_unit_quaternion(
        sample_rational(rng, 3), sample_rational(rng, 3), sample_rational(rng, 3)
    )
    return quaternion_to_su2(q)


def sample_extended(rng: random.Random) -> UnitaryMat2:
    m = sample_su2(rng)
    if rng.randint(0, 1):
        return m * parity_operator()
    return m


def sample_pair_element(rng: random.Random) -> SemidirectElement:
    section = Z2_MIRROR if rng.randint(0, 1) else Z2_IDENTITY
    return SemidirectElement(sample_su2(rng), section)


def sample_symmetry(rng: random.Random) -> SpinorSymmetry:
    return SpinorSymmetry(sample_extended(rng), -1 if rng.randint(0, 1) else 1)


def sample_unit_spinor(rng: random.Random) -> SpinorValue:
    q = rational_unit_quaternion(
        sample_rational(rng, 3), sample_rational(rng, 3), sample_rational(rng, 3)
    )
    return SpinorValue(GaussianRational(q.a, q.b), GaussianRational(q.c, q.d))


def _first_failure(
    count: int, producer: Callable[[int], Optional[str]]
) -> Optional[str]:
    for k in range(count):
        witness = producer(k)
        if witness is not None:
            return witness
    return None


def _order8_matrices() -> list[UnitaryMat2]:
    group = spinor_pt_group()
    assert group.element_source is not None
    return [group.element_source[label] for label in group.labels]


# -- cover suite ---------------------------------------------------------------


def run_cover_suite(seed: int, samples: int) -> SuiteReport:
    rng = random.Random(seed)
    pairs = [(sample_su2(rng), sample_su2(rng)) for _ in range(samples)]
    checks: list[CheckResult] = []

    def rotation_hom(k: int) -> Optional[str]:
        a, b = pairs[k]
        if covering_map(a * b) != covering_map(a) * covering_map(b):
            return f"{a.to_text()} ; {b.to_text()}"
        return None

    witness = _first_failure(len(pairs), rotation_hom)
    checks.append(CheckResult("rotation projection is multiplicative on sampled pairs", witness is None, witness))

    def antipodal(k: int) -> Optional[str]:
        a, _ = pairs[k]
        if covering_map(a) != covering_map(-a):
            return a.to_text()
        return None

    witness = _first_failure(len(pairs), antipodal)
    checks.append(CheckResult("antipodal matrices project to the same rotation", witness is None, witness))

    def proper_image(k: int) -> Optional[str]:
        a, _ = pairs[k]
        image = covering_map(a)
        if image.det_sign != 1 or not image.is_orthogonal():
            return a.to_text()
        return None

    witness = _first_failure(len(pairs), proper_image)
    checks.append(CheckResult("projected rotations are orthogonal with det +1", witness is None, witness))

    parity = parity_operator()
    extended_pairs = [
        (a * parity if k % 2 else a, b * parity if k % 3 == 0 else b)
        for k, (a, b) in enumerate(pairs)
    ]

    def extended_hom(k: int) -> Optional[str]:
        c, d = extended_pairs[k]
        if extended_covering_map(c * d) != extended_covering_map(c) * extended_covering_map(d):
            return f"{c.to_text()} ; {d.to_text()}"
        return None

    witness = _first_failure(len(extended_pairs), extended_hom)
    checks.append(CheckResult("extended projection is multiplicative across both components", witness is None, witness))

    kernel_pool = [m for pair in extended_pairs for m in pair] + _order8_matrices()

    def kernel(k: int) -> Optional[str]:
        c = kernel_pool[k]
        in_kernel = extended_covering_map(c) == IDENTITY3
        central = c in (IDENTITY2, -IDENTITY2)
        if in_kernel != central:
            return c.to_text()
        return None

    witness = _first_failure(len(kernel_pool), kernel)
    checks.append(CheckResult("extended projection kernel is exactly {I, -I}", witness is None, witness))

    def diagram(k: int) -> Optional[str]:
        a, _ = pairs[k]
        if extended_covering_map(a) != covering_map(a):
            return a.to_text()
        return None

    witness = _first_failure(len(pairs), diagram)
    checks.append(CheckResult("embedding commutes with the two projections on det +1", witness is None, witness))

    def normality(k: int) -> Optional[str]:
        a, _ = pairs[k]
        b = extended_pairs[k][1]
        if (b * a * b.inverse()).det_sign != 1:
            return f"{b.to_text()} ; {a.to_text()}"
        return None

    witness = _first_failure(len(pairs), normality)
    checks.append(CheckResult("det +1 subgroup is normal in the extension", witness is None, witness))

    def det_mult(k: int) -> Optional[str]:
        c, d = extended_pairs[k]
        if (c * d).det_sign != c.det_sign * d.det_sign:
            return f"{c.to_text()} ; {d.to_text()}"
        return None

    witness = _first_failure(len(extended_pairs), det_mult)
    checks.append(CheckResult("determinant is multiplicative on the extension", witness is None, witness))

    sequence_samples = [IDENTITY2, -IDENTITY2, parity, determinant_section(-1)] + [
        m for pair in extended_pairs[: max(1, samples // 10)] for m in pair
    ]
    for assertion in check_exact_sequence(sequence_samples).assertions:
        checks.append(CheckResult(assertion.name, assertion.passed, assertion.witness))

    return SuiteReport("cover", tuple(checks))


# -- semidirect suite -----------------------------------------------------------


def run_semidirect_suite(seed: int, samples: int) -> SuiteReport:
    rng = random.Random(seed)
    pairs = [(sample_pair_element(rng), sample_pair_element(rng)) for _ in range(samples)]
    checks: list[CheckResult] = []

    def fuse_hom(k: int) -> Optional[str]:
        e1, e2 = pairs[k]
        if to_unitary(compose(e1, e2)) != to_unitary(e1) * to_unitary(e2):
            return f"{e1.to_text()} ; {e2.to_text()}"
        return None

    witness = _first_failure(len(pairs), fuse_hom)
    checks.append(CheckResult("fusing pairs to matrices preserves products", witness is None, witness))

    order8 = _order8_matrices()

    def round_trip_matrix(k: int) -> Optional[str]:
        c = order8[k] if k < len(order8) else to_unitary(pairs[k - len(order8)][0])
        if to_unitary(from_unitary(c)) != c:
            return c.to_text()
        return None

    witness = _first_failure(len(order8) + len(pairs), round_trip_matrix)
    checks.append(CheckResult("matrix -> pair -> matrix round trip is the identity", witness is None, witness))

    def round_trip_pair(k: int) -> Optional[str]:
        e = pairs[k][0]
        if from_unitary(to_unitary(e)) != e:
            return e.to_text()
        return None

    witness = _first_failure(len(pairs), round_trip_pair)
    checks.append(CheckResult("pair -> matrix -> pair round trip is the identity", witness is None, witness))

    projection_pool = [from_unitary(c) for c in order8] + [e for pair in pairs for e in pair]

    def projections_agree(k: int) -> Optional[str]:
        e = projection_pool[k]
        if project_to_o3(e) != extended_covering_map(to_unitary(e)):
            return e.to_text()
        return None

    witness = _first_failure(len(projection_pool), projections_agree)
    checks.append(CheckResult("pair projection equals the matrix projection", witness is None, witness))

    spinors = [sample_unit_spinor(rng) for _ in range(min(samples, 50))]

    def action_triangle(k: int) -> Optional[str]:
        e = pairs[k % len(pairs)][0]
        value = spinors[k % len(spinors)]
        stepwise = transform_value(e.su2_part, transform_value(e.z2_part.matrix, value))
        fused = transform_value(to_unitary(e), value)
        if stepwise != fused:
            return e.to_text()
        return None

    witness = _first_failure(len(spinors), action_triangle)
    checks.append(CheckResult("pair action on spinor values equals the fused-matrix action", witness is None, witness))

    def fiber(k: int) -> Optional[str]:
        e = pairs[k][0]
        partner = from_unitary(-to_unitary(e))
        if project_to_o3(partner) != project_to_o3(e):
            return e.to_text()
        if to_unitary(partner) == to_unitary(e):
            return e.to_text()
        other = pairs[k][1]
        same_base = project_to_o3(other) == project_to_o3(e)
        antipodal = to_unitary(other) in (to_unitary(e), -to_unitary(e))
        if same_base != antipodal:
            return f"{e.to_text()} ; {other.to_text()}"
        return None

    witness = _first_failure(len(pairs), fiber)
    checks.append(CheckResult("projection fibers are exactly antipodal matrix pairs", witness is None, witness))

    return SuiteReport("semidirect", tuple(checks))


# -- ptgroup suite ---------------------------------------------------------------


def _standard_field() -> SpinorSampleField:
    values = [
        SpinorValue(GaussianRational(1), GaussianRational(0, 1)),
        SpinorValue(GaussianRational(Fraction(3, 5)), GaussianRational(Fraction(4, 5))),
        SpinorValue(GaussianRational(0), GaussianRational(1)),
        SpinorValue(GaussianRational(1, 2), GaussianRational(-2, 3)),
    ]
    events = []
    for t in (Fraction(-1), Fraction(0), Fraction(1)):
        for x in (
            (Fraction(0), Fraction(0), Fraction(0)),
            (Fraction(1), Fraction(0), Fraction(0)),
            (Fraction(-1), Fraction(0), Fraction(0)),
        ):
            events.append(Event(t, x))
    samples = {ev: values[k % len(values)] for k, ev in enumerate(events)}
    return SpinorSampleField(samples)


def _canonical_symmetries() -> list[SpinorSymmetry]:
    parity = parity_operator()
    treverse = time_reversal_operator()
    out = []
    for matrix in (IDENTITY2, -IDENTITY2):
        for sign in (1, -1):
            out.append(SpinorSymmetry(matrix, sign))
    for sign in (1, -1):
        out.append(SpinorSymmetry(parity, sign))
        out.append(SpinorSymmetry(treverse, sign))
    return out


def _lifted_subgroup() -> list[SpinorSymmetry]:
    """The order-8 subgroup generated by the canonical parity and
    time-reversal pairs (matrix, time sign)."""
    generators = [SpinorSymmetry.parity(), SpinorSymmetry.time_reversal()]
    elements = [SpinorSymmetry.identity()]
    while True:
        fresh = []
        for a in elements + fresh:
            for g in generators:
                p = a * g
                if p not in elements and p not in fresh:
                    fresh.append(p)
        if not fresh:
            return elements
        elements.extend(fresh)


def run_ptgroup_suite(seed: int, samples: int) -> SuiteReport:
    rng = random.Random(seed)
    checks: list[CheckResult] = []

    exhaustive = []
    for g in _canonical_symmetries():
        for h in _canonical_symmetries():
            exhaustive.append((g, h))
    for g in _lifted_subgroup():
        for h in _lifted_subgroup():
            exhaustive.append((g, h))

    def hom_exhaustive(k: int) -> Optional[str]:
        g, h = exhaustive[k]
        if spacetime_projection(g * h) != spacetime_projection(g) * spacetime_projection(h):
            return f"{g.to_text()} ; {h.to_text()}"
        return None

    witness = _first_failure(len(exhaustive), hom_exhaustive)
    checks.append(CheckResult("spacetime projection is multiplicative on the canonical pairs", witness is None, witness))

    expected_values = [
        (SpinorSymmetry.time_reversal(), SpacetimeSymmetry(IDENTITY3, -1)),
        (SpinorSymmetry.parity(), SpacetimeSymmetry(SPACE_INVERSION, 1)),
        (
            SpinorSymmetry.parity() * SpinorSymmetry.time_reversal(),
            SpacetimeSymmetry(SPACE_INVERSION, -1),
        ),
    ]

    def canonical_values(k: int) -> Optional[str]:
        element, expected = expected_values[k]
        if spacetime_projection(element) != expected:
            return element.to_text()
        return None

    witness = _first_failure(len(expected_values), canonical_values)
    checks.append(CheckResult("canonical reversals project to pure time flip, inversion, full reversal", witness is None, witness))

    sampled_pairs = [(sample_symmetry(rng), sample_symmetry(rng)) for _ in range(max(samples, 500))]

    def hom_sampled(k: int) -> Optional[str]:
        g, h = sampled_pairs[k]
        if spacetime_projection(g * h) != spacetime_projection(g) * spacetime_projection(h):
            return f"{g.to_text()} ; {h.to_text()}"
        return None

    witness = _first_failure(len(sampled_pairs), hom_sampled)
    checks.append(CheckResult("spacetime projection is multiplicative on sampled pairs", witness is None, witness))

    def two_to_one(k: int) -> Optional[str]:
        g, h = sampled_pairs[k]
        negated = SpinorSymmetry(-g.matrix, g.time_sign)
        if spacetime_projection(negated) != spacetime_projection(g):
            return g.to_text()
        same = spacetime_projection(g) == spacetime_projection(h)
        antipodal = h.time_sign == g.time_sign and h.matrix in (g.matrix, -g.matrix)
        if same != antipodal:
            return f"{g.to_text()} ; {h.to_text()}"
        return None

    witness = _first_failure(len(sampled_pairs), two_to_one)
    checks.append(CheckResult("spacetime projection identifies exactly antipodal elements", witness is None, witness))

    field = _standard_field()
    parity = parity_operator()

    full_turn = SpinorSymmetry(-IDENTITY2, 1)
    ok = apply_symmetry(full_turn, field) == -field
    checks.append(CheckResult("the lift of a full turn negates every field value", ok))

    p_elem = SpinorSymmetry.parity()
    ok = apply_symmetry(p_elem, apply_symmetry(p_elem, field)) == -field
    checks.append(CheckResult("applying parity twice negates the field", ok))

    t_elem = SpinorSymmetry.time_reversal()
    ok = apply_symmetry(t_elem, apply_symmetry(t_elem, field)) == -field
    checks.append(CheckResult("applying time reversal twice negates the field", ok))

    pt_matrix = (SpinorSymmetry.parity() * SpinorSymmetry.time_reversal()).matrix
    pt_product = SpinorSymmetry(pt_matrix, -1)
    pt_squares = (pt_matrix * pt_matrix == IDENTITY2) and (
        apply_symmetry(pt_product, apply_symmetry(pt_product, field)) == field
    )
    checks.append(CheckResult("the parity-time matrix squares to +I and its double action is trivial", pt_squares))

    def time_reversal_formula(k: int) -> Optional[str]:
        transformed = apply_symmetry(t_elem, field)
        for event in field.events():
            source = field.value_at(event.time_flipped())
            expected = SpinorValue(-source.v.conjugate(), source.u.conjugate())
            if transformed.value_at(event) != expected:
                return event.to_text()
        return None

    witness = _first_failure(1, time_reversal_formula)
    checks.append(CheckResult("time reversal matches its componentwise formula", witness is None, witness))

    def parity_formula(k: int) -> Optional[str]:
        transformed = apply_symmetry(p_elem, field)
        i_unit = GaussianRational(0, 1)
        for event in field.events():
            source = field.value_at(event.space_flipped())
            expected = SpinorValue(i_unit * source.u, i_unit * source.v)
            if transformed.value_at(event) != expected:
                return event.to_text()
        return None

    witness = _first_failure(1, parity_formula)
    checks.append(CheckResult("parity matches its componentwise formula", witness is None, witness))

    def parity_time_formula(k: int) -> Optional[str]:
        # The improper antiunitary sector entered with the parity matrix;
        # the action supplies the time-reversal factor itself, so the
        # applied matrix is parity * time-reversal.
        transformed = apply_symmetry(SpinorSymmetry(parity, -1), field)
        i_unit = GaussianRational(0, 1)
        for event in field.events():
            source = field.value_at(event.time_flipped().space_flipped())
            expected = SpinorValue(
                -i_unit * source.v.conjugate(), i_unit * source.u.conjugate()
            )
            if transformed.value_at(event) != expected:
                return event.to_text()
        return None

    witness = _first_failure(1, parity_time_formula)
    checks.append(CheckResult("parity-time matches its componentwise formula", witness is None, witness))

    spinors = [sample_unit_spinor(rng) for _ in range(min(samples, 100))]
    phases = [
        GaussianRational(1),
        GaussianRational(-1),
        GaussianRational(0, 1),
        GaussianRational(0, -1),
        GaussianRational(Fraction(3, 5), Fraction(4, 5)),
        GaussianRational(Fraction(3, 5), Fraction(-4, 5)),
    ]

    def phase_invariance(k: int) -> Optional[str]:
        value = spinors[k // len(phases)]
        phase = phases[k % len(phases)]
        if ray_project(value.scale(phase)) != ray_project(value):
            return value.to_text()
        return None

    witness = _first_failure(len(spinors) * len(phases), phase_invariance)
    checks.append(CheckResult("rays are invariant under unit phases", witness is None, witness))

    def parity_on_rays(k: int) -> Optional[str]:
        value = spinors[k]
        if ray_project(transform_value(parity, value)) != ray_project(value):
            return value.to_text()
        return None

    witness = _first_failure(len(spinors), parity_on_rays)
    checks.append(CheckResult("parity acts trivially on rays", witness is None, witness))

    basis_distinct = ray_project(SpinorValue(GaussianRational(1), GaussianRational(0))) != ray_project(
        SpinorValue(GaussianRational(0), GaussianRational(1))
    )
    checks.append(CheckResult("orthogonal basis spinors give distinct rays", basis_distinct))

    return SuiteReport("ptgroup", tuple(checks))


_SUITE_RUNNERS = {
    "cover": run_cover_suite,
    "semidirect": run_semidirect_suite,
    "ptgroup": run_ptgroup_suite,
}


def run_suites(suite: str, seed: int, samples: int) -> list[SuiteReport]:
    """Run one named suite, or all of them for ``suite="all"``."""
    if suite == "all":
        names = SUITE_NAMES
    elif suite in _SUITE_RUNNERS:
        names = (suite,)
    else:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITE_NAMES + ('all',)}")
    return [_SUITE_RUNNERS[name](seed, samples) for name in names]
