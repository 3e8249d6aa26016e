from fractions import Fraction

import pytest

from spincover.cover import (
    HALF_TURN_Y,
    IDENTITY2,
    IDENTITY3,
    PAULI_Z,
    SPACE_INVERSION,
)
from spincover.ptgroup import (
    DomainClosureError,
    Event,
    FieldParseError,
    SpacetimeSymmetry,
    SpinorSampleField,
    SpinorSymmetry,
    SpinorValue,
    ZeroSpinorError,
    apply_parity,
    apply_parity_time,
    apply_rotation,
    apply_symmetry,
    apply_time_reversal,
    composition_defect,
    from_semidirect,
    inner_product,
    pair_spacetime_projection,
    ray_project,
    spacetime_projection,
    to_semidirect,
    transform_value,
)
from spincover.scalars import GaussianRational
from spincover.semidirect import from_unitary, parity_element
from spincover.verify import sample_symmetry, sample_unit_spinor

G = GaussianRational


def gr(re=0, im=0):
    return GaussianRational(Fraction(re), Fraction(im))


def symmetric_events():
    events = []
    for t in (-1, 0, 1):
        for x in ((0, 0, 0), (1, 0, 0), (-1, 0, 0), (0, 2, 0), (0, -2, 0), (0, 0, 1), (0, 0, -1)):
            events.append(Event.make(t, *x))
    return events


def varied_field():
    values = [
        SpinorValue(gr(1), gr(0, 1)),
        SpinorValue(gr(Fraction(3, 5)), gr(Fraction(4, 5))),
        SpinorValue(gr(0), gr(1)),
        SpinorValue(gr(2, -1), gr(Fraction(1, 3))),
        SpinorValue(gr(0), gr(0)),
    ]
    events = symmetric_events()
    return SpinorSampleField({e: values[i % len(values)] for i, e in enumerate(events)})


def constant(u, v):
    return SpinorSampleField({e: SpinorValue(u, v) for e in symmetric_events()})


class TestTimeReversalOperator:
    def test_matrix(self, treverse):
        assert treverse.rows == ((gr(0), gr(-1)), (gr(1), gr(0)))

    def test_squares_to_minus_identity(self, treverse):
        assert treverse * treverse == -IDENTITY2

    def test_det_plus_one(self, treverse):
        assert treverse.det_sign == 1

    def test_covers_half_turn_y(self, treverse):
        from spincover.cover import covering_map

        assert covering_map(treverse) == HALF_TURN_Y


class TestSpacetimeProjection:
    def test_identity(self):
        g = SpinorSymmetry.identity()
        assert spacetime_projection(g) == SpacetimeSymmetry(IDENTITY3, 1)

    def test_time_reversal_is_pure_time_flip(self):
        g = SpinorSymmetry.time_reversal()
        assert spacetime_projection(g) == SpacetimeSymmetry(IDENTITY3, -1)

    def test_parity_is_space_inversion(self):
        g = SpinorSymmetry.parity()
        assert spacetime_projection(g) == SpacetimeSymmetry(SPACE_INVERSION, 1)

    def test_product_element_is_full_reversal(self):
        g = SpinorSymmetry.parity() * SpinorSymmetry.time_reversal()
        assert spacetime_projection(g) == SpacetimeSymmetry(SPACE_INVERSION, -1)

    def test_kernel(self):
        for matrix in (IDENTITY2, -IDENTITY2):
            g = SpinorSymmetry(matrix, 1)
            assert spacetime_projection(g) == SpacetimeSymmetry(IDENTITY3, 1)

    def test_homomorphism_on_samples(self, rng):
        for _ in range(300):
            g, h = sample_symmetry(rng), sample_symmetry(rng)
            assert spacetime_projection(g * h) == spacetime_projection(g) * spacetime_projection(h)

    def test_two_to_one(self, rng):
        for _ in range(100):
            g = sample_symmetry(rng)
            twin = SpinorSymmetry(-g.matrix, g.time_sign)
            assert spacetime_projection(twin) == spacetime_projection(g)

    def test_twisted_composition_reduces_to_componentwise_on_commuting_parts(self):
        p = SpacetimeSymmetry(SPACE_INVERSION, 1)
        t = SpacetimeSymmetry(IDENTITY3, -1)
        assert (t * p).spatial == SPACE_INVERSION
        assert (p * t).spatial == SPACE_INVERSION
        assert (t * t) == SpacetimeSymmetry(IDENTITY3, 1)


class TestSemidirectBridge:
    def test_parity_pair(self):
        g = from_semidirect(parity_element(), 1)
        assert g == SpinorSymmetry.parity()

    def test_time_reversal_pair(self, treverse):
        e, sign = to_semidirect(SpinorSymmetry.time_reversal())
        assert sign == -1
        assert e == from_unitary(treverse)
        assert e.z2_part.sign == 1

    def test_round_trip(self, rng):
        for _ in range(50):
            g = sample_symmetry(rng)
            e, sign = to_semidirect(g)
            assert from_semidirect(e, sign) == g

    def test_pair_projection_values(self):
        assert pair_spacetime_projection(parity_element(), 1) == SpacetimeSymmetry(
            SPACE_INVERSION, 1
        )
        identity_pair = from_unitary(IDENTITY2)
        assert pair_spacetime_projection(identity_pair, 1) == SpacetimeSymmetry(IDENTITY3, 1)
        minus_pair = from_unitary(-IDENTITY2)
        assert pair_spacetime_projection(minus_pair, 1) == SpacetimeSymmetry(IDENTITY3, 1)


class TestRotationAction:
    def test_identity_fixes_field(self):
        f = varied_field()
        assert apply_rotation(IDENTITY2, f) == f

    def test_minus_identity_negates(self):
        f = varied_field()
        assert apply_rotation(-IDENTITY2, f) == -f

    def test_time_reversal_matrix_as_plain_rotation_at_origin(self, treverse):
        events = [Event.make(t, 0, 0, 0) for t in (-1, 0, 1)]
        value = SpinorValue(gr(1), gr(0, 1))
        f = SpinorSampleField({e: value for e in events})
        g = apply_rotation(treverse, f)
        expected = transform_value(treverse, value)
        for e in events:
            assert g.value_at(e) == expected

    def test_argument_rebinding(self, treverse):
        # the half turn about y sends (1,0,0) to (-1,0,0)
        f = varied_field()
        g = apply_rotation(treverse, f)
        probe = Event.make(0, 1, 0, 0)
        source = Event.make(0, -1, 0, 0)
        assert g.value_at(probe) == transform_value(treverse, f.value_at(source))

    def test_missing_event_reported(self, treverse):
        f = SpinorSampleField({Event.make(0, 1, 0, 0): SpinorValue(gr(1), gr(0))})
        with pytest.raises(DomainClosureError) as err:
            apply_rotation(treverse, f)
        assert "-1" in str(err.value)

    def test_rejects_improper_matrix(self, parity):
        with pytest.raises(ValueError):
            apply_rotation(parity, varied_field())


class TestTimeReversalAction:
    def test_constant_field_formula(self, treverse):
        f = constant(gr(1), gr(0, 1))
        g = apply_time_reversal(treverse, f)
        for e in f.events():
            assert g.value_at(e) == SpinorValue(gr(0, 1), gr(1))

    def test_double_application_negates(self, treverse):
        f = varied_field()
        g = apply_time_reversal(treverse, apply_time_reversal(treverse, f))
        assert g == -f

    def test_identity_matrix_conjugates_and_flips_time(self):
        f = varied_field()
        g = apply_time_reversal(IDENTITY2, f)
        for e in f.events():
            assert g.value_at(e) == f.value_at(e.time_flipped()).conjugate()

    def test_real_field_with_identity_matrix_only_flips_time(self):
        events = symmetric_events()
        samples = {
            e: SpinorValue(gr(i % 3), gr(-(i % 2))) for i, e in enumerate(events)
        }
        f = SpinorSampleField(samples)
        g = apply_time_reversal(IDENTITY2, f)
        for e in events:
            assert g.value_at(e) == f.value_at(e.time_flipped())


class TestParityAction:
    def test_constant_field_formula(self, parity):
        f = constant(gr(1), gr(Fraction(2, 7)))
        g = apply_parity(parity, f)
        for e in f.events():
            assert g.value_at(e) == SpinorValue(gr(0, 1), gr(0, Fraction(2, 7)))

    def test_double_application_negates(self, parity):
        f = varied_field()
        assert apply_parity(parity, apply_parity(parity, f)) == -f

    def test_support_moves_to_reflected_point(self, parity):
        here = Event.make(0, 1, 0, 0)
        there = Event.make(0, -1, 0, 0)
        zero = SpinorValue(gr(0), gr(0))
        bump = SpinorValue(gr(1), gr(0))
        f = SpinorSampleField({here: bump, there: zero})
        g = apply_parity(parity, f)
        assert g.value_at(here) == zero.scale(gr(0, 1))
        assert g.value_at(there) == transform_value(parity, bump)

    def test_rejects_special_matrix(self, treverse):
        with pytest.raises(ValueError):
            apply_parity(treverse, varied_field())


class TestParityTimeAction:
    def test_basis_spinor_formulas(self, parity):
        f = constant(gr(1), gr(0))
        g = apply_parity_time(parity, f)
        for e in f.events():
            assert g.value_at(e) == SpinorValue(gr(0), gr(0, 1))
        f2 = constant(gr(0), gr(1))
        g2 = apply_parity_time(parity, f2)
        for e in f2.events():
            assert g2.value_at(e) == SpinorValue(gr(0, -1), gr(0))

    def test_combined_matrix_is_parity_times_time_reversal(self, parity, treverse):
        # for the parity lift the applied matrix is ((0,-i),(i,0))
        combined = parity * treverse
        i = gr(0, 1)
        assert combined.rows == ((gr(0), -i), (i, gr(0)))

    def test_full_argument_flip(self, parity, treverse):
        f = varied_field()
        g = apply_parity_time(parity, f)
        for e in f.events():
            source = f.value_at(e.time_flipped().space_flipped())
            assert g.value_at(e) == transform_value(parity * treverse, source.conjugate())


class TestDispatch:
    def test_four_sectors(self, parity, treverse):
        f = varied_field()
        assert apply_symmetry(SpinorSymmetry(treverse, 1), f) == apply_rotation(treverse, f)
        assert apply_symmetry(SpinorSymmetry(treverse, -1), f) == apply_time_reversal(treverse, f)
        assert apply_symmetry(SpinorSymmetry(parity, 1), f) == apply_parity(parity, f)
        assert apply_symmetry(SpinorSymmetry(parity, -1), f) == apply_parity_time(parity, f)

    def test_identity_element(self):
        f = varied_field()
        assert apply_symmetry(SpinorSymmetry.identity(), f) == f

    def test_full_turn_negates(self):
        f = varied_field()
        assert apply_symmetry(SpinorSymmetry(-IDENTITY2, 1), f) == -f

    def test_half_turn_lift_applied_twice_negates(self, treverse):
        # any det=+1 matrix squaring to -I lifts a spatial half turn; two
        # applications traverse the full turn and flip the field's sign
        i = gr(0, 1)
        for matrix in (PAULI_Z.scalar_mul(i), treverse):
            assert matrix * matrix == -IDENTITY2
            g = SpinorSymmetry(matrix, 1)
            f = varied_field()
            assert apply_symmetry(g, apply_symmetry(g, f)) == -f


class TestCompositionDefect:
    def test_double_time_reversal_has_no_defect(self):
        g = SpinorSymmetry.time_reversal()
        f = varied_field()
        report = composition_defect(g, g, f)
        assert report.law_holds
        assert report.sign_defect == GaussianRational(1)
        assert report.witnesses == ()

    def test_commuting_rotations_have_no_defect(self, treverse):
        a = SpinorSymmetry(treverse, 1)
        b = SpinorSymmetry(-treverse, 1)
        report = composition_defect(a, b, varied_field())
        assert report.law_holds

    def test_antiunitary_sector_sign_defect(self):
        i = gr(0, 1)
        i_sigma3 = PAULI_Z.scalar_mul(i)
        g = SpinorSymmetry(i_sigma3, -1)
        f = varied_field()
        report = composition_defect(g, g, f)
        assert not report.law_holds
        assert report.sign_defect == GaussianRational(-1)
        assert report.witnesses
        # two-step path applies i*sigma3 * conj(i*sigma3) = identity,
        # one-step applies (i*sigma3)^2 = -identity
        assert report.matrix_two_step == IDENTITY2
        assert report.matrix_one_step == -IDENTITY2

    def test_json_schema(self):
        g = SpinorSymmetry.time_reversal()
        payload = composition_defect(g, g, varied_field()).to_json()
        for key in ("pair", "law_holds", "sign_defect", "witnesses"):
            assert key in payload
        assert payload["law_holds"] is True
        assert payload["sign_defect"] == "1"
        assert payload["witnesses"] == []


class TestRaySpace:
    def test_phase_does_not_matter(self):
        a = ray_project(SpinorValue(gr(1), gr(0)))
        b = ray_project(SpinorValue(gr(0, 1), gr(0)))
        assert a == b

    def test_orthogonal_spinors_differ(self):
        a = ray_project(SpinorValue(gr(1), gr(0)))
        b = ray_project(SpinorValue(gr(0), gr(1)))
        assert a != b

    def test_parity_preserves_every_ray(self, rng, parity):
        for _ in range(100):
            value = sample_unit_spinor(rng)
            assert ray_project(transform_value(parity, value)) == ray_project(value)

    def test_unit_phases_preserve_rays(self, rng):
        phases = [gr(1), gr(-1), gr(0, 1), gr(0, -1),
                  gr(Fraction(3, 5), Fraction(4, 5)), gr(Fraction(3, 5), Fraction(-4, 5))]
        for _ in range(30):
            value = sample_unit_spinor(rng)
            for phase in phases:
                assert ray_project(value.scale(phase)) == ray_project(value)

    def test_zero_rejected(self):
        with pytest.raises(ZeroSpinorError):
            ray_project(SpinorValue(gr(0), gr(0)))

    def test_equality_matches_projective_slope(self, rng):
        # |<a,b>|^2 = |a|^2 |b|^2 is equivalent to equal v/u slopes
        for _ in range(100):
            a, b = sample_unit_spinor(rng), sample_unit_spinor(rng)
            lhs = ray_project(a) == ray_project(b)
            if a.u.is_zero() or b.u.is_zero():
                rhs = a.u.is_zero() and b.u.is_zero()
            else:
                rhs = a.v / a.u == b.v / b.u
            assert lhs == rhs

    def test_hash_consistent_with_equality(self, rng):
        for _ in range(50):
            value = sample_unit_spinor(rng)
            scaled = value.scale(gr(0, 1))
            assert hash(ray_project(value)) == hash(ray_project(scaled))

    def test_unit_representative_criterion(self, rng):
        # for unit representatives equality is a unit-modulus inner product
        for _ in range(50):
            a, b = sample_unit_spinor(rng), sample_unit_spinor(rng)
            if ray_project(a) == ray_project(b):
                assert inner_product(a, b).norm_sq() == 1


class TestFieldFiles:
    def test_round_trip(self):
        f = varied_field()
        text = f.to_text()
        assert SpinorSampleField.from_text(text) == f

    def test_canonical_line_order(self):
        f = varied_field()
        events = f.events()
        assert events == sorted(events)
        parsed_back = [line.split(";")[0].strip() for line in f.to_lines()]
        times = [Fraction(p) for p in parsed_back]
        assert times == sorted(times)

    def test_grammar_example(self):
        text = "0; 0,0,0; 1; i\n1; 1/2,0,-1; 3/5+4/5i; 0\n"
        f = SpinorSampleField.from_text(text)
        assert f.value_at(Event.make(0, 0, 0, 0)) == SpinorValue(gr(1), gr(0, 1))
        assert f.to_text() == text

    def test_parse_error_carries_line_number(self):
        with pytest.raises(FieldParseError) as err:
            SpinorSampleField.from_text("0; 0,0,0; 1; i\nbroken line\n")
        assert err.value.line_number == 2

    def test_duplicate_event_rejected(self):
        with pytest.raises(FieldParseError):
            SpinorSampleField.from_text("0; 0,0,0; 1; 0\n0; 0,0,0; 0; 1\n")

    def test_wrong_coordinate_count_rejected(self):
        with pytest.raises(FieldParseError) as err:
            SpinorSampleField.from_text("0; 0,0; 1; 0\n")
        assert "three spatial coordinates" in str(err.value)

    def test_bad_scalar_rejected_with_line(self):
        with pytest.raises(FieldParseError) as err:
            SpinorSampleField.from_text("0; 0,0,0; 1; 0\n1; 0,0,0; 0.5; 0\n")
        assert err.value.line_number == 2

    def test_blank_lines_skipped(self):
        f = SpinorSampleField.from_text("\n0; 0,0,0; 1; 0\n\n")
        assert len(f.events()) == 1


class TestClosureMetadata:
    def test_closed_under_reports_first_missing_event(self, treverse):
        from spincover.cover import covering_map

        f = SpinorSampleField({Event.make(0, 1, 0, 0): SpinorValue(gr(1), gr(0))})
        rotation = covering_map(treverse)
        missing = f.closed_under(lambda e: e.rotated(rotation))
        assert missing == Event.make(0, 1, 0, 0)

    def test_symmetric_domain_is_closed(self):
        f = varied_field()
        assert f.closed_under(Event.time_flipped) is None
        assert f.closed_under(Event.space_flipped) is None

    def test_declared_closure_group_is_carried(self, treverse):
        from spincover.cover import covering_map

        rotation = covering_map(treverse)
        events = symmetric_events()
        f = SpinorSampleField(
            {e: SpinorValue(gr(1), gr(0)) for e in events}, closure_group=(rotation,)
        )
        assert f.closure_group == (rotation,)
        g = apply_rotation(treverse, f)
        assert g.closure_group == (rotation,)
