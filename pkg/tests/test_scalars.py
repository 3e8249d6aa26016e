from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from spincover.scalars import (
    GaussianRational,
    ScalarParseError,
    approx_equal,
    format_complex,
    format_rational,
    parse_complex,
    parse_rational,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
gaussians = st.builds(GaussianRational, rationals, rationals)
nonzero_gaussians = gaussians.filter(lambda g: not g.is_zero())


class TestArithmetic:
    def test_i_squared(self):
        i = GaussianRational(0, 1)
        assert i * i == GaussianRational(-1)

    def test_unit_modulus_product(self):
        z = GaussianRational(Fraction(3, 5), Fraction(4, 5))
        assert z * z.conjugate() == GaussianRational(1)

    def test_scalar_multiply(self):
        z = GaussianRational(Fraction(1, 2), Fraction(1, 3))
        assert z * 2 == GaussianRational(1, Fraction(2, 3))

    def test_conjugate_examples(self):
        assert GaussianRational(1, 2).conjugate() == GaussianRational(1, -2)
        zero = GaussianRational(0)
        assert zero.conjugate() == zero
        z = GaussianRational(Fraction(3, 7), -1)
        assert z.conjugate().conjugate() == z

    def test_norm_sq_examples(self):
        assert GaussianRational(Fraction(3, 5), Fraction(4, 5)).norm_sq() == 1
        assert GaussianRational(0).norm_sq() == 0
        assert GaussianRational(1, 1).norm_sq() == 2

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            GaussianRational(0.5)

    def test_zero_inverse_rejected(self):
        with pytest.raises(ZeroDivisionError):
            GaussianRational(0).inverse()


class TestFieldAxioms:
    @given(gaussians, gaussians, gaussians)
    def test_add_associative(self, x, y, z):
        assert (x + y) + z == x + (y + z)

    @given(gaussians, gaussians, gaussians)
    def test_mul_associative(self, x, y, z):
        assert (x * y) * z == x * (y * z)

    @given(gaussians, gaussians, gaussians)
    def test_distributive(self, x, y, z):
        assert x * (y + z) == x * y + x * z

    @given(nonzero_gaussians)
    def test_inverse(self, x):
        assert x * x.inverse() == GaussianRational(1)

    @given(gaussians, gaussians)
    def test_norm_multiplicative(self, x, y):
        assert (x * y).norm_sq() == x.norm_sq() * y.norm_sq()

    @given(gaussians)
    def test_conjugation_involution(self, x):
        assert x.conjugate().conjugate() == x

    @given(gaussians)
    def test_norm_nonnegative_real(self, x):
        n = x.norm_sq()
        assert isinstance(n, Fraction)
        assert n >= 0


class TestTextGrammar:
    @pytest.mark.parametrize(
        "text,expected",
        [
            ("0", GaussianRational(0)),
            ("3/5", GaussianRational(Fraction(3, 5))),
            ("-2", GaussianRational(-2)),
            ("i", GaussianRational(0, 1)),
            ("-i", GaussianRational(0, -1)),
            ("2i", GaussianRational(0, 2)),
            ("3/5i", GaussianRational(0, Fraction(3, 5))),
            ("1+i", GaussianRational(1, 1)),
            ("1-i", GaussianRational(1, -1)),
            ("1+2/3i", GaussianRational(1, Fraction(2, 3))),
            ("-1/2-4/5i", GaussianRational(Fraction(-1, 2), Fraction(-4, 5))),
        ],
    )
    def test_parse(self, text, expected):
        assert parse_complex(text) == expected

    @pytest.mark.parametrize("bad", ["", "x", "1.5", "1+", "i2", "2/-3i", "+-i", "1e3"])
    def test_parse_rejects(self, bad):
        with pytest.raises(ScalarParseError):
            parse_complex(bad)

    def test_rational_canonical_form(self):
        assert format_rational(parse_rational("6/4")) == "3/2"
        assert format_rational(parse_rational("-10/5")) == "-2"
        assert format_rational(parse_rational("0")) == "0"

    @given(gaussians)
    def test_round_trip(self, x):
        assert parse_complex(format_complex(x)) == x

    @given(gaussians)
    def test_printing_is_canonical(self, x):
        text = format_complex(x)
        assert format_complex(parse_complex(text)) == text


class TestApproxBackend:
    def test_componentwise_tolerance(self):
        assert approx_equal(1 + 1j, 1 + 1j + 1e-10)
        assert not approx_equal(1 + 1j, 1 + 1j + 1e-8)
        assert approx_equal(1.0, 1.0 + 5e-10 + 5e-10j)
