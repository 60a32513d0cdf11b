"""Exact series arithmetic: frozen examples and algebraic invariants."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from doldzeta import (
    BivariateSeries,
    MultiPoly,
    NotAUnitError,
    NotExpandableError,
    Poly,
    PowerSeries,
    RationalFunction,
    egf_pack,
    egf_unpack,
    exponent_product,
    rat,
    rat_str,
    series_exp_neg_weighted,
)
from doldzeta.dynamics import divisors


def coeffs(series):
    return [int(c) if c.denominator == 1 else c for c in series.coeffs]


class TestArithmetic:
    def test_geometric_inverse(self):
        s = PowerSeries([1, -1], order=4)
        assert coeffs(s.inverse()) == [1, 1, 1, 1, 1]

    def test_telescoping_product(self):
        a = PowerSeries([1, -1], order=3)
        b = PowerSeries([1, 1, 1, 1], order=3)
        assert coeffs(a * b) == [1, 0, 0, 0]

    def test_conjugation_zeta_expansion(self):
        # (1-q)^2 (1-q^2)^{-1} begins 1 - 2q + 2q^2 - 2q^3
        sq = PowerSeries([1, -2, 1], order=3)
        even = PowerSeries([1, 0, -1], order=3)
        assert coeffs(sq * even.inverse()) == [1, -2, 2, -2]

    def test_invert_nonunit_rejected(self):
        with pytest.raises(NotAUnitError):
            PowerSeries([0, 1], order=2).inverse()

    @given(st.lists(st.integers(-9, 9), min_size=0, max_size=9))
    @settings(max_examples=100)
    def test_inverse_round_trip_for_unit_series(self, tail):
        s = PowerSeries([1] + tail, order=len(tail))
        assert s * s.inverse() == PowerSeries.one(len(tail))

    def test_mixed_orders_truncate(self):
        a = PowerSeries([1, 1, 1, 1], order=3)
        b = PowerSeries([1, 2], order=1)
        assert (a * b).order == 1
        cmp = a.compare(PowerSeries([1, 1], order=1))
        assert cmp.equal and cmp.partial

    def test_json_round_trip(self):
        s = PowerSeries([Fraction(1), Fraction(-1, 2), Fraction(3)], order=2)
        assert PowerSeries.from_json(s.to_json()).coeffs == s.coeffs
        assert s.to_json()["coeffs"] == ["1", "-1/2", "3"]


class TestExpForm:
    def test_exp_of_zero(self):
        assert coeffs(series_exp_neg_weighted([0, 0, 0])) == [1, 0, 0, 0]

    def test_all_ones_gives_one_minus_q(self):
        # exp(-sum q^k/k) = exp(log(1-q)) = 1 - q exactly
        assert coeffs(series_exp_neg_weighted([1, 1, 1])) == [1, -1, 0, 0]

    def test_degree_two_sphere_data(self):
        # L_k = 1 - 2^k packs into (1-q)(1-2q)^{-1} = 1 + q + 2q^2 + ...
        got = series_exp_neg_weighted([1 - 2 ** k for k in (1, 2)])
        expected = RationalFunction(Poly([1, -1]), Poly([1, -2])).expand(2)
        assert got.coeffs == expected.coeffs
        assert coeffs(got) == [1, 1, 2]


class TestExponentProduct:
    def test_empty(self):
        assert coeffs(exponent_product({}, 3)) == [1, 0, 0, 0]

    def test_euler_characteristic_power(self):
        assert coeffs(exponent_product({1: 3}, 3)) == [1, -3, 3, -1]

    def test_sphere_profile_matches_rational_form(self):
        got = exponent_product({1: -1, 2: -1, 3: -2}, 3)
        expected = RationalFunction(Poly([1, -1]), Poly([1, -2])).expand(3)
        assert got.coeffs == expected.coeffs

    @given(
        st.dictionaries(
            st.integers(1, 5), st.integers(-3, 3), min_size=0, max_size=4
        )
    )
    @settings(max_examples=100)
    def test_exp_and_product_forms_agree(self, exps):
        # L_k = sum_{m | k} m e_m reproduces prod (1-q^m)^{e_m}
        order = 8
        lefschetz = [
            sum(m * exps.get(m, 0) for m in divisors(k)) for k in range(1, order + 1)
        ]
        assert series_exp_neg_weighted(lefschetz, order) == exponent_product(exps, order)


class TestSubstitution:
    def test_identity_substitution(self):
        s = PowerSeries([1, 2, 3], order=2)
        assert s.substitute_power(1).coeffs == s.coeffs

    def test_one_minus_q_squared(self):
        assert coeffs(PowerSeries([1, -1], order=3).substitute_power(2)) == [1, 0, -1, 0]

    def test_circle_example_chain(self):
        # Z(q^2) Z(q)^{-1} for Z = (1-q)(1-2q)^{-1}: 1, -1, 0, -2, 0, -4
        zeta = RationalFunction(Poly([1, -1]), Poly([1, -2])).expand(5)
        chain = zeta.substitute_power(2) * zeta.inverse()
        assert coeffs(chain) == [1, -1, 0, -2, 0, -4]

    @given(
        st.lists(st.integers(-4, 4), min_size=1, max_size=7),
        st.lists(st.integers(-4, 4), min_size=1, max_size=7),
        st.integers(1, 3),
    )
    def test_substitution_is_multiplicative(self, a, b, m):
        sa = PowerSeries(a, order=6)
        sb = PowerSeries(b, order=6)
        left = (sa * sb).substitute_power(m)
        right = sa.substitute_power(m) * sb.substitute_power(m)
        assert left.coeffs == right.coeffs


class TestRationalFunction:
    def test_geometric(self):
        rf = RationalFunction(Poly([1]), Poly([1, -1]))
        assert coeffs(rf.expand(3)) == [1, 1, 1, 1]

    def test_long_division_oracle(self):
        # long division of (1-q) by (1-2q): 1, 1, 2, 4
        rf = RationalFunction(Poly([1, -1]), Poly([1, -2]))
        assert coeffs(rf.expand(3)) == [1, 1, 2, 4]

    def test_degree_three_map(self):
        # (1-q)(1-3q)^{-1}: coefficient k >= 1 is 3^k - 3^{k-1}
        rf = RationalFunction(Poly([1, -1]), Poly([1, -3]))
        assert coeffs(rf.expand(2)) == [1, 2, 6]
        got = series_exp_neg_weighted([1 - 3 ** k for k in (1, 2)])
        assert got.coeffs == rf.expand(2).coeffs

    def test_zero_constant_denominator_rejected(self):
        with pytest.raises(NotExpandableError):
            RationalFunction(Poly([1]), Poly([0, 1]))

    def test_canonical_form(self):
        # (2 - 2q^2) / (2 - 2q) reduces to (1 + q) / 1
        rf = RationalFunction(Poly([2, 0, -2]), Poly([2, -2]))
        assert rf.numerator == Poly([1, 1])
        assert rf.denominator == Poly([1])

    @given(
        st.lists(st.integers(-3, 3), min_size=1, max_size=4),
        st.lists(st.integers(-3, 3), min_size=0, max_size=3),
    )
    def test_expansion_times_denominator(self, num, den_tail):
        den = [1] + den_tail
        rf = RationalFunction(Poly(num), Poly(den))
        order = 7
        product = rf.expand(order) * Poly(den).series(order)
        assert product.coeffs == Poly(num).series(order).coeffs


class TestEgf:
    def test_pack(self):
        s = egf_pack([1, 1, 1])
        assert s.coeffs == (Fraction(1), Fraction(1), Fraction(1, 2))

    def test_unpack_square(self):
        square = PowerSeries([1, 2, 1, 0], order=3)
        assert egf_unpack(square) == [1, 2, 2, 0]

    def test_injective_pairs_from_two_fixed_points(self):
        # (1 + q)^2 as an EGF: 1, 2, 2 counts tuples without repetition
        packed = egf_pack([1, 1], order=2) ** 2
        assert egf_unpack(packed) == [1, 2, 2]

    def test_pack_unpack_round_trip(self):
        values = [3, -1, 7, 0, 2]
        assert egf_unpack(egf_pack(values)) == values

    @given(
        st.lists(st.integers(-5, 5), min_size=1, max_size=6),
        st.lists(st.integers(-5, 5), min_size=1, max_size=6),
    )
    def test_binomial_convolution(self, a, b):
        from math import comb

        order = 5
        a = a + [0] * (order + 1 - len(a))
        b = b + [0] * (order + 1 - len(b))
        packed = egf_pack(a, order) * egf_pack(b, order)
        unpacked = egf_unpack(packed)
        for k in range(order + 1):
            assert unpacked[k] == sum(comb(k, i) * a[i] * b[k - i] for i in range(k + 1))


class TestMultiPoly:
    def test_square_evaluation(self):
        p = MultiPoly.variable(1, 1) ** 2
        assert p.evaluate([3]) == 9

    def test_multiset_count_polynomial(self):
        t1 = MultiPoly.variable(1, 2)
        t2 = MultiPoly.variable(2, 2)
        p = (t1 ** 2 + t1 + 2 * t2) / 2
        assert p.evaluate([2, 0]) == 3

    def test_falling_factorial_vanishes(self):
        t = MultiPoly.variable(1, 1)
        p = t * (t - MultiPoly.constant(1, 1))
        assert p.evaluate([1]) == 0

    def test_weighted_degree(self):
        t1 = MultiPoly.variable(1, 3)
        t3 = MultiPoly.variable(3, 3)
        assert (t1 ** 2 * t3).weighted_degree() == 5

    def test_substitute(self):
        p = MultiPoly.variable(1, 1) ** 2
        image = MultiPoly.variable(1, 2) + 2 * MultiPoly.variable(2, 2)
        assert p.substitute([image]).evaluate([1, 1]) == 9

    def test_json_round_trip(self):
        t1 = MultiPoly.variable(1, 2)
        p = t1 ** 2 / 2 - t1 / 2 + MultiPoly.variable(2, 2)
        assert MultiPoly.from_json(p.to_json()) == p


class TestBivariate:
    def test_inverse_and_t_one(self):
        # 1 - qT inverted: coefficients T^k at q^k
        s = BivariateSeries([Poly([1]), Poly([0, -1])], order=3)
        inv = s.inverse()
        assert inv.coeffs[2] == Poly([0, 0, 1])
        assert coeffs(inv.at_one()) == [1, 1, 1, 1]


def test_rat_parsing():
    assert rat("3/4") == Fraction(3, 4)
    assert rat("-7") == Fraction(-7)
    assert rat_str(Fraction(6, 4)) == "3/2"
    assert rat_str(Fraction(-8, 2)) == "-4"
