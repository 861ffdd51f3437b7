import math

import pytest
from hypothesis import given, strategies as st

from fmcdm.fuzzy import (
    CANONICAL_TERMS,
    INDIFFERENCE,
    TFN,
    TERMS,
    UnknownTermError,
    scale_of,
)


def quantized(lo: float, hi: float):
    """Floats with at most 9 decimal places, the domain of linguistic judgments."""
    scale = 10**9
    return st.integers(int(lo * scale), int(hi * scale)).map(lambda n: n / scale)


def tfns(lo=0.0, hi=1.0):
    return st.tuples(quantized(lo, hi), quantized(lo, hi), quantized(lo, hi)).map(
        lambda t: TFN(*sorted(t))
    )


class TestConstruction:
    def test_rejects_unordered(self):
        with pytest.raises(ValueError, match="l <= m <= u"):
            TFN(2, 1, 3)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError, match="finite"):
            TFN(0, 1, math.inf)
        with pytest.raises(ValueError, match="finite"):
            TFN(math.nan, 1, 2)

    def test_degenerate_triples_are_legal(self):
        TFN(1, 1, 1)
        TFN(0.5, 0.5, 0.55)
        TFN(0.85, 0.9, 0.9)


class TestMembership:
    def test_modal_point(self):
        assert TFN(1, 2, 3).membership(2) == 1.0

    def test_support_endpoints(self):
        a = TFN(1, 2, 3)
        assert a.membership(1) == 0.0
        assert a.membership(3) == 0.0

    def test_descending_leg_midpoint(self):
        assert TFN(1, 2, 3).membership(2.5) == 0.5

    def test_outside_support(self):
        a = TFN(1, 2, 3)
        assert a.membership(0.5) == 0.0
        assert a.membership(4.0) == 0.0

    def test_degenerate_corners(self):
        assert TFN(2, 2, 3).membership(2) == 1.0
        assert TFN(1, 3, 3).membership(3) == 1.0
        assert TFN(2, 2, 2).membership(2) == 1.0

    @given(tfns(0, 10), st.floats(-5, 15, allow_nan=False))
    def test_range_and_peak(self, a, x):
        mu = a.membership(x)
        assert 0.0 <= mu <= 1.0
        assert a.membership(a.m) == 1.0

    @given(tfns(0, 10), st.floats(0.001, 0.999))
    def test_piecewise_linear_on_support(self, a, t):
        if a.l < a.m:
            assert a.membership(a.l + t * (a.m - a.l)) == pytest.approx(t, abs=1e-9)
        if a.m < a.u:
            assert a.membership(a.u - t * (a.u - a.m)) == pytest.approx(t, abs=1e-9)


class TestArithmetic:
    def test_add_scale_entries(self):
        assert TFN(0.5, 0.5, 0.55) + TFN(0.45, 0.5, 0.5) == TFN(0.95, 1.0, 1.05)

    def test_add_identity(self):
        assert TFN(0, 0, 0) + TFN(1, 2, 3) == TFN(1, 2, 3)

    def test_add_direct(self):
        assert TFN(1, 2, 3) + TFN(2, 3, 4) == TFN(3, 5, 7)

    def test_subtract_self_widens(self):
        assert TFN(1, 2, 3) - TFN(1, 2, 3) == TFN(-2, 0, 2)

    def test_subtract_zero(self):
        assert TFN(2, 3, 4) - TFN(0, 0, 0) == TFN(2, 3, 4)

    def test_subtract_direct(self):
        assert TFN(1, 2, 3) - TFN(0.5, 1, 1.5) == TFN(-0.5, 1, 2.5)

    def test_multiply_direct(self):
        assert TFN(1, 2, 3) * TFN(2, 3, 4) == TFN(2, 6, 12)

    def test_multiply_identity(self):
        a = TFN(0.2, 0.5, 0.9)
        assert TFN(1, 1, 1) * a == a

    def test_multiply_square_scale_entry(self):
        sq = TFN(0.5, 0.5, 0.55) * TFN(0.5, 0.5, 0.55)
        assert sq.l == 0.25 and sq.m == 0.25
        assert sq.u == pytest.approx(0.3025, rel=1e-12)

    def test_multiply_rejects_negative(self):
        with pytest.raises(ValueError, match="nonnegative"):
            TFN(-1, 0, 1) * TFN(1, 2, 3)
        with pytest.raises(ValueError, match="nonnegative"):
            TFN(1, 2, 3) * TFN(-1, 0, 1)

    def test_divide_direct(self):
        assert TFN(2, 6, 12) / TFN(2, 3, 4) == TFN(0.5, 2, 6)

    def test_divide_identity_divisor(self):
        a = TFN(0.2, 0.5, 0.9)
        assert a / TFN(1, 1, 1) == a

    def test_divide_self_widens(self):
        q = TFN(1, 2, 3) / TFN(1, 2, 3)
        assert q == TFN(1 / 3, 1, 3)

    def test_divide_rejects_nonpositive_divisor(self):
        with pytest.raises(ZeroDivisionError):
            TFN(1, 2, 3) / TFN(0, 1, 2)
        with pytest.raises(ZeroDivisionError):
            TFN(1, 2, 3) / TFN(-1, 1, 2)

    def test_divide_rejects_negative_dividend(self):
        with pytest.raises(ValueError, match="nonnegative"):
            TFN(-1, 0, 1) / TFN(1, 2, 3)

    @given(tfns(0, 5), tfns(0, 5))
    def test_add_multiply_commute(self, a, b):
        assert a + b == b + a
        assert a * b == b * a

    @given(tfns(0, 5), tfns(0, 5))
    def test_ordering_preserved(self, a, b):
        for result in (a + b, a - b, a * b):
            assert result.l <= result.m <= result.u

    @given(tfns(0, 5), tfns(0.001, 5))
    def test_division_ordering_preserved(self, a, b):
        if b.l > 0:
            q = a / b
            assert q.l <= q.m <= q.u

    @given(tfns(0.01, 5), tfns(0.01, 5))
    def test_quotient_of_product_contains_origin(self, a, b):
        # Component-wise fuzzy arithmetic is sub-distributive: dividing the
        # product back by b widens around a rather than recovering it.
        q = (a * b) / b
        assert q.l <= a.l * (1 + 1e-12) + 1e-300
        assert q.u >= a.u * (1 - 1e-12) - 1e-300
        assert q.m == pytest.approx(a.m, rel=1e-12)


class TestReciprocal:
    def test_direct(self):
        assert TFN(2, 4, 5).reciprocal() == TFN(0.2, 0.25, 0.5)

    def test_fixed_point(self):
        assert TFN(1, 1, 1).reciprocal() == TFN(1, 1, 1)

    def test_scale_entry(self):
        r = TFN(0.5, 0.5, 0.55).reciprocal()
        assert r.l == pytest.approx(1 / 0.55, rel=1e-15)
        assert r.m == 2.0 and r.u == 2.0

    def test_rejects_nonpositive(self):
        with pytest.raises(ZeroDivisionError):
            TFN(0, 1, 2).reciprocal()

    @given(tfns(0.001, 100))
    def test_involution_within_1e12_relative(self, a):
        if a.l <= 0:
            return
        back = a.reciprocal().reciprocal()
        for x, y in zip(a, back):
            assert abs(x - y) <= 1e-12 * abs(x)


class TestComplement:
    def test_important_row(self):
        assert TFN(0.65, 0.7, 0.75).complement() == TFN(0.25, 0.3, 0.35)

    def test_symmetric_fixed_point(self):
        assert INDIFFERENCE.complement() == INDIFFERENCE

    def test_absolutely_important_row(self):
        assert TFN(0.85, 0.9, 0.9).complement() == TFN(0.1, 0.1, 0.15)

    def test_rejects_outside_unit_interval(self):
        with pytest.raises(ValueError, match=r"\[0, 1\]"):
            TFN(0.5, 0.8, 1.2).complement()
        with pytest.raises(ValueError, match=r"\[0, 1\]"):
            TFN(-0.1, 0.5, 0.9).complement()

    @given(tfns(0, 1))
    def test_involution_exact(self, a):
        assert a.complement().complement() == a

    @given(tfns(0, 1))
    def test_ordering_preserved(self, a):
        c = a.complement()
        assert c.l <= c.m <= c.u
        assert 0.0 <= c.l and c.u <= 1.0


class TestScaleTable:
    EXPECTED = {
        "Equally Important": ((0.5, 0.5, 0.55), (0.45, 0.5, 0.5)),
        "Slightly Important": ((0.55, 0.6, 0.65), (0.35, 0.4, 0.45)),
        "Important": ((0.65, 0.7, 0.75), (0.25, 0.3, 0.35)),
        "Very Important": ((0.75, 0.8, 0.85), (0.15, 0.2, 0.25)),
        "Absolutely Important": ((0.85, 0.9, 0.9), (0.1, 0.1, 0.15)),
    }

    def test_five_terms(self):
        assert CANONICAL_TERMS == tuple(self.EXPECTED)

    @pytest.mark.parametrize("name", list(EXPECTED))
    def test_bit_exact_entries(self, name):
        term = scale_of(name)
        scale, reciprocal = self.EXPECTED[name]
        assert term.scale.as_tuple() == scale
        assert term.reciprocal_scale.as_tuple() == reciprocal

    @pytest.mark.parametrize("name", list(EXPECTED))
    def test_complement_matches_reciprocal_column(self, name):
        term = scale_of(name)
        assert term.scale.complement() == term.reciprocal_scale
        assert term.reciprocal_scale.complement() == term.scale

    def test_case_insensitive_lookup(self):
        assert scale_of("equally important").name == "Equally Important"
        assert scale_of("  VERY IMPORTANT ").name == "Very Important"

    def test_unknown_term(self):
        with pytest.raises(UnknownTermError) as excinfo:
            scale_of("Moderately Important")
        for name in CANONICAL_TERMS:
            assert name in str(excinfo.value)

    def test_all_components_in_unit_interval(self):
        for term in TERMS:
            for value in (*term.scale, *term.reciprocal_scale):
                assert 0.0 <= value <= 1.0
