"""The summation identity and its three computation routes.

The double sum over (n, j) with n + j <= x, the bilinear single pass over
prefix sums, and the closed form in terms of first and second moments must
agree — exactly for integer tables, to relative tolerance for real ones.
"""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corrlab import (
    CONSTANT_ONE,
    MU_SQUARED,
    VON_MANGOLDT,
    BudgetExceeded,
    FunctionKind,
    PayloadMode,
    RangeError,
    SequencePair,
    bilinear_rhs,
    build_table,
    double_sum_lhs_oracle,
    general_area_identity,
    identity_check,
    pair_sum_closed_form,
    prefix_sums,
)


class TestGeneralAreaIdentity:
    def test_minimal_pair(self):
        res = general_area_identity(SequencePair([1, 1], [1, 1]))
        assert res.lhs == res.rhs == 1
        assert res.equal
        assert res.mode is PayloadMode.EXACT

    def test_single_element_is_empty_sum(self):
        res = general_area_identity(SequencePair([5], [7]))
        assert res.lhs == res.rhs == 0
        assert res.equal

    def test_float_pair(self):
        r = [0.5, -1.25, 3.0, 2.5]
        h = [1.0, 0.25, -2.0, 4.0]
        res = general_area_identity(SequencePair(r, h))
        assert res.mode is PayloadMode.FLOATING
        assert res.equal
        assert res.lhs == pytest.approx(res.rhs, rel=1e-12)

    def test_direct_lhs_value(self):
        # lhs is sum_{j=2}^{n} r_j h_j by definition.
        r, h = [3, 1, 4, 1], [2, 7, 1, 8]
        res = general_area_identity(SequencePair(r, h))
        assert res.lhs == 1 * 7 + 4 * 1 + 1 * 8

    @given(
        st.lists(
            st.tuples(
                st.integers(min_value=-1000, max_value=1000),
                st.integers(min_value=-1000, max_value=1000),
            ),
            min_size=1,
            max_size=60,
        )
    )
    @settings(max_examples=300, deadline=None)
    def test_holds_for_arbitrary_integer_pairs(self, pairs):
        r = [p[0] for p in pairs]
        h = [p[1] for p in pairs]
        res = general_area_identity(SequencePair(r, h))
        assert res.equal
        assert res.lhs == res.rhs

    def test_rejects_mismatched_lengths(self):
        with pytest.raises(ValueError):
            SequencePair([1, 2], [1])

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            SequencePair([], [])

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            SequencePair([1.0, float("nan")], [1.0, 2.0])


class TestBilinearRhs:
    def test_constant_one_counts_pairs(self):
        t = build_table(CONSTANT_ONE, 20)
        assert bilinear_rhs(t, 5) == 10  # C(5, 2)
        assert bilinear_rhs(t, 1) == 0

    def test_divisor_example(self):
        t = build_table(FunctionKind.divisor(2), 20)
        assert bilinear_rhs(t, 6) == 79

    def test_von_mangoldt_small(self):
        t = build_table(VON_MANGOLDT, 20)
        expect = math.log(2) * math.log(3) + math.log(2) * (math.log(2) + math.log(3))
        assert bilinear_rhs(t, 4) == pytest.approx(expect, rel=1e-13)

    def test_accepts_precomputed_prefix(self):
        t = build_table(MU_SQUARED, 100)
        ps = prefix_sums(t)
        assert bilinear_rhs(t, 50, ps) == bilinear_rhs(t, 50)

    def test_rejects_foreign_prefix(self):
        t = build_table(MU_SQUARED, 100)
        other = prefix_sums(build_table(CONSTANT_ONE, 100))
        with pytest.raises(ValueError):
            bilinear_rhs(t, 50, other)

    def test_incremental_growth(self):
        # B(x) - B(x-1) = f(x) * S(x-1): the new top row of the triangle.
        t = build_table(MU_SQUARED, 300)
        ps = prefix_sums(t)
        for x in range(2, 301):
            assert bilinear_rhs(t, x, ps) - bilinear_rhs(t, x - 1, ps) == t.value(
                x
            ) * ps.s(x - 1), x

    def test_range_errors(self):
        t = build_table(CONSTANT_ONE, 10)
        with pytest.raises(ValueError):
            bilinear_rhs(t, 0)
        with pytest.raises(RangeError):
            bilinear_rhs(t, 11)


class TestDoubleSumOracle:
    def test_matches_bilinear_exact(self):
        t = build_table(FunctionKind.divisor(2), 200)
        for x in (1, 2, 3, 10, 150):
            assert double_sum_lhs_oracle(t, x) == bilinear_rhs(t, x), x

    def test_budget_guard(self):
        t = build_table(CONSTANT_ONE, 2000)
        with pytest.raises(BudgetExceeded):
            double_sum_lhs_oracle(t, 2000, oracle_cap=100)


class TestPairSumClosedForm:
    def test_musquared_example(self):
        t = build_table(MU_SQUARED, 20)
        assert pair_sum_closed_form(t, 8) == 15

    def test_equals_bilinear_for_integer_kinds(self):
        for kind in (CONSTANT_ONE, MU_SQUARED, FunctionKind.divisor(3)):
            t = build_table(kind, 400)
            for x in (1, 2, 7, 399, 400):
                assert pair_sum_closed_form(t, x) == bilinear_rhs(t, x), (kind.label, x)

    def test_float_kind_close(self):
        t = build_table(VON_MANGOLDT, 500)
        a = pair_sum_closed_form(t, 500)
        b = bilinear_rhs(t, 500)
        assert a == pytest.approx(b, rel=1e-11)


class TestIdentityCheck:
    @pytest.mark.parametrize(
        "kind",
        [FunctionKind.divisor(2), VON_MANGOLDT, FunctionKind.liouville()],
        ids=lambda k: k.label,
    )
    def test_three_routes_agree_at_500(self, kind):
        t = build_table(kind, 500)
        res = identity_check(t, 500)
        assert res.equal
        if t.mode is PayloadMode.EXACT:
            assert res.lhs == res.rhs

    def test_non_negative_for_non_negative_tables(self):
        for kind in (CONSTANT_ONE, MU_SQUARED, VON_MANGOLDT):
            t = build_table(kind, 300)
            assert bilinear_rhs(t, 300) >= 0

    def test_x_equals_one(self):
        t = build_table(CONSTANT_ONE, 5)
        res = identity_check(t, 1)
        assert res.lhs == res.rhs == 0
        assert res.equal
