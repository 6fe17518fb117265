from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from helpers import rational_point
from qduality.duality import IndexSubset, RegimeError, a_sum, b_sum, classify_level, Regime
from qduality.fields import sample_parameter_point
from qduality.grassmann import (
    FixedPoint,
    GrassmannCase,
    Side,
    correction_C,
    correction_D,
    det_weight,
    dual_fixed_point,
    fixed_points,
    restricted_I_dual,
    restricted_I_primal,
    shifted_ratio,
    telescope_lemma_check,
    verify_level_correspondence,
)


@pytest.mark.parametrize("n", range(2, 7))
def test_fixed_points_and_involution(n):
    for r in range(1, n):
        fps = fixed_points(n, r)
        assert len(fps) == comb(n, r) == len(set(fps))
        for fp in fps:
            dual = dual_fixed_point(fp)
            assert dual.side is Side.DUAL
            assert set(dual.members) | set(fp.members) == set(range(1, n + 1))
            assert dual_fixed_point(dual) == fp


def test_det_weight(point3):
    w = point3
    fp = FixedPoint(IndexSubset(3, (1, 3)))
    assert det_weight(fp, w) == w.xi(1) * w.xi(3)
    assert det_weight(dual_fixed_point(fp), w) == 1 / w.xi(2)
    for fp in fixed_points(3, 1):
        comp = 1
        for i in fp.subset.complement().members:
            comp = comp * w.xi(i)
        assert det_weight(dual_fixed_point(fp), w) * comp == 1


def test_shifted_ratio():
    q, x = Fraction(1, 3), Fraction(5, 2)
    assert shifted_ratio(x, q, 0) == 1
    assert shifted_ratio(x, q, 2) == (1 - q * x) * (1 - q * q * x)
    assert shifted_ratio(x, q, -1) == 1 / (1 - x)
    assert shifted_ratio(x, q, -2) == 1 / ((1 - x) * (1 - x / q))


@pytest.mark.parametrize("di", range(6))
@pytest.mark.parametrize("dj", range(6))
def test_telescope_lemma(di, dj, field_name):
    p = sample_parameter_point(2, 12, 100 * di + dj, field_name)
    assert telescope_lemma_check(p.ratio(1, 2), p.q, di, dj).passed


def test_gr12_example(hand_point):
    q, (L1, L2) = hand_point.q, hand_point.x
    case = GrassmannCase.build(hand_point, 1, 1, 0)
    fp = fixed_points(2, 1)[0]
    expected = 1 / ((1 - q) * (1 - q * L1 / L2))
    assert restricted_I_primal(case, fp) == expected
    assert restricted_I_dual(case, dual_fixed_point(fp)) == expected


def test_gr23_example():
    p = rational_point(Fraction(2, 7), 3, 5, 11)
    q, X = p.q, p.ratio
    case = GrassmannCase.build(p, 2, 1, 0)
    fp = FixedPoint(IndexSubset(3, (1, 2)))
    expected = 1 / ((1 - q) * (1 - X(2, 1)) * (1 - q * X(1, 3))) + 1 / (
        (1 - q) * (1 - X(1, 2)) * (1 - q * X(2, 3))
    )
    assert restricted_I_primal(case, fp) == expected
    assert restricted_I_dual(case, dual_fixed_point(fp)) == expected


def test_boundary_coefficient_example(hand_point):
    q, (_, L2) = hand_point.q, hand_point.x
    case = GrassmannCase.build(hand_point, 1, 1, 1)
    fp = fixed_points(2, 1)[0]
    assert correction_C(case, fp, 1) == -L2 / ((1 - q) * q)
    assert correction_C(case, fp, 0) == 1
    low = GrassmannCase.build(hand_point, 1, 1, -1)
    assert correction_D(low, fp, 1) == -1 / (hand_point.x[0] * (1 - q))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_restrictions_match_sums(n):
    p = sample_parameter_point(n, 4, n, "fp61")
    for r in range(1, n):
        for l in range(-r, n - r + 1):
            case = GrassmannCase.build(p, r, 2, l)
            for fp in fixed_points(n, r):
                comp = fp.subset.complement()
                assert restricted_I_primal(case, fp) == a_sum(p, fp.subset, 2, l)
                assert restricted_I_dual(case, dual_fixed_point(fp)) == b_sum(p, comp, 2, -l)


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("d", [0, 1, 2])
def test_correspondence_all_regimes(n, d):
    p = sample_parameter_point(n, d + 2, 7 * n + d, "rational")
    for r in range(1, n):
        for l in range(-r, n - r + 1):
            verdicts = verify_level_correspondence(GrassmannCase.build(p, r, d, l))
            assert len(verdicts) == comb(n, r)
            assert all(verdicts), [v.label for v in verdicts if not v]


def test_out_of_range_level(hand_point):
    with pytest.raises(RegimeError):
        verify_level_correspondence(GrassmannCase.build(hand_point, 1, 1, 2))


def test_wrong_side_rejected(hand_point):
    case = GrassmannCase.build(hand_point, 1, 1, 0)
    fp = fixed_points(2, 1)[0]
    with pytest.raises(ValueError):
        restricted_I_dual(case, fp)
    with pytest.raises(ValueError):
        restricted_I_primal(case, dual_fixed_point(fp))


def test_guard_depth_checked():
    p = sample_parameter_point(3, 2, 0, "fp61")
    with pytest.raises(ValueError):
        GrassmannCase.build(p, 1, 2, 0)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32), st.integers(2, 4), st.data())
def test_correspondence_property(seed, n, data):
    r = data.draw(st.integers(1, n - 1))
    l = data.draw(st.integers(-r, n - r))
    d = data.draw(st.integers(0, 2))
    p = sample_parameter_point(n, d + 1, seed, "fp61")
    assert classify_level(n, r, l) is not Regime.OUT_OF_RANGE
    assert all(verify_level_correspondence(GrassmannCase.build(p, r, d, l)))
