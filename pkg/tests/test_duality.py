import itertools
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from helpers import rational_point
from qduality.duality import (
    DualityCase,
    IndexSubset,
    LevelSpec,
    Regime,
    RegimeError,
    a_sum,
    b_sum,
    boundary_c,
    boundary_d,
    classify_level,
    corollary_unity,
    unity_sum,
    verify_case,
    verify_interior,
    verify_lower_boundary,
    verify_upper_boundary,
)
from qduality.fields import sample_parameter_point


def test_index_subset():
    I = IndexSubset(4, (3, 1))
    assert I.members == (1, 3)
    assert I.complement().members == (2, 4)
    assert I.complement().complement() == I
    for bad in [(), (1, 2, 3, 4), (0, 1), (5,)]:
        with pytest.raises(ValueError):
            IndexSubset(4, bad)


@pytest.mark.parametrize("n", range(2, 8))
def test_regimes_partition_levels(n):
    for r in range(1, n):
        for l in range(-n - 3, n + 4):
            regime = classify_level(n, r, l)
            expected = (
                Regime.INTERIOR if 1 - r <= l <= n - r - 1
                else Regime.UPPER_BOUNDARY if l == n - r
                else Regime.LOWER_BOUNDARY if l == -r
                else Regime.OUT_OF_RANGE
            )
            assert regime is expected


def test_a_sum_example_d1(point3):
    q, X = point3.q, point3.ratio
    expected = 1 / ((1 - q) * (1 - X(2, 1)) * (1 - q * X(1, 3))) + 1 / (
        (1 - q) * (1 - X(1, 2)) * (1 - q * X(2, 3))
    )
    assert a_sum(point3, (1, 2), 1, 0) == expected


def test_b_sum_example_d1(point3):
    q, X = point3.q, point3.ratio
    assert b_sum(point3, (3,), 1, 0) == 1 / ((1 - q) * (1 - q * X(1, 3)) * (1 - q * X(2, 3)))


def test_degree_zero_is_one(point3):
    I = IndexSubset(3, (1, 2))
    for l in range(-3, 4):
        assert a_sum(point3, I, 0, l) == 1
        assert b_sum(point3, I, 0, l) == 1
        assert boundary_c(point3, I, 0, 0) == 1
        assert boundary_d(point3, I, 0, 0) == 1


def test_single_composition_hand_values(hand_point):
    q, (x1, x2) = hand_point.q, hand_point.x
    # n=2, I={1}, d=1
    assert a_sum(hand_point, (1,), 1, 1) == x1 / ((1 - q) * (1 - q * x1 / x2))
    assert b_sum(hand_point, (2,), 1, -1) == x2 / (q * (1 - q) * (1 - q * x1 / x2))
    assert b_sum(hand_point, (2,), 1, -1) == (q / x2) ** -1 / ((1 - q) * (1 - q * x1 / x2))


def test_boundary_coefficients(hand_point):
    q, (x1, x2) = hand_point.q, hand_point.x
    assert boundary_c(hand_point, (1,), 1, 1) == -x2 / ((1 - q) * q)
    assert boundary_d(hand_point, (1,), 1, 1) == -1 / (x1 * (1 - q))
    p3 = rational_point(Fraction(1, 3), 2, 5, 7)
    assert boundary_c(p3, (1, 2), 1, 1) == -Fraction(7) / ((1 - p3.q) * p3.q)
    p4 = rational_point(Fraction(2, 7), 2, 5, 7, 11)
    q4 = p4.q
    assert boundary_d(p4, (1, 2), 2, 1) == Fraction(1, 10) / ((1 - q4) * q4)


def test_upper_boundary_hand_case(hand_point):
    q, (x1, x2) = hand_point.q, hand_point.x
    case = DualityCase.build(hand_point, (1,), 1, 1)
    v = verify_upper_boundary(case)
    assert v.passed
    A1 = x1 / ((1 - q) * (1 - q * x1 / x2))
    B1 = x2 / (q * (1 - q) * (1 - q * x1 / x2))
    assert v.lhs == A1
    assert A1 - B1 == -x2 / (q * (1 - q))
    assert v.rhs == B1 + boundary_c(hand_point, (1,), 1, 1)


def test_lower_boundary_hand_case(hand_point):
    q, (x1, x2) = hand_point.q, hand_point.x
    v = verify_lower_boundary(DualityCase.build(hand_point, (1,), 1, -1))
    assert v.passed
    B1 = q / (x2 * (1 - q) * (1 - q * x1 / x2))
    A1 = 1 / (x1 * (1 - q) * (1 - q * x1 / x2))
    assert v.lhs == B1
    assert B1 - A1 == -1 / (x1 * (1 - q))


@pytest.mark.parametrize("seed", range(10))
def test_boundaries_random_points(seed):
    p3 = sample_parameter_point(3, 5, seed, "fp61")
    assert verify_upper_boundary(DualityCase.build(p3, (1, 2), 2, 1))
    p4 = sample_parameter_point(4, 6, seed, "rational")
    assert verify_lower_boundary(DualityCase.build(p4, (1, 2), 2, -2))


@pytest.mark.parametrize("d", [0, 1, 2, 3])
def test_interior_examples(point3, d):
    v = verify_interior(DualityCase.build(point3, (1, 2), d, 0))
    assert v.passed and v.lhs == v.rhs


def test_interior_n2(hand_point):
    q, (x1, x2) = hand_point.q, hand_point.x
    v = verify_interior(DualityCase.build(hand_point, (1,), 1, 0))
    assert v.lhs == v.rhs == 1 / ((1 - q) * (1 - q * x1 / x2))


def test_regime_mismatch_rejected(point3):
    with pytest.raises(RegimeError):
        verify_interior(DualityCase.build(point3, (1, 2), 1, 1))
    with pytest.raises(RegimeError):
        verify_upper_boundary(DualityCase.build(point3, (1, 2), 1, 0))
    with pytest.raises(RegimeError):
        verify_case(DualityCase.build(point3, (1, 2), 1, 4))


def test_negative_control_outside_window():
    for seed in range(5):
        p = sample_parameter_point(2, 3, seed, "rational")
        v = verify_interior(DualityCase.build(p, (1,), 1, 1), enforce_window=False)
        assert not v.passed


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32), st.permutations(range(4)), st.integers(0, 3), st.integers(-1, 1))
def test_relabeling_symmetry(seed, perm, d, l):
    # permuting coordinates together with the subset leaves a_sum unchanged
    p = sample_parameter_point(4, 6, seed, "fp61")
    I = (1, 2)
    moved = type(p)(q=p.q, x=tuple(p.x[k] for k in perm), guard_depth=p.guard_depth, field=p.field)
    # new position of old index i is perm.index(i - 1) + 1
    image = tuple(perm.index(i - 1) + 1 for i in I)
    assert a_sum(moved, image, d, l) == a_sum(p, I, d, l)
    Ic = (3, 4)
    image_c = tuple(perm.index(i - 1) + 1 for i in Ic)
    assert b_sum(moved, image_c, d, -l) == b_sum(p, Ic, d, -l)


def test_unity_examples(point3):
    q, X = point3.q, point3.ratio
    d1 = (1 - q * X(2, 3)) / (1 - X(2, 1)) + (1 - q * X(1, 3)) / (1 - X(1, 2))
    assert d1 == 1 == unity_sum(point3, 1)
    assert corollary_unity(point3, 5)


def test_level_spec():
    assert LevelSpec.of(5, 2, 3) == LevelSpec(3, Regime.UPPER_BOUNDARY)


# symbolic oracle: the identity itself, proven by sympy for one small case
def _sym_qp(a, q, d):
    out = sp.Integer(1)
    for k in range(d):
        out *= 1 - q**k * a
    return out


def test_symbolic_oracle_n3_d2():
    q, x1, x2, x3 = sp.symbols("q x1 x2 x3")
    x = {1: x1, 2: x2, 3: x3}
    A = 0
    for d1, d2 in [(2, 0), (1, 1), (0, 2)]:
        dd = {1: d1, 2: d2}
        den = 1
        for i, j in itertools.product((1, 2), repeat=2):
            den *= _sym_qp(q ** (dd[i] - dd[j] + 1) * x[i] / x[j], q, dd[j])
        for i in (1, 2):
            den *= _sym_qp(q * x[i] / x3, q, dd[i])
        A += 1 / den
    B = 1 / (_sym_qp(q, q, 2) * _sym_qp(q * x1 / x3, q, 2) * _sym_qp(q * x2 / x3, q, 2))
    assert sp.cancel(sp.together(A - B)) == 0
    # and the engine agrees with the symbolic expression at a point
    p = rational_point(Fraction(3, 7), Fraction(2, 5), Fraction(11, 3), Fraction(-5, 2))
    subs = {q: sp.Rational(3, 7), x1: sp.Rational(2, 5), x2: sp.Rational(11, 3), x3: sp.Rational(-5, 2)}
    assert Fraction(str(A.subs(subs))) == a_sum(p, (1, 2), 2, 0)


def test_unity_d2_first_term_uses_x23():
    p = rational_point(Fraction(2, 7), 3, 5, 11)
    q, X = p.q, p.ratio
    middle = (1 + q) * (1 - q * q * X(1, 3)) * (1 - q * q * X(2, 3)) / ((1 - q * X(1, 2)) * (1 - q * X(2, 1)))
    last = (1 - q * X(1, 3)) * (1 - q * q * X(1, 3)) / ((1 - X(1, 2) / q) * (1 - X(1, 2)))

    def first(k):
        return (1 - q * X(k, 3)) * (1 - q * q * X(k, 3)) / ((1 - X(2, 1) / q) * (1 - X(2, 1)))

    assert first(2) + middle + last == 1 == unity_sum(p, 2)
    assert first(1) + middle + last != 1
