"""The sums A_d, B_d and the duality checks between them.

Indices are 1-based throughout, so ``IndexSubset(3, (1, 2))`` is the set
{1, 2} inside [3] and ``point.xi(1)`` is ``x_1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable

from .compositions import weak_compositions
from .fields import ParameterPoint, field_pow, one_like
from .qseries import level_weight_A, level_weight_B, qfactorial, qpochhammer


class RegimeError(ValueError):
    """A checker was called on a level outside the regime it handles."""


@dataclass(frozen=True)
class IndexSubset:
    n: int
    members: tuple[int, ...]

    def __post_init__(self):
        members = tuple(sorted(set(self.members)))
        object.__setattr__(self, "members", members)
        if not 0 < len(members) < self.n:
            raise ValueError(f"subset {members} must be nonempty and proper in [{self.n}]")
        if members[0] < 1 or members[-1] > self.n:
            raise ValueError(f"subset {members} not contained in [1..{self.n}]")

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def complement(self) -> "IndexSubset":
        rest = tuple(i for i in range(1, self.n + 1) if i not in self.members)
        return IndexSubset(self.n, rest)

    @classmethod
    def first(cls, n: int, r: int) -> "IndexSubset":
        return cls(n, tuple(range(1, r + 1)))


def as_subset(n: int, subset: IndexSubset | Iterable[int]) -> IndexSubset:
    if isinstance(subset, IndexSubset):
        if subset.n != n:
            raise ValueError(f"subset lives in [{subset.n}], point has n={n}")
        return subset
    return IndexSubset(n, tuple(subset))


class Regime(str, Enum):
    INTERIOR = "interior"
    UPPER_BOUNDARY = "upper_boundary"
    LOWER_BOUNDARY = "lower_boundary"
    OUT_OF_RANGE = "out_of_range"


def classify_level(n: int, r: int, l: int) -> Regime:
    if not 0 < r < n:
        raise ValueError(f"need 0 < r < n, got r={r}, n={n}")
    if 1 - r <= l <= n - r - 1:
        return Regime.INTERIOR
    if l == n - r:
        return Regime.UPPER_BOUNDARY
    if l == -r:
        return Regime.LOWER_BOUNDARY
    return Regime.OUT_OF_RANGE


def level_window(n: int, r: int) -> str:
    return f"{1 - r} <= l <= {n - r - 1} (boundaries l = {-r} and l = {n - r})"


@dataclass(frozen=True)
class LevelSpec:
    l: int
    regime: Regime

    @classmethod
    def of(cls, n: int, r: int, l: int) -> "LevelSpec":
        return cls(l, classify_level(n, r, l))


@dataclass(frozen=True)
class DualityCase:
    point: ParameterPoint
    subset: IndexSubset
    d: int
    level: LevelSpec

    @classmethod
    def build(cls, point: ParameterPoint, subset, d: int, l: int) -> "DualityCase":
        I = as_subset(point.n, subset)
        if d < 0:
            raise ValueError("d must be non-negative")
        if point.guard_depth < d + 1:
            raise ValueError(f"guard depth {point.guard_depth} too shallow for d={d}")
        return cls(point, I, d, LevelSpec.of(point.n, len(I), l))

    @property
    def l(self) -> int:
        return self.level.l

    @property
    def r(self) -> int:
        return len(self.subset)


@dataclass
class Verdict:
    passed: bool
    lhs: Any
    rhs: Any
    label: str = ""
    extra: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed


def a_sum(point: ParameterPoint, subset, d: int, l: int):
    """A_d(x, I, l) evaluated at ``point``."""
    I = as_subset(point.n, subset)
    Ic = I.complement()
    q = point.q
    total = 0 * q
    for parts in weak_compositions(d, len(I)):
        deg = dict(zip(I.members, parts))
        num = one_like(q)
        den = one_like(q)
        for i in I:
            num = num * level_weight_A(point.xi(i), q, deg[i], l)
            for j in I:
                a = field_pow(q, deg[i] - deg[j] + 1) * point.ratio(i, j)
                den = den * qpochhammer(a, q, deg[j])
            for j in Ic:
                den = den * qpochhammer(q * point.ratio(i, j), q, deg[i])
        total = total + num / den
    return total


def b_sum(point: ParameterPoint, subset, d: int, l: int):
    """B_d(x, J, l) evaluated at ``point``; all ratios are transposed relative to A_d."""
    J = as_subset(point.n, subset)
    Jc = J.complement()
    q = point.q
    total = 0 * q
    for parts in weak_compositions(d, len(J)):
        deg = dict(zip(J.members, parts))
        num = one_like(q)
        den = one_like(q)
        for i in J:
            num = num * level_weight_B(point.xi(i), q, deg[i], l)
            for j in J:
                a = field_pow(q, deg[i] - deg[j] + 1) * point.ratio(j, i)
                den = den * qpochhammer(a, q, deg[j])
            for j in Jc:
                den = den * qpochhammer(q * point.ratio(j, i), q, deg[i])
        total = total + num / den
    return total


def boundary_c(point: ParameterPoint, subset, d: int, s: int):
    """Correction coefficient C_s of the upper boundary l = n - r.

    The monomial runs over the complement of the A-side set ``I``.
    """
    I = as_subset(point.n, subset)
    if not 0 <= s <= d:
        raise ValueError("need 0 <= s <= d")
    k = point.n - len(I)
    q = point.q
    mono = one_like(q)
    for i in I.complement():
        mono = mono * field_pow(point.xi(i), s)
    sign = -1 if (k * s) % 2 else 1
    return sign * mono / (qfactorial(q, s) * field_pow(q, s * (d - s + k)))


def boundary_d(point: ParameterPoint, subset, d: int, s: int):
    """Correction coefficient D_s of the lower boundary l = -r."""
    I = as_subset(point.n, subset)
    if not 0 <= s <= d:
        raise ValueError("need 0 <= s <= d")
    q = point.q
    mono = one_like(q)
    for i in I:
        mono = mono * field_pow(point.xi(i), -s)
    sign = -1 if (len(I) * s) % 2 else 1
    return sign * mono / (qfactorial(q, s) * field_pow(q, s * (d - s)))


def _require(case: DualityCase, regime: Regime):
    if case.level.regime is not regime:
        raise RegimeError(
            f"level l={case.l} is {case.level.regime.value}, expected {regime.value}; "
            f"window for n={case.point.n}, r={case.r}: {level_window(case.point.n, case.r)}"
        )


def verify_interior(case: DualityCase, *, enforce_window: bool = True) -> Verdict:
    """Check A_d(x, I, l) == B_d(x, I^c, -l).

    With ``enforce_window=False`` the comparison is made at any level; this is
    the uncorrected check used as a negative control at the boundaries.
    """
    if enforce_window:
        _require(case, Regime.INTERIOR)
    lhs = a_sum(case.point, case.subset, case.d, case.l)
    rhs = b_sum(case.point, case.subset.complement(), case.d, -case.l)
    return Verdict(lhs == rhs, lhs, rhs, "interior")


def verify_upper_boundary(case: DualityCase) -> Verdict:
    """At l = n - r: A_d(I, l) == sum_s C_s * B_{d-s}(I^c, -l)."""
    _require(case, Regime.UPPER_BOUNDARY)
    p, I, d, l = case.point, case.subset, case.d, case.l
    lhs = a_sum(p, I, d, l)
    Ic = I.complement()
    rhs = 0 * p.q
    for s in range(d + 1):
        rhs = rhs + boundary_c(p, I, d, s) * b_sum(p, Ic, d - s, -l)
    return Verdict(lhs == rhs, lhs, rhs, "upper_boundary")


def verify_lower_boundary(case: DualityCase) -> Verdict:
    """At l = -r: B_d(I^c, -l) == sum_s D_s * A_{d-s}(I, l)."""
    _require(case, Regime.LOWER_BOUNDARY)
    p, I, d, l = case.point, case.subset, case.d, case.l
    lhs = b_sum(p, I.complement(), d, -l)
    rhs = 0 * p.q
    for s in range(d + 1):
        rhs = rhs + boundary_d(p, I, d, s) * a_sum(p, I, d - s, l)
    return Verdict(lhs == rhs, lhs, rhs, "lower_boundary")


CHECKERS = {
    Regime.INTERIOR: verify_interior,
    Regime.UPPER_BOUNDARY: verify_upper_boundary,
    Regime.LOWER_BOUNDARY: verify_lower_boundary,
}


def verify_case(case: DualityCase) -> Verdict:
    """Dispatch to the checker for the case's level regime."""
    try:
        checker = CHECKERS[case.level.regime]
    except KeyError:
        raise RegimeError(
            f"level l={case.l} out of range; {level_window(case.point.n, case.r)}"
        ) from None
    return checker(case)


def unity_sum(point: ParameterPoint, d: int):
    """The n = 3 sum that collapses to 1 (I = {1, 2}, l = 0)."""
    if point.n != 3:
        raise ValueError("unity sum is defined for n = 3")
    q = point.q
    qd = qfactorial(q, d)
    total = 0 * q
    for d1, d2 in weak_compositions(d, 2):
        deg = {1: d1, 2: d2}
        term = qd / (qfactorial(q, d1) * qfactorial(q, d2))
        for i, j in ((1, 2), (2, 1)):
            top = qpochhammer(field_pow(q, deg[i] + 1) * point.ratio(i, 3), q, d - deg[i])
            bottom = qpochhammer(field_pow(q, deg[i] - deg[j] + 1) * point.ratio(i, j), q, deg[j])
            term = term * top / bottom
        total = total + term
    return total


def corollary_unity(point: ParameterPoint, d: int) -> Verdict:
    value = unity_sum(point, d)
    return Verdict(value == 1, value, one_like(point.q), "unity")
