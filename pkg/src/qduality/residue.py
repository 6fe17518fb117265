"""Residue route to the duality: the integrand, its residue summands, and a contour quadrature.

The summands are evaluated from the unsimplified product forms produced by the
change of variables ``w = x_i q^{n-1} z`` (inside poles) and ``w = x_i q^{-n} z``
(outside poles), not from the simplified q-Pochhammer forms.  Agreement with
:func:`qduality.duality.a_sum` / :func:`~qduality.duality.b_sum` is therefore a
genuine cross-check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .compositions import weak_compositions
from .fields import ParameterPoint, field_pow, one_like
from .qseries import PoleError

MAX_NUMERIC_DEGREE = 3


class ContourError(ValueError):
    """Invalid quadrature configuration."""


@dataclass(frozen=True)
class IntegrandSpec:
    point: ParameterPoint
    r: int
    d: int
    l: int

    def __post_init__(self):
        if not 1 <= self.r <= self.point.n - 1:
            raise ValueError(f"need 1 <= r <= n-1, got r={self.r}, n={self.point.n}")
        if self.d < 0:
            raise ValueError("d must be non-negative")

    @property
    def n(self) -> int:
        return self.point.n

    def reversed_contour_ok(self) -> bool:
        """Whether the residue at infinity vanishes (degree gap >= 2)."""
        return 1 - self.r <= self.l <= self.n - self.r - 1


@dataclass(frozen=True)
class ContourConfig:
    rho: float
    grid_points: int = 512

    def __post_init__(self):
        N = self.grid_points
        if N < 64 or N & (N - 1):
            raise ContourError(f"grid_points must be a power of two >= 64, got {N}")
        if not self.rho > 0:
            raise ContourError("rho must be positive")


def _check_nonzero(v, what: str):
    if np.any(v == 0):
        raise PoleError(v, None, 0, where=f"integrand ({what})")


def integrand_f(spec: IntegrandSpec, w: Sequence):
    """Evaluate the symmetric integrand at ``w = (w_1, ..., w_d)``.

    Entries of ``w`` may be field scalars, complex numbers, or broadcastable
    numpy arrays.
    """
    p, r, d, l = spec.point, spec.r, spec.d, spec.l
    if len(w) != d:
        raise ValueError(f"expected {d} variables, got {len(w)}")
    q = p.q
    val = one_like(q) / (field_pow(1 - q, d) * math.factorial(d))
    for i in range(d):
        for j in range(d):
            if i == j:
                continue
            den = w[i] - q * w[j]
            _check_nonzero(den, f"w_{i+1} = q w_{j+1}")
            val = val * (w[i] - w[j]) / den
    for wi in w:
        _check_nonzero(wi, "w = 0")
        den = one_like(q)
        for j in range(1, r + 1):
            den = den * (1 - p.xi(j) / wi)
        for j in range(r + 1, p.n + 1):
            den = den * (1 - q * wi / p.xi(j))
        _check_nonzero(den, "x-pole")
        val = val * wi ** (l - 1) / den
    return val


def p_norm(d: int, q):
    """The normalising double product P_d (equal to 1 for d = 0, 1)."""
    one = one_like(q)
    if d <= 1:
        return one
    val = one
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            if i == j or i - j == -1:
                continue
            val = val * (1 - field_pow(q, i - j)) / (1 - field_pow(q, i - j + 1))
    for i in range(2, d + 1):
        val = val * (1 - 1 / q) / (1 - field_pow(q, 1 - i))
    return val


def _safe_div(num, den, what):
    if den == 0:
        raise PoleError(den, None, 0, where=what)
    return num / den


def residue_summand_E(spec: IntegrandSpec, parts: Sequence[int]):
    """E for one pole configuration ``parts = (d_1..d_r)`` (includes the 1/d!).

    ``d! * residue_summand_E`` is the matching summand of A_d.
    """
    p, r, l = spec.point, spec.r, spec.l
    q = p.q
    if len(parts) != r or sum(parts) != spec.d:
        raise ValueError(f"parts {tuple(parts)} do not form a composition of {spec.d} into {r}")
    deg = dict(zip(range(1, r + 1), parts))
    one = one_like(q)

    # factors pairing inside indices with outside ones
    e1 = one
    for i in range(1, r + 1):
        for j in range(r + 1, p.n + 1):
            for m in range(1, deg[i] + 1):
                e1 = _safe_div(e1, 1 - p.ratio(i, j) * field_pow(q, m), "E1")

    # x-free factors
    e2 = one
    for i in range(1, r + 1):
        e2 = e2 * p_norm(deg[i], q) / field_pow(1 - q, deg[i])

    # remaining factors among inside indices, and the level monomial
    e3 = one
    for i in range(1, r + 1):
        for j in range(1, r + 1):
            if i == j:
                continue
            xij = p.ratio(i, j)
            for ni in range(1, deg[i] + 1):
                for nj in range(1, deg[j] + 1):
                    e3 = e3 * _safe_div(
                        1 - field_pow(q, ni - nj) * xij, 1 - field_pow(q, ni - nj + 1) * xij, "E3"
                    )
            for ni in range(1, deg[i] + 1):
                e3 = _safe_div(e3, 1 - p.ratio(j, i) * field_pow(q, 1 - ni), "E3")
        for ni in range(1, deg[i] + 1):
            e3 = e3 * field_pow(p.xi(i) * field_pow(q, ni - 1), l)

    return e1 * e2 * e3 / math.factorial(spec.d)


def residue_summand_F(spec: IntegrandSpec, parts: Sequence[int]):
    """F for one outside configuration ``parts = (d_{r+1}..d_n)`` (includes 1/d! and (-1)^d).

    ``d! * residue_summand_F`` equals ``(-1)^d`` times the matching summand of
    B_d(x, I^c, -l).
    """
    p, r, l = spec.point, spec.r, spec.l
    q = p.q
    outside = range(r + 1, p.n + 1)
    if len(parts) != p.n - r or sum(parts) != spec.d:
        raise ValueError(
            f"parts {tuple(parts)} do not form a composition of {spec.d} into {p.n - r}"
        )
    deg = dict(zip(outside, parts))
    one = one_like(q)

    val = one
    for i in outside:
        val = val * p_norm(deg[i], q) / field_pow(1 - q, deg[i])
    for i in outside:
        for j in outside:
            if i == j:
                continue
            xij = p.ratio(i, j)
            for ni in range(1, deg[i] + 1):
                for nj in range(1, deg[j] + 1):
                    val = val * _safe_div(
                        1 - field_pow(q, nj - ni) * xij, 1 - field_pow(q, nj - ni + 1) * xij, "F"
                    )
            for ni in range(1, deg[i] + 1):
                val = _safe_div(val, 1 - xij * field_pow(q, 1 - ni), "F")
        for ni in range(1, deg[i] + 1):
            val = val * field_pow(p.xi(i) * field_pow(q, -ni), l)
        for j in range(1, r + 1):
            for ni in range(1, deg[i] + 1):
                val = _safe_div(val, 1 - p.ratio(j, i) * field_pow(q, ni), "F")

    sign = -1 if spec.d % 2 else 1
    return sign * val / math.factorial(spec.d)


def assemble_E(spec: IntegrandSpec):
    """Sum of ``d! * E`` over all inside configurations; equals A_d(x, {1..r}, l)."""
    total = 0 * spec.point.q
    fact = math.factorial(spec.d)
    for parts in weak_compositions(spec.d, spec.r):
        total = total + fact * residue_summand_E(spec, parts)
    return total


def assemble_F(spec: IntegrandSpec):
    """Sum of ``d! * F`` over outside configurations; equals (-1)^d B_d(x, {r+1..n}, -l)."""
    total = 0 * spec.point.q
    fact = math.factorial(spec.d)
    for parts in weak_compositions(spec.d, spec.n - spec.r):
        total = total + fact * residue_summand_F(spec, parts)
    return total


def rho_window(point: ParameterPoint) -> tuple[float, float]:
    """Open interval of admissible contour radii."""
    mods = [abs(complex(v)) for v in point.x]
    return max(mods), min(mods) / abs(complex(point.q))


def default_rho(point: ParameterPoint) -> float:
    lo, hi = rho_window(point)
    return math.sqrt(lo * hi)


def contour_integral_numeric(spec: IntegrandSpec, cfg: ContourConfig) -> complex:
    """Trapezoid rule for the d-fold integral over ``|w_i| = rho`` (counter-clockwise).

    With ``w = rho e^{i theta}``, ``dw / (2 pi i) = w dtheta / (2 pi)``, so the
    integral is the grid mean of ``f(w) * prod(w)``.
    """
    q = complex(spec.point.q)
    if not abs(q) < 1:
        raise ContourError("need |q| < 1")
    if spec.d > MAX_NUMERIC_DEGREE:
        raise ContourError(f"numeric contour limited to d <= {MAX_NUMERIC_DEGREE} (cost N^d)")
    lo, hi = rho_window(spec.point)
    if not lo < cfg.rho < hi:
        raise ContourError(f"rho={cfg.rho} outside window ({lo}, {hi})")
    cpoint = ParameterPoint(
        q=q, x=tuple(complex(v) for v in spec.point.x), guard_depth=spec.point.guard_depth
    )
    cspec = IntegrandSpec(cpoint, spec.r, spec.d, spec.l)
    d, N = spec.d, cfg.grid_points
    if d == 0:
        return complex(integrand_f(cspec, []))
    nodes = cfg.rho * np.exp(2j * np.pi * np.arange(N) / N)
    if d <= 2:
        grids = np.meshgrid(*([nodes] * d), indexing="ij", sparse=True)
        vals = integrand_f(cspec, grids)
        for g in grids:
            vals = vals * g
        return complex(np.mean(vals))
    # d == 3: loop the outer variable to keep memory at N^2
    inner = np.meshgrid(nodes, nodes, indexing="ij", sparse=True)
    acc = 0j
    for w1 in nodes:
        vals = integrand_f(cspec, [w1, *inner]) * w1 * inner[0] * inner[1]
        acc += complex(np.sum(vals))
    return acc / N**3


def complex_point(q: complex, x: Sequence[complex]) -> ParameterPoint:
    return ParameterPoint(q=complex(q), x=tuple(complex(v) for v in x), guard_depth=len(x))


def relative_error(approx: complex, exact: complex) -> float:
    return abs(approx - exact) / abs(exact)

