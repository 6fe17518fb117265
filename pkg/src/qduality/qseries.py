"""q-Pochhammer symbols with integer subscripts of either sign."""
from __future__ import annotations

from .fields import field_pow, one_like


class PoleError(ZeroDivisionError):
    """A q-Pochhammer factor ``1 - q^k a`` vanished."""

    def __init__(self, a, q, k: int, where: str = "qpochhammer"):
        self.a, self.q, self.k = a, q, k
        super().__init__(f"{where}: factor 1 - q^{k}*a vanishes (a={a}, q={q})")


def qpochhammer(a, q, d: int):
    """``(a; q)_d`` with the three-case convention.

    d > 0: ``(1-a)(1-qa)...(1-q^{d-1}a)``; d = 0: 1;
    d < 0: ``1 / ((1-q^{-1}a)...(1-q^{d}a))``.
    """
    if q == 0:
        raise ValueError("q must be nonzero")
    one = one_like(a)
    if d == 0:
        return one
    prod = one
    if d > 0:
        term = a
        for k in range(d):
            factor = 1 - term
            if factor == 0:
                raise PoleError(a, q, k)
            prod = prod * factor
            term = term * q
        return prod
    qinv = 1 / q
    term = a * qinv
    for k in range(1, -d + 1):
        factor = 1 - term
        if factor == 0:
            raise PoleError(a, q, -k)
        prod = prod * factor
        term = term * qinv
    return 1 / prod


def qfactorial(q, d: int):
    """``(q; q)_d`` for ``d >= 0``."""
    if d < 0:
        raise ValueError("qfactorial needs d >= 0")
    return qpochhammer(q, q, d)


def level_weight_A(x, q, d: int, l: int):
    """``(x^d q^{d(d-1)/2})^l``, the per-index level monomial of A_d."""
    return field_pow(x, d * l) * field_pow(q, l * (d * (d - 1) // 2))


def level_weight_B(x, q, d: int, l: int):
    """``(x^{-d} q^{d(d+1)/2})^l``, the per-index level monomial of B_d."""
    return field_pow(x, -d * l) * field_pow(q, l * (d * (d + 1) // 2))
