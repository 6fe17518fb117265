"""Exact scalar fields and generic evaluation points.

Two backends are provided: arbitrary-precision rationals (``fractions.Fraction``)
and integers modulo a fixed prime (:class:`ModInt`).  All formula code in the
package is written against plain arithmetic operators, so the same functions
also run on Python ``complex`` values (used by the contour oracle).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

# largest prime below 2**61 (a Mersenne prime)
FP61 = 2**61 - 1

RATIONAL_BOUND = 1000
MAX_ATTEMPTS = 2000


class FieldDomainError(ArithmeticError):
    """Raised for undefined field operations such as ``0 ** -1``."""


class FieldTooSmallError(ValueError):
    """The chosen field cannot host a point satisfying the pole guards."""


class ModInt:
    """Residue class modulo a prime ``p``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModInt):
            if other.p != self.p:
                raise ValueError(f"modulus mismatch: {self.p} vs {other.p}")
            return other.v
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise FieldDomainError(f"{other} has no image mod {self.p}")
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return NotImplemented

    def __add__(self, other):
        if other.__class__ is ModInt and other.p == self.p:
            return ModInt(self.v + other.v, self.p)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        if other.__class__ is ModInt and other.p == self.p:
            return ModInt(self.v - other.v, self.p)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt(o - self.v, self.p)

    def __mul__(self, other):
        if other.__class__ is ModInt and other.p == self.p:
            return ModInt(self.v * other.v, self.p)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt(self.v * o, self.p)

    __rmul__ = __mul__

    def inverse(self) -> "ModInt":
        if self.v == 0:
            raise FieldDomainError(f"0 has no inverse mod {self.p}")
        return ModInt(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionError(f"division by zero mod {self.p}")
        return ModInt(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt(o, self.p) / self

    def __neg__(self):
        return ModInt(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if k < 0:
            return pow(self.inverse(), -k)
        return ModInt(pow(self.v, k, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.v == o

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"ModInt({self.v}, {self.p})"

    def __str__(self):
        return f"{self.v} (mod {self.p})"


class RationalField:
    name = "rational"

    def element(self, v) -> Fraction:
        return Fraction(v)

    def random_element(self, rng: random.Random) -> Fraction:
        num = 0
        while num == 0:
            num = rng.randint(-RATIONAL_BOUND, RATIONAL_BOUND)
        return Fraction(num, rng.randint(1, RATIONAL_BOUND))

    def format(self, a) -> str:
        a = Fraction(a)
        return f"{a.numerator}/{a.denominator}"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return "RationalField()"


class PrimeField:
    def __init__(self, p: int = FP61):
        if p < 2 or not _is_probable_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p
        self.name = "fp61" if p == FP61 else f"fp:{p}"

    def element(self, v) -> ModInt:
        if isinstance(v, ModInt):
            return ModInt(v.v, self.p)
        return ModInt(0, self.p) + v

    def random_element(self, rng: random.Random) -> ModInt:
        return ModInt(rng.randrange(1, self.p), self.p)

    def format(self, a) -> str:
        return f"{self.element(a).v} mod {self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(self.p)

    def __repr__(self):
        return f"PrimeField({self.p})"


Field = Any  # RationalField | PrimeField


def _is_probable_prime(p: int) -> bool:
    if p < 4:
        return p in (2, 3)
    if p % 2 == 0:
        return False
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for p < 3.3e24
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if a % p == 0:
            continue
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def parse_field(selector: str | Field) -> Field:
    """Turn ``"rational"``, ``"fp61"`` or ``"fp:<prime>"`` into a field object."""
    if isinstance(selector, (RationalField, PrimeField)):
        return selector
    s = selector.strip().lower()
    if s in ("rational", "q", "rationals"):
        return RationalField()
    if s == "fp61":
        return PrimeField(FP61)
    if s.startswith("fp:"):
        return PrimeField(int(s[3:]))
    raise ValueError(f"unknown field selector {selector!r}")


def one_like(a):
    """The multiplicative identity of ``a``'s field (works on numpy arrays too)."""
    return a * 0 + 1


def field_pow(a, k: int):
    """``a**k`` by square-and-multiply; negative ``k`` inverts first."""
    if k < 0:
        if a == 0:
            raise FieldDomainError("zero base with negative exponent")
        a = 1 / a
        k = -k
    result = one_like(a)
    base = a
    while k:
        if k & 1:
            result = result * base
        base = base * base
        k >>= 1
    return result


@dataclass(frozen=True)
class ParameterPoint:
    """Values of ``q`` and ``x_1..x_n`` (1-based via :meth:`xi`)."""

    q: Any
    x: tuple
    guard_depth: int
    field: Field = None

    @property
    def n(self) -> int:
        return len(self.x)

    def xi(self, i: int):
        return self.x[i - 1]

    def ratio(self, i: int, j: int):
        return self.x[i - 1] / self.x[j - 1]

    def violations(self) -> list[str]:
        """Guard failures at depth ``guard_depth``; empty when the point is valid."""
        K = self.guard_depth
        out = []
        if self.q == 0:
            return ["q == 0"]
        powers = {}
        qk = one_like(self.q)
        for k in range(1, K + 1):
            qk = qk * self.q
            if qk == 1:
                out.append(f"q^{k} == 1")
        for i, xi in enumerate(self.x, 1):
            if xi == 0:
                out.append(f"x_{i} == 0")
        if out:
            return out
        for k in range(-K, K + 1):
            powers[k] = field_pow(self.q, k)
        for i in range(1, self.n + 1):
            for j in range(1, self.n + 1):
                if i == j:
                    continue
                rij = self.ratio(i, j)
                for k, qk in powers.items():
                    if rij == qk:
                        out.append(f"x_{i}/x_{j} == q^{k}")
        return out

    def is_valid(self) -> bool:
        return not self.violations()

    def format(self) -> dict:
        fmt = self.field.format if self.field is not None else str
        return {"q": fmt(self.q), "x": [fmt(v) for v in self.x]}


def sample_parameter_point(
    n: int, guard_depth: int, seed: int, field: str | Field = "rational"
) -> ParameterPoint:
    """Draw a deterministic point avoiding ``x_i/x_j = q^k`` for ``|k| <= guard_depth``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if guard_depth < 1:
        raise ValueError("guard_depth must be positive")
    F = parse_field(field)
    if isinstance(F, PrimeField) and F.p <= 2 * guard_depth + 1:
        raise FieldTooSmallError(
            f"F_{F.p} cannot separate ratios from q^k, |k| <= {guard_depth}"
        )
    rng = random.Random(seed)
    K = guard_depth

    for _ in range(MAX_ATTEMPTS):
        q = F.random_element(rng)
        qk, ok = one_like(q), True
        for _k in range(K):
            qk = qk * q
            if qk == 1:
                ok = False
                break
        if ok:
            break
    else:
        raise FieldTooSmallError(f"no q of multiplicative order > {K} found in {F.name}")

    forbidden = {field_pow(q, k) for k in range(-K, K + 1)}
    xs: list = []
    for _i in range(n):
        for _ in range(MAX_ATTEMPTS):
            c = F.random_element(rng)
            if all(c / xj not in forbidden for xj in xs):
                xs.append(c)
                break
        else:
            raise FieldTooSmallError(
                f"could not place {n} coordinates with guard depth {K} in {F.name}"
            )
    return ParameterPoint(q=q, x=tuple(xs), guard_depth=K, field=F)


def make_point(q, x: Sequence, guard_depth: int | None = None, field=None) -> ParameterPoint:
    """Build a point from explicit values (e.g. complex floats); no guard checking."""
    return ParameterPoint(q=q, x=tuple(x), guard_depth=guard_depth or len(x), field=field)
