"""
Exact and p-adic arithmetic.

Rationals are `fractions.Fraction`. `Padic` holds a p-adic number to a
finite absolute precision; a zero value is kept as "zero modulo p^N"
so that precision propagates through cancelling sums.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import PrecisionError

__all__ = [
    "binomial",
    "binomial_negative",
    "valuation",
    "is_prime",
    "Padic",
    "padic_from_rational",
    "padic_add",
    "padic_mul",
    "padic_neg",
    "padic_inv",
    "RationalBackend",
    "PadicBackend",
    "is_exact_zero",
]


def binomial(m: int, k: int) -> int:
    "C(m,k), zero outside 0 <= k <= m"
    if k < 0 or k > m or m < 0:
        return 0
    return math.comb(m, k)


def binomial_negative(n: int, k: int) -> int:
    "coefficient of X^k in (1+X)^-n"
    if n < 1 or k < 0:
        raise ValueError(f"binomial_negative({n},{k})")
    c = math.comb(n + k - 1, k)
    return -c if k & 1 else c


def valuation(x: int | Fraction, p: int) -> int:
    """
    The exponent of @p in the nonzero rational @x.
    """
    x = Fraction(x)
    if not x:
        raise ValueError("valuation of zero")
    return _ival(x.numerator, p) - _ival(x.denominator, p)


def _ival(n: int, p: int) -> int:
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


@lru_cache
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Padic:
    """
    A p-adic number ``p^valuation * unit``, known modulo ``p^absprec``.

    ``unit`` is reduced modulo ``p^relprec`` and prime to p. Zero has
    ``unit == relprec == 0``; its valuation is its absolute precision.

    Two values are equal when they agree modulo the smaller of their
    absolute precisions, so equality is not transitive and instances
    are not hashable.
    """

    __slots__ = ("prime", "valuation", "unit", "relprec")

    def __init__(self, prime: int, valuation: int, unit: int, relprec: int):
        self.prime = prime
        self.valuation = valuation
        self.unit = unit
        self.relprec = relprec

    @classmethod
    def _make(cls, p: int, v: int, u: int, rel: int) -> Padic:
        "normalize ``p^v * u`` known to absolute precision v+rel"
        absprec = v + rel
        if rel <= 0:
            return cls.zero(p, absprec)
        mod = p**rel
        u %= mod
        if u == 0:
            return cls.zero(p, absprec)
        k = _ival(u, p)
        if k:
            u //= p**k
            v += k
            rel -= k
        return cls(p, v, u % p**rel, rel)

    @classmethod
    def zero(cls, p: int, absprec: int) -> Padic:
        return cls(p, absprec, 0, 0)

    @property
    def absprec(self) -> int:
        return self.valuation + self.relprec

    def is_zero(self) -> bool:
        "zero within the known precision"
        return self.relprec == 0

    def __bool__(self):
        return not self.is_zero()

    def digits(self) -> list[int]:
        "little-endian base-p digits of the unit"
        res = []
        u = self.unit
        for _ in range(self.relprec):
            u, r = divmod(u, self.prime)
            res.append(r)
        return res

    def with_precision(self, absprec: int) -> Padic:
        "reduce to absolute precision @absprec; never gains precision"
        if absprec >= self.absprec:
            return self
        return Padic._make(self.prime, self.valuation, self.unit, absprec - self.valuation)

    def to_fraction(self) -> Fraction:
        "the rational representative with unit in [0, p^relprec)"
        if self.is_zero():
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.prime) ** self.valuation

    def _coerce(self, other, absprec: int) -> Padic:
        if isinstance(other, Padic):
            if other.prime != self.prime:
                raise ValueError(f"prime mismatch: {self.prime} vs {other.prime}")
            return other
        if isinstance(other, (int, Fraction)):
            return padic_from_rational(other, self.prime, absprec)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other, self.absprec)
        if other is NotImplemented:
            return other
        return padic_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other, self.absprec)
        if other is NotImplemented:
            return other
        return padic_add(self, padic_neg(other))

    def __rsub__(self, other):
        other = self._coerce(other, self.absprec)
        if other is NotImplemented:
            return other
        return padic_add(other, padic_neg(self))

    def __neg__(self):
        return padic_neg(self)

    def __mul__(self, other):
        if isinstance(other, int) and other:
            # fast path: integers are exact
            p = self.prime
            if self.is_zero():
                return Padic.zero(p, self.valuation + _ival(other, p))
            k = _ival(other, p)
            return Padic._make(p, self.valuation + k, self.unit * (other // p**k), self.relprec)
        if isinstance(other, (int, Fraction)):
            if not other:
                return Padic.zero(self.prime, self.absprec)
            other = self._coerce(other, valuation(other, self.prime) + max(self.relprec, 1))
        elif not isinstance(other, Padic):
            return NotImplemented
        return padic_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if not isinstance(other, Padic):
            return NotImplemented
        return padic_mul(self, padic_inv(other))

    def __rtruediv__(self, other):
        return padic_inv(self) * other

    def __pow__(self, n: int):
        if n < 0:
            return padic_inv(self) ** (-n)
        res = padic_from_rational(1, self.prime, self.relprec or 1)
        for _ in range(n):
            res = padic_mul(res, self)
        return res

    def __eq__(self, other):
        other = self._coerce(other, self.absprec)
        if other is NotImplemented:
            return other
        return padic_add(self, padic_neg(other)).is_zero()

    __hash__ = None

    def __repr__(self):
        if self.is_zero():
            return f"Padic({self.prime}, 0, prec={self.absprec})"
        p = self.prime
        return f"Padic({p}, {self.unit}*{p}^{self.valuation}, prec={self.absprec})"

    def __str__(self):
        p = self.prime
        if self.is_zero():
            return f"O({p}^{self.absprec})"
        terms = [
            f"{d}*{p}^{i + self.valuation}" for i, d in enumerate(self.digits()) if d
        ]
        return " + ".join(terms) + f" + O({p}^{self.absprec})"


def padic_from_rational(x: int | Fraction, p: int, absprec: int) -> Padic:
    """
    The image of @x in Q_p, known to at least absolute precision @absprec.

    Nonzero values keep at least one significant digit even when their
    valuation exceeds @absprec.
    """
    x = Fraction(x)
    if not x:
        return Padic.zero(p, absprec)
    vn = _ival(x.numerator, p)
    vd = _ival(x.denominator, p)
    v = vn - vd
    rel = max(absprec - v, 1)
    mod = p**rel
    num = x.numerator // p**vn
    den = x.denominator // p**vd
    return Padic(p, v, num * pow(den, -1, mod) % mod, rel)


def padic_add(x: Padic, y: Padic) -> Padic:
    "the sum; absolute precision is the smaller one"
    p = x.prime
    absprec = min(x.absprec, y.absprec)
    v = min(x.valuation, y.valuation)
    u = x.unit * p ** (x.valuation - v) + y.unit * p ** (y.valuation - v)
    return Padic._make(p, v, u, absprec - v)


def padic_mul(x: Padic, y: Padic) -> Padic:
    "the product; relative precision is the smaller one"
    p = x.prime
    if x.is_zero() or y.is_zero():
        return Padic.zero(p, x.valuation + y.valuation)
    return Padic._make(
        p, x.valuation + y.valuation, x.unit * y.unit, min(x.relprec, y.relprec)
    )


def padic_neg(x: Padic) -> Padic:
    if x.is_zero():
        return x
    return Padic(x.prime, x.valuation, (-x.unit) % x.prime**x.relprec, x.relprec)


def padic_inv(x: Padic) -> Padic:
    if x.is_zero():
        raise PrecisionError(f"cannot invert {x!r}: indistinguishable from zero")
    mod = x.prime**x.relprec
    return Padic(x.prime, -x.valuation, pow(x.unit, -1, mod), x.relprec)


def is_exact_zero(x) -> bool:
    "true for exact (int or Fraction) zeroes only"
    return isinstance(x, (int, Fraction)) and not x


@dataclass(frozen=True)
class RationalBackend:
    """
    Exact rational coefficients. Calling the backend coerces a value.
    """

    name = "rational"

    def __call__(self, x):
        if isinstance(x, Padic):
            raise TypeError("cannot coerce a p-adic value to a rational")
        return Fraction(x)


@dataclass(frozen=True)
class PadicBackend:
    """
    p-adic coefficients at a fixed absolute working precision.
    """

    prime: int
    precision: int

    name = "padic"

    def __post_init__(self):
        if not is_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime")

    def __call__(self, x):
        if isinstance(x, Padic):
            return x
        return padic_from_rational(x, self.prime, self.precision)
