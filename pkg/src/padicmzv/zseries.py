"""
Truncated power series in one commuting variable z.

Coefficients are anything that supports ring arithmetic with ints:
Fractions, `Padic` values, or a mix. A series of order M knows
c_0 … c_M; products and sums truncate to the smaller order.
"""
from __future__ import annotations

from collections.abc import Iterable, Sequence
from fractions import Fraction
from math import factorial

from .arith import is_exact_zero

__all__ = [
    "ZSeries",
    "mobius_transform",
    "frobenius_mobius_transform",
    "li1p_series",
    "series_power_over_factorial",
    "series_mul",
    "series_add",
]


class ZSeries:
    """
    A power series ``c_0 + c_1 z + ⋯ + c_M z^M + O(z^{M+1})``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        self.coeffs = tuple(coeffs)
        if not self.coeffs:
            raise ValueError("a series needs at least its constant term")

    @classmethod
    def constant(cls, c, order: int) -> ZSeries:
        return cls((c,) + (0,) * order)

    @classmethod
    def monomial(cls, n: int, order: int, c=1) -> ZSeries:
        co = [0] * (order + 1)
        if n <= order:
            co[n] = c
        return cls(co)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int):
        if n < 0:
            return 0
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> ZSeries:
        return ZSeries(self.coeffs[: order + 1])

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other):
        if isinstance(other, ZSeries):
            return series_add(self, other)
        return ZSeries((self.coeffs[0] + other,) + self.coeffs[1:])

    __radd__ = __add__

    def __neg__(self):
        return ZSeries(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, ZSeries):
            return series_mul(self, other)
        if is_exact_zero(other):
            return ZSeries((0,) * len(self.coeffs))
        return ZSeries(c * other for c in self.coeffs)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, ZSeries):
            n = min(len(self.coeffs), len(other.coeffs))
            return all(a == b for a, b in zip(self.coeffs[:n], other.coeffs[:n]))
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and all(c == 0 for c in self.coeffs[1:])
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        return f"ZSeries({list(self.coeffs)!r})"

    def moebius(self) -> ZSeries:
        "f(z/(z-1)); the constant term is kept"
        res = mobius_transform(self.coeffs)
        res[0] = self.coeffs[0]
        return ZSeries(res)

    def frobenius_moebius(self, p: int, order: int | None = None) -> ZSeries:
        "f(z^p/(z^p-1)), to @order (default: this series' order)"
        if order is None:
            order = self.order
        res = frobenius_mobius_transform(self.coeffs, p, order)
        res[0] = self.coeffs[0]
        return ZSeries(res)


def series_add(s: ZSeries, t: ZSeries) -> ZSeries:
    n = min(len(s.coeffs), len(t.coeffs))
    return ZSeries(a + b for a, b in zip(s.coeffs[:n], t.coeffs[:n]))


def series_mul(s: ZSeries, t: ZSeries) -> ZSeries:
    "Cauchy product, truncated to the smaller order"
    n = min(len(s.coeffs), len(t.coeffs))
    res = [0] * n
    for i, a in enumerate(s.coeffs[:n]):
        if is_exact_zero(a):
            continue
        for j, b in enumerate(t.coeffs[: n - i]):
            if is_exact_zero(b):
                continue
            res[i + j] = res[i + j] + a * b
    return ZSeries(res)


def mobius_transform(a: Sequence, literal: bool = False) -> list:
    """
    Coefficients of ``sum_k a_k (z/(z-1))^k``, for k >= 1.

    ``b_n = sum_{k=1}^n (-1)^k a_k C(n-1, k-1)``; ``a_0`` is ignored and
    ``b_0`` is zero. With @literal, the sign is ``(-1)^n`` outside the
    sum instead; that variant does not describe the substitution and
    exists for demonstration only.
    """
    m = len(a) - 1
    b = [0] * (m + 1)
    if literal:
        sa = list(a)
    else:
        sa = [-x if k & 1 else x for k, x in enumerate(a)]
    row = [1]  # C(n-1, ·)
    for n in range(1, m + 1):
        acc = 0
        for k in range(1, n + 1):
            x = sa[k]
            if is_exact_zero(x):
                continue
            acc = acc + x * row[k - 1]
        if literal and n & 1:
            acc = -acc
        b[n] = acc
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]
    return b


def frobenius_mobius_transform(a: Sequence, p: int, order: int | None = None) -> list:
    """
    Coefficients of ``sum_k a_k (z^p/(z^p-1))^k`` up to @order.

    Only multiples of @p are nonzero: entry ``p*n`` is entry n of
    `mobius_transform`.
    """
    if order is None:
        order = len(a) - 1
    base = mobius_transform(a[: order // p + 1])
    res = [0] * (order + 1)
    for n, x in enumerate(base):
        res[p * n] = x
    return res


def li1p_series(order: int, p: int) -> ZSeries:
    "sum of z^n/n over n prime to @p"
    return ZSeries([0] + [0 if n % p == 0 else Fraction(1, n) for n in range(1, order + 1)])


def series_power_over_factorial(s: ZSeries, b: int) -> ZSeries:
    "s^b / b!, for s without constant term"
    if s.coeffs[0] != 0:
        raise ValueError("series must have zero constant term")
    res = ZSeries.constant(1, s.order)
    for _ in range(b):
        res = series_mul(res, s)
    if b > 1:
        res = res * Fraction(1, factorial(b))
    return res
