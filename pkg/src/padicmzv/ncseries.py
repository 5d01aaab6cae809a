"""
Truncated noncommutative series in e0, e1.

An `NcSeries` maps words of length <= its weight cap to coefficients;
missing words have coefficient zero. Coefficients may be rationals,
`Padic` values or `ZSeries`. Products truncate at the weight cap.
"""
from __future__ import annotations

import logging
from fractions import Fraction

from . import NotGrouplikeError, SubstitutionError
from .arith import Padic, is_exact_zero
from .words import Word, contract, enumerate_e1_segments, shuffle, swap_letters, words_up_to
from .zseries import ZSeries, series_power_over_factorial

logger = logging.getLogger(__name__)

__all__ = [
    "NcSeries",
    "nc_mul",
    "grouplike_inverse",
    "is_grouplike",
    "substitute",
    "triangle_op",
]

DEFAULT_CAP = 6


class NcSeries:
    """
    A series ``sum_w P_w w`` over words of weight <= @cap.
    """

    __slots__ = ("cap", "coeffs")

    def __init__(self, coeffs: dict | None = None, cap: int = DEFAULT_CAP):
        self.cap = cap
        self.coeffs: dict[Word, object] = {}
        for w, c in (coeffs or {}).items():
            if len(w) <= cap and not is_exact_zero(c):
                self.coeffs[w] = c

    @classmethod
    def one(cls, cap: int = DEFAULT_CAP) -> NcSeries:
        return cls({"": 1}, cap)

    @classmethod
    def letter(cls, w: Word, cap: int = DEFAULT_CAP, c=1) -> NcSeries:
        return cls({w: c}, cap)

    def __getitem__(self, w: Word):
        return self.coeffs.get(w, 0)

    def __contains__(self, w: Word):
        return w in self.coeffs

    def items(self):
        return self.coeffs.items()

    def words(self):
        return self.coeffs.keys()

    def map(self, fn) -> NcSeries:
        "apply @fn to every stored coefficient"
        return NcSeries({w: fn(c) for w, c in self.coeffs.items()}, self.cap)

    def truncate(self, cap: int) -> NcSeries:
        return NcSeries(self.coeffs, min(cap, self.cap))

    def swapped(self) -> NcSeries:
        "the series with e0 and e1 exchanged"
        return NcSeries({swap_letters(w): c for w, c in self.coeffs.items()}, self.cap)

    def __add__(self, other: NcSeries) -> NcSeries:
        res = dict(self.coeffs)
        for w, c in other.coeffs.items():
            res[w] = res[w] + c if w in res else c
        return NcSeries(res, min(self.cap, other.cap))

    def __neg__(self):
        return self.map(lambda c: -c)

    def __sub__(self, other: NcSeries) -> NcSeries:
        return self + (-other)

    def scale(self, c) -> NcSeries:
        return NcSeries({w: v * c for w, v in self.coeffs.items()}, self.cap)

    def __mul__(self, other):
        if isinstance(other, NcSeries):
            return nc_mul(self, other)
        return NotImplemented

    def __repr__(self):
        return f"NcSeries({self.coeffs!r}, cap={self.cap})"


def _is_zero(x) -> bool:
    if is_exact_zero(x):
        return True
    if isinstance(x, (Padic, ZSeries)):
        return x == 0
    return False


def nc_mul(P: NcSeries, Q: NcSeries) -> NcSeries:
    "the concatenation product, truncated at the smaller cap"
    cap = min(P.cap, Q.cap)
    res: dict[Word, object] = {}
    qs = sorted(Q.coeffs.items(), key=lambda x: len(x[0]))
    for u, a in P.coeffs.items():
        room = cap - len(u)
        if room < 0:
            continue
        for v, b in qs:
            if len(v) > room:
                break
            w = u + v
            x = a * b
            res[w] = res[w] + x if w in res else x
    return NcSeries(res, cap)


def grouplike_inverse(P: NcSeries) -> NcSeries:
    """
    The inverse of a group-like series, ``sum_w (-1)^wt(w) P_w w^rev``.

    Only ``P_∅ = 1`` is checked; use `is_grouplike` for the rest.
    """
    if not P[""] == 1:
        raise NotGrouplikeError(f"constant coefficient is {P['']!r}, not 1")
    return NcSeries(
        {w[::-1]: (-c if len(w) & 1 else c) for w, c in P.coeffs.items()}, P.cap
    )


def _agree(a, b, precision: int | None) -> bool:
    d = a - b
    if isinstance(d, Padic):
        if precision is None:
            return d.is_zero()
        return d.is_zero() or d.valuation >= precision
    return d == 0


def is_grouplike(
    P: NcSeries, precision: int | None = None
) -> tuple[bool, tuple[Word, Word] | None]:
    """
    Check the shuffle equation ``P_{u ш v} = P_u P_v``.

    p-adic coefficients are compared within their precision, or modulo
    ``p^precision`` if that is given. Returns ``(True, None)`` or
    ``(False, (u, v))`` with the first violating pair.
    """
    if not _agree(P[""], 1, precision):
        return False, ("", "")
    words = [w for w in words_up_to(P.cap) if w]
    for i, u in enumerate(words):
        for v in words[i:]:
            if len(u) + len(v) > P.cap:
                continue
            lhs = 0
            for w, n in shuffle(u, v).items():
                c = P[w]
                if not is_exact_zero(c):
                    lhs = lhs + c * n
            if not _agree(lhs, P[u] * P[v], precision):
                logger.debug("not group-like at %r, %r", u, v)
                return False, (u, v)
    return True, None


def substitute(A: NcSeries, B: NcSeries) -> NcSeries:
    """
    ``A(e0, B)``: replace every e1 in A by the series B.

    Needs ``A_{e0^n} = 0`` for n >= 1 and ``B_{e0^n} = 0`` for n >= 0. The
    coefficient at a word w of positive depth is the sum, over all
    e1-segment decompositions of w, of the product of B at the segments
    times A at the contracted word.
    """
    cap = min(A.cap, B.cap)
    for n in range(cap + 1):
        if n and not _is_zero(A["0" * n]):
            raise SubstitutionError(f"A has a nonzero coefficient at e0^{n}")
        if not _is_zero(B["0" * n]):
            raise SubstitutionError(f"B has a nonzero coefficient at e0^{n}")
    res: dict[Word, object] = {"": A[""]}
    for w in words_up_to(cap):
        if "1" not in w:
            continue
        total = 0
        for segs in enumerate_e1_segments(w):
            a = A[contract(w, segs)]
            if is_exact_zero(a):
                continue
            for s, t in segs:
                b = B[w[s:t]]
                if is_exact_zero(b):
                    break
                a = b * a
            else:
                total = total + a
        res[w] = total
    return NcSeries(res, cap)


def triangle_op(
    P: NcSeries, L: NcSeries, L1: ZSeries, p: int, order: int | None = None
) -> NcSeries:
    """
    The three-factor product

        L(z/(z-1)) · exp(L1(z) e0) · Lp^{-1}(e0, P^{-1} e1 P)

    where ``Lp`` is L with every word-coefficient evaluated at
    ``z^p/(z^p-1)`` and scaled by ``p^-wt(w)``.

    Coefficients of @L are `ZSeries`. @L must be regularised
    (``L_∅ = 1``, ``L_{e0^n} = 0``), @L1 must vanish at 0, and @P must be
    group-like.
    """
    cap = min(P.cap, L.cap)
    if order is None:
        order = L1.order
    if not L[""] == 1:
        raise NotGrouplikeError("L must have constant coefficient 1")
    if L1[0] != 0:
        raise ValueError("L1 must vanish at 0")
    ok, witness = is_grouplike(P)
    if not ok:
        raise NotGrouplikeError(f"P fails the shuffle equation at {witness!r}")

    L = L.map(lambda c: c if isinstance(c, ZSeries) else ZSeries.constant(c, order))
    X = L.map(ZSeries.moebius)
    Y = NcSeries({"0" * b: series_power_over_factorial(L1, b) for b in range(cap + 1)}, cap)
    Lf = L.map(lambda s: s.frobenius_moebius(p, order))
    A = NcSeries({w: s * Fraction(1, p ** len(w)) for w, s in Lf.items()}, cap)
    B = nc_mul(nc_mul(grouplike_inverse(P), NcSeries.letter("1", cap)), P)
    Z = substitute(grouplike_inverse(A), B)
    return nc_mul(nc_mul(X, Y), Z)
