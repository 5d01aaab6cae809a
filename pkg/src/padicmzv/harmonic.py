"""
Multiple harmonic sums and binomial multiple harmonic sums.

``h_{n_1..n_d}(m)`` sums ``1/(m_1^{n_1} ⋯ m_d^{n_d})`` over
``0 < m_1 < ⋯ < m_d < m``. The binomial variant ``h^B_w(m)`` is the
coefficient of z^m in ``Li_w(z/(z-1))``.

Tables are cached per (word, backend) and recomputed when a larger bound
is requested.
"""
from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import RationalBackend
from .words import Word, e0_tail_expansion, index_to_word, word_to_index
from .zseries import ZSeries, mobius_transform

logger = logging.getLogger(__name__)

__all__ = [
    "mhs",
    "mhs_table",
    "bmhs",
    "bmhs_word",
    "BmhsTable",
    "bmhs_table",
    "reciprocal_check",
    "polylog_series",
    "clear_caches",
]

_rational = RationalBackend()


def mhs(idx: Sequence[int], m: int) -> Fraction:
    "h_idx(m); the empty index gives 1"
    return mhs_table(tuple(idx), m)[m]


_mhs_cache: dict = {}


def mhs_table(idx: tuple[int, ...], bound: int, backend=_rational) -> list:
    """
    ``[h_idx(0), …, h_idx(bound)]`` in @backend.
    """
    key = (idx, backend)
    res = _mhs_cache.get(key)
    if res is not None and len(res) > bound:
        return res
    if not idx:
        res = [1] * (bound + 1)
    else:
        prev = mhs_table(idx[:-1], bound, backend)
        inv = _reciprocal_powers(idx[-1], bound, backend)
        res = [0] * (bound + 1)
        for m in range(2, bound + 1):
            res[m] = res[m - 1] + prev[m - 1] * inv[m - 1]
    _mhs_cache[key] = res
    return res


_recip_cache: dict = {}


def _reciprocal_powers(n: int, bound: int, backend) -> list:
    "``[0, 1/1^n, 1/2^n, …]`` in @backend"
    key = (n, backend)
    res = _recip_cache.get(key)
    if res is None or len(res) <= bound:
        res = [0] + [backend(Fraction(1, k**n)) for k in range(1, bound + 1)]
        _recip_cache[key] = res
    return res


@dataclass
class BmhsTable:
    """
    The values ``h^B_word(0…bound)`` in one backend.
    """

    word: Word
    backend: object
    values: list = field(repr=False)

    @property
    def bound(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, m: int):
        return self.values[m]


_bmhs_cache: dict = {}


def bmhs_table(w: Word, bound: int, backend=_rational) -> BmhsTable:
    """
    The table of ``h^B_w(m)`` for m = 0…@bound, possibly longer.

    Depth-0 words use exact integers: the empty word is 1 at 0, every
    other e0-power vanishes.
    """
    key = (w, backend)
    tab = _bmhs_cache.get(key)
    if tab is not None and tab.bound >= bound:
        return tab

    if "1" not in w:
        vals = [0] * (bound + 1)
        if not w:
            vals[0] = 1
    elif w[-1] == "1":
        idx = word_to_index(w)
        head = mhs_table(idx[:-1], bound, backend)
        inv = _reciprocal_powers(idx[-1], bound, backend)
        seq = [0] + [head[k] * inv[k] for k in range(1, bound + 1)]
        vals = mobius_transform(seq)
    else:
        vals = [0] * (bound + 1)
        for c, iw in e0_tail_expansion(w):
            sub = bmhs_table(iw, bound, backend).values
            for m in range(1, bound + 1):
                vals[m] = vals[m] + c * sub[m]
    logger.debug("bmhs %r to %d (%s)", w, bound, backend)
    tab = BmhsTable(w, backend, vals)
    _bmhs_cache[key] = tab
    return tab


def clear_caches() -> None:
    "drop the harmonic sum tables of all words and backends"
    _mhs_cache.clear()
    _recip_cache.clear()
    _bmhs_cache.clear()


def bmhs(idx: Sequence[int], m: int, backend=_rational):
    "h^B_idx(m)"
    return bmhs_table(index_to_word(tuple(idx)), m, backend)[m]


def bmhs_word(w: Word, m: int, backend=_rational):
    "h^B_w(m) for any word"
    return bmhs_table(w, m, backend)[m]


def reciprocal_check(idx: Sequence[int], m: int) -> bool:
    """
    Check that transforming ``h^B_idx`` back reproduces
    ``h_{n_1..n_{d-1}}(m) / m^{n_d}``.
    """
    if m < 1:
        raise ValueError("m must be positive")
    idx = tuple(idx)
    hb = bmhs_table(index_to_word(idx), m).values[: m + 1]
    back = mobius_transform(hb)
    return back[m] == mhs(idx[:-1], m) / Fraction(m) ** idx[-1]


def polylog_series(w: Word, order: int) -> ZSeries:
    """
    The expansion of ``Li_w(z)`` at 0, to @order.

    Index words give ``sum_m h_{n_1..n_{d-1}}(m)/m^{n_d} z^m``; e0-terminated
    words use the regularisation ``Li_{e0} = 0``.
    """
    if "1" not in w:
        return ZSeries.constant(0 if w else 1, order)
    if w[-1] == "0":
        res = ZSeries.constant(0, order)
        for c, iw in e0_tail_expansion(w):
            res = res + polylog_series(iw, order) * c
        return res
    idx = word_to_index(w)
    head = mhs_table(idx[:-1], order)
    return ZSeries([0] + [head[m] / Fraction(m) ** idx[-1] for m in range(1, order + 1)])


