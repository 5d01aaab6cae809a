"""
Tables of p-adic multiple zeta values, the associator rebuilt from them,
and adjoint values.

The associator Φ has ``Φ_∅ = 1``, vanishes on e0^n (n >= 1), and at the
index word of (n_1,…,n_d) equals ``(-1)^d ζ(n_1,…,n_d)``.
Coefficients at e0-terminated words follow from the e0-shuffle relation.
"""
from __future__ import annotations

import logging
import warnings
from contextlib import contextmanager

from . import MissingEntryError, WordError, cur_table
from .arith import Padic, PadicBackend, RationalBackend, binomial_negative, is_exact_zero
from .arith import padic_from_rational
from .ncseries import NcSeries, grouplike_inverse, nc_mul
from .words import Index, Word, depth, e0_tail_expansion, weak_compositions, word_to_index
from .words import words_up_to

logger = logging.getLogger(__name__)

__all__ = [
    "MzvTable",
    "phi_coefficient",
    "phi_from_table",
    "zeta_word",
    "adjoint_mzv",
    "adjoint_mzv_via_conjugation",
]


class MzvTable:
    """
    Known values ζ(index), for one prime, added depth by depth.

    Reads can be logged (see `logging_reads`) to check which entries a
    computation depends on.
    """

    sign: str = "derived"

    def __init__(self, prime: int, precision: int | None):
        self.prime = prime
        self.precision = precision
        self.entries: dict[Index, object] = {}
        self.reports: dict[Index, object] = {}
        self.reads: list[Index] | None = None
        self._adjoint: dict[Word, object] = {}
        self.phi: NcSeries | None = None

    @property
    def backend(self):
        "exact rationals if there is no working precision"
        if self.precision is None:
            return RationalBackend()
        return PadicBackend(self.prime, self.precision)

    def zeta(self, idx: Index):
        """returns ζ(idx)"""
        idx = tuple(idx)
        if self.reads is not None:
            self.reads.append(idx)
        try:
            return self.entries[idx]
        except KeyError:
            raise MissingEntryError(idx) from None

    def padic(self, idx: Index) -> Padic:
        "ζ(idx) as a p-adic number; exact entries get the table precision"
        value = self.zeta(idx)
        if isinstance(value, Padic):
            return value
        if self.precision is None:
            raise ValueError("a table without working precision has no p-adic view")
        return padic_from_rational(value, self.prime, self.precision)

    def add(self, idx: Index, value, report=None) -> None:
        """
        Add an entry.

        Warns if the entry already exists.
        """
        idx = tuple(idx)
        if idx in self.entries:
            warnings.warn(f"Dup assignment of zeta{idx!r}")
            return
        self.entries[idx] = value if is_exact_zero(value) else self.backend(value)
        if report is not None:
            self.reports[idx] = report
        self._adjoint.clear()

    def copy(self) -> MzvTable:
        res = MzvTable(self.prime, self.precision)
        res.entries.update(self.entries)
        res.reports.update(self.reports)
        res.sign = self.sign
        res.phi = self.phi
        return res

    def __contains__(self, idx):
        return tuple(idx) in self.entries

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(sorted(self.entries, key=lambda i: (len(i), sum(i), i)))

    def items(self):
        for idx in self:
            yield idx, self.entries[idx]

    @property
    def max_depth(self) -> int:
        return max((len(i) for i in self.entries), default=0)

    @property
    def max_weight(self) -> int:
        return max((sum(i) for i in self.entries), default=0)

    @contextmanager
    def activated(self):
        "make this the table that `padicmzv.cur_table` returns"
        token = cur_table.set(self)
        try:
            yield self
        finally:
            cur_table.reset(token)

    @contextmanager
    def logging_reads(self):
        "collect the indices read within the block"
        old, self.reads = self.reads, []
        try:
            yield self.reads
        finally:
            self.reads = old


def phi_coefficient(table: MzvTable, w: Word):
    "Φ_w from the table"
    if "1" not in w:
        return 0 if w else 1
    total = 0
    for c, iw in e0_tail_expansion(w):
        idx = word_to_index(iw)
        z = table.zeta(idx)
        total = total + (c if len(idx) % 2 == 0 else -c) * z
    return total


def phi_from_table(table: MzvTable, cap: int, only=None) -> NcSeries:
    """
    Rebuild Φ up to weight @cap.

    If @only is given, only those words are filled in; the result is
    then exact at every word whose factors all lie in @only.
    """
    res = {"": 1}
    for w in words_up_to(cap) if only is None else only:
        if len(w) > cap or "1" not in w:
            continue
        res[w] = phi_coefficient(table, w)
    return NcSeries(res, cap)


def zeta_word(w: Word, table: MzvTable):
    "(-1)^dp(w) Φ_w, which is ζ(idx) for the index word of idx"
    if "1" not in w:
        raise WordError(f"{w!r} has depth 0")
    total = 0
    for c, iw in e0_tail_expansion(w):
        total = total + c * table.zeta(word_to_index(iw))
    return total


def _split(w: Word) -> tuple[int, Index, int]:
    "e0^b e1 (index word) e0^a -> (b, index, a)"
    core = w.lstrip("0")
    b = len(w) - len(core)
    rest = core[1:]
    mid = rest.rstrip("0")
    return b, (word_to_index(mid) if mid else ()), len(rest) - len(mid)


def adjoint_mzv(w: Word, table: MzvTable | None):
    """
    ``(-1)^{dp(w)-1} (Φ^{-1} e1 Φ)_w`` from the closed formula.

    Only entries of depth < dp(w) are read. Depth-0 and depth-1 words
    give exact integers and do not touch the table.
    """
    dp = depth(w)
    if dp == 0:
        return 0
    b, idx, a = _split(w)
    if dp == 1:
        return 1 if a == 0 and b == 0 else 0
    if table is None:
        raise MissingEntryError(idx)
    try:
        return table._adjoint[w]
    except KeyError:
        pass

    zeta = table.zeta
    d = len(idx)
    total = 0

    def weight(ks, ns):
        c = 1
        for n, k in zip(ns, ks):
            c *= binomial_negative(n, k)
        return c

    for dd in range(1, d):
        lo, hi = idx[:dd], idx[dd:]
        sign = -1 if (sum(hi) + b) & 1 else 1
        for ka in weak_compositions(a, dd):
            left = zeta(tuple(n + k for n, k in zip(lo, ka)))
            ca = weight(ka, lo)
            for kb in weak_compositions(b, d - dd):
                right = zeta(tuple(n + k for n, k in zip(hi, kb))[::-1])
                if is_exact_zero(left) or is_exact_zero(right):
                    continue
                total = total + sign * ca * weight(kb, hi) * left * right
    if a == 0:
        sign = -1 if (b + sum(idx)) & 1 else 1
        for ks in weak_compositions(b, d):
            total = total + sign * weight(ks, idx) * zeta(
                tuple(n + k for n, k in zip(idx, ks))[::-1]
            )
    if b == 0:
        for ks in weak_compositions(a, d):
            total = total + weight(ks, idx) * zeta(tuple(n + k for n, k in zip(idx, ks)))

    table._adjoint[w] = total
    return total


def adjoint_mzv_via_conjugation(w: Word, table: MzvTable):
    """
    ``(-1)^{dp(w)-1} (Φ^{-1} e1 Φ)_w``, computed by multiplying series.
    """
    dp = depth(w)
    if dp == 0:
        return 0
    cap = len(w)
    factors = {w[:i][::-1] for i in range(cap + 1)} | {w[i:] for i in range(cap + 1)}
    phi = phi_from_table(table, cap, only=factors)
    conj = nc_mul(nc_mul(grouplike_inverse(phi), NcSeries.letter("1", cap)), phi)
    res = conj[w]
    return res if dp % 2 else -res
