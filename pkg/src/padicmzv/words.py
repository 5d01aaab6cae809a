"""
Words on the alphabet {e0, e1}.

A word is a plain string over "0" and "1", read left to right, so "011"
is e0 e1 e1. An index (n_1,…,n_d) is the word e0^{n_d-1} e1 ⋯ e0^{n_1-1} e1.
"""
from __future__ import annotations

from collections.abc import Iterator, Sequence
from functools import lru_cache
from itertools import product

from . import WordError
from .arith import binomial_negative

__all__ = [
    "Word",
    "Index",
    "Segments",
    "WordPoly",
    "index_to_word",
    "word_to_index",
    "parse_word",
    "parse_index",
    "reverse",
    "weight",
    "depth",
    "blocks",
    "enumerate_e1_segments",
    "contract",
    "shuffle",
    "antipode",
    "swap_letters",
    "words_up_to",
    "indices_up_to",
    "weak_compositions",
    "e0_tail_expansion",
]

Word = str
Index = tuple[int, ...]
Segments = tuple[tuple[int, int], ...]


def index_to_word(idx: Sequence[int]) -> Word:
    if not idx:
        raise WordError("empty index")
    for n in idx:
        if not isinstance(n, int) or n < 1:
            raise WordError(f"index entries must be integers >= 1: {tuple(idx)!r}")
    return "".join("0" * (n - 1) + "1" for n in reversed(idx))


def word_to_index(w: Word) -> Index:
    if not w or w[-1] != "1":
        raise WordError(f"not an index word: {w!r}")
    _check(w)
    runs = w.split("1")[:-1]
    return tuple(len(r) + 1 for r in reversed(runs))


def _check(w: Word) -> None:
    if w.strip("01"):
        raise WordError(f"words consist of 0 and 1: {w!r}")


def parse_word(s: str) -> Word:
    """
    Read a word given as a string of "0" and "1".

    The strings "-" and "" denote the empty word.
    """
    s = s.strip()
    if s == "-":
        return ""
    _check(s)
    return s


def parse_index(s: str) -> Index:
    "read a comma-separated index such as ``1,2``"
    try:
        idx = tuple(int(x) for x in s.split(","))
    except ValueError:
        raise WordError(f"not an index: {s!r}") from None
    index_to_word(idx)
    return idx


def reverse(w: Word) -> Word:
    return w[::-1]


def weight(w: Word) -> int:
    return len(w)


def depth(w: Word) -> int:
    return w.count("1")


def swap_letters(w: Word) -> Word:
    "exchange e0 and e1"
    return w.translate(_SWAP)


_SWAP = str.maketrans("01", "10")


def blocks(w: Word) -> tuple[int, ...]:
    """
    The block structure (n_0, n_1, …, n_d) of
    ``e0^{n_d-1} e1 ⋯ e0^{n_1-1} e1 e0^{n_0-1}``.
    """
    _check(w)
    return tuple(len(r) + 1 for r in reversed(w.split("1")))


def enumerate_e1_segments(w: Word) -> list[Segments]:
    """
    All decompositions of @w into e1-segments.

    A decomposition is a tuple of half-open position ranges ``(start, end)``.
    Every range contains at least one e1, every e1 of @w lies in a
    range, and the gaps between ranges are free of e1. The result is
    sorted by number of segments, then start positions, then end positions.
    """
    return list(_segments(w))


@lru_cache(maxsize=4096)
def _segments(w: Word) -> tuple[Segments, ...]:
    ones = [i for i, c in enumerate(w) if c == "1"]
    d = len(ones)
    if not d:
        return ()
    res = []

    def walk(first: int, lo: int, acc: list[tuple[int, int]]):
        # group the e1s ones[first:last+1] into one segment
        if first == d:
            res.append(tuple(acc))
            return
        for last in range(first, d):
            hi = ones[last + 1] if last + 1 < d else len(w)
            for s in range(lo, ones[first] + 1):
                for t in range(ones[last] + 1, hi + 1):
                    acc.append((s, t))
                    walk(last + 1, t, acc)
                    acc.pop()

    walk(0, 0, [])
    res.sort(key=lambda segs: (len(segs), tuple(s for s, _ in segs), tuple(t for _, t in segs)))
    return tuple(res)


def contract(w: Word, segs: Segments) -> Word:
    "replace each segment of @w with a single e1"
    if not segs:
        raise WordError("no segments")
    gaps = []
    pos = 0
    for s, t in segs:
        if not pos <= s < t <= len(w):
            raise WordError(f"bad segment {(s, t)!r} in {w!r}")
        if "1" not in w[s:t]:
            raise WordError(f"segment {w[s:t]!r} has no e1")
        gaps.append(w[pos:s])
        pos = t
    gaps.append(w[pos:])
    if any("1" in g for g in gaps):
        raise WordError(f"gaps of {segs!r} in {w!r} contain e1")
    return "1".join(gaps)


class WordPoly(dict):
    """
    A finitely supported linear combination of words.

    Zero coefficients are never stored.
    """

    @classmethod
    def of(cls, w: Word, c=1) -> WordPoly:
        res = cls()
        if c:
            res[w] = c
        return res

    def add_term(self, w: Word, c) -> None:
        c = self.get(w, 0) + c
        if c:
            self[w] = c
        else:
            self.pop(w, None)

    def __add__(self, other: WordPoly) -> WordPoly:
        res = WordPoly(self)
        for w, c in other.items():
            res.add_term(w, c)
        return res

    def scale(self, c) -> WordPoly:
        if not c:
            return WordPoly()
        return WordPoly({w: c * v for w, v in self.items()})

    def shuffle(self, other: WordPoly) -> WordPoly:
        "bilinear extension of the shuffle product"
        res = WordPoly()
        for u, a in self.items():
            for v, b in other.items():
                for w, n in _shuffle(u, v):
                    res.add_term(w, a * b * n)
        return res


def shuffle(u: Word, v: Word) -> WordPoly:
    "the shuffle product of two words"
    return WordPoly(_shuffle(u, v))


@lru_cache(maxsize=8192)
def _shuffle(u: Word, v: Word) -> tuple[tuple[Word, int], ...]:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    res: dict[Word, int] = {}
    for w, n in _shuffle(u[1:], v):
        w = u[0] + w
        res[w] = res.get(w, 0) + n
    for w, n in _shuffle(u, v[1:]):
        w = v[0] + w
        res[w] = res.get(w, 0) + n
    return tuple(sorted(res.items()))


def antipode(w: Word) -> tuple[int, Word]:
    "S(w) = (-1)^wt(w) w^rev, as (sign, word)"
    return (-1 if len(w) & 1 else 1), w[::-1]


def words_up_to(weight: int) -> Iterator[Word]:
    "all words of length <= @weight, shortest first"
    for n in range(weight + 1):
        for letters in product("01", repeat=n):
            yield "".join(letters)


def indices_up_to(weight: int) -> list[Index]:
    "all indices of weight <= @weight, by depth, then weight, then value"
    res = [word_to_index(w) for w in words_up_to(weight) if w.endswith("1")]
    res.sort(key=lambda idx: (len(idx), sum(idx), idx))
    return res


def weak_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    "tuples of @parts non-negative integers summing to @total"
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for k in range(total + 1):
        for rest in weak_compositions(total - k, parts - 1):
            yield (k, *rest)


@lru_cache(maxsize=4096)
def e0_tail_expansion(w: Word) -> tuple[tuple[int, Word], ...]:
    """
    Rewrite an e0-terminated word of depth >= 1 as a combination of
    index words.

    For ``w = e0^{n_d-1} e1 ⋯ e0^{n_1-1} e1 e0^{n_0-1}`` this returns the
    pairs ``(prod binom(-n_i, k_i), index_word(n_1+k_1, …, n_d+k_d))`` over
    all (k_1,…,k_d) summing to n_0-1, which is how the coefficients of a
    group-like series with vanishing e0 coefficient behave.
    Index words expand to themselves.
    """
    bl = blocks(w)
    n0, idx = bl[0], bl[1:]
    if not idx:
        raise WordError(f"no e1 in {w!r}")
    if n0 == 1:
        return ((1, w),)
    res: dict[Word, int] = {}
    for ks in weak_compositions(n0 - 1, len(idx)):
        c = 1
        for n, k in zip(idx, ks):
            c *= binomial_negative(n, k)
        iw = index_to_word(tuple(n + k for n, k in zip(idx, ks)))
        res[iw] = res.get(iw, 0) + c
    return tuple((c, iw) for iw, c in res.items() if c)


