"""
Partial sums, limits, and the depth-by-depth table driver.

The coefficient of z^m at a word w of

    L(z/(z-1)) · exp(L1(z) e0) · Lp^{-1}(e0, B)

is a finite sum over the splittings w = u e0^b t and the e1-segment
decompositions of t. `expand_coefficient` evaluates it for arbitrary
coefficient providers; `theorem_partial_sum` feeds it with binomial
harmonic sums and adjoint values, and its limit along m = p^N is the
p-adic multiple zeta value.
"""
from __future__ import annotations

import logging
import warnings
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import pairwise

from . import ConvergenceError, PrecisionError, WordError, cur_table
from .adjoint import MzvTable, adjoint_mzv, phi_from_table
from .arith import Padic, PadicBackend, RationalBackend, binomial_negative, is_exact_zero, is_prime
from .harmonic import bmhs_table, bmhs_word
from .harmonic import clear_caches as clear_harmonic_caches
from .words import Word, contract, depth, enumerate_e1_segments, index_to_word, indices_up_to
from .words import parse_word, word_to_index
from .zseries import li1p_series, series_power_over_factorial

logger = logging.getLogger(__name__)

__all__ = [
    "SIGNS",
    "restricted_composition_sum",
    "expand_coefficient",
    "PartialSumRequest",
    "theorem_partial_sum",
    "example_depth1_sum",
    "example_depth2_sum",
    "mahler_value",
    "LimitReport",
    "padic_json",
    "working_precision",
    "vanishes_identically",
    "clear_caches",
    "mzv_limit",
    "table_entry",
    "decide_sign",
    "resolve_sign_convention",
    "build_table",
    "compute_zeta",
]

SIGNS = ("auto", "derived", "literal")

_composition_rows: dict = {}


def _composition_row(b: int, p: int, order: int) -> list:
    "coefficients of li1p^b/b! up to z^order"
    row = _composition_rows.get((b, p))
    if row is None or len(row) <= order:
        row = list(series_power_over_factorial(li1p_series(order, p), b))
        _composition_rows[(b, p)] = row
    return row


def restricted_composition_sum(b: int, l: int, p: int) -> Fraction:
    """
    Sum of ``1/(b! i_1 ⋯ i_b)`` over compositions ``i_1+⋯+i_b = l`` with
    no part divisible by @p.

    This is 1 for b = l = 0.
    """
    if b < 0 or l < 0:
        raise ValueError(f"restricted_composition_sum({b},{l})")
    return Fraction(_composition_row(b, p, l)[l])


def _dot(a: Sequence, b: Sequence, n: int):
    "sum of a[i]*b[n-i]"
    acc = 0
    for i in range(n + 1):
        x = a[i]
        if is_exact_zero(x):
            continue
        y = b[n - i]
        if is_exact_zero(y):
            continue
        acc = acc + x * y
    return acc


Row = Sequence
Provider = Callable[[Word], Row]


def expand_coefficient(
    word: Word,
    m: int,
    p: int,
    left: Provider,
    middle: Callable[[int], Row],
    right: Provider,
    coupling: Callable[[Word], object],
    backend=None,
):
    """
    The z^m coefficient at @word of the three-factor product.

    ``left(u)`` and ``right(c)`` return the z-coefficients of the first
    factor at a word (``right`` is read at the Frobenius twist, so entry j
    stands for z^{pj}); ``middle(b)`` returns those of ``L1^b/b!``;
    ``coupling(s)`` is the coefficient of the primitive series B at the
    word s. Rows must reach index @m.

    The inner sum runs over decompositions of the reversed tail, using
    ``B_{s^rev} = (-1)^{wt(s)+1} B_s``.
    """
    total = 0
    for k in range(len(word) + 1):
        head, t = word[:k], word[k:]
        if t and "1" not in t:
            continue
        outer = []
        if t:
            rt = t[::-1]
            for segs in enumerate_e1_segments(rt):
                c = contract(rt, segs)
                coef = Fraction(-1 if len(t) & 1 else 1, p ** len(c))
                for s, e in segs:
                    x = coupling(rt[s:e])
                    if is_exact_zero(x):
                        coef = 0
                        break
                    coef = coef * x
                if not is_exact_zero(coef):
                    outer.append((c, coef))
            if not outer:
                continue

        zeros = len(head) - len(head.rstrip("0"))
        for b in range(zeros + 1):
            u = head[: len(head) - b]
            if u and "1" not in u:
                continue
            lrow = left(u)
            mrow = middle(b)
            if not t:
                total = total + _dot(lrow, mrow, m)
                continue
            conv = [_dot(lrow, mrow, m - p * j) for j in range(m // p + 1)]
            for c, coef in outer:
                rrow = right(c)
                acc = 0
                for j, x in enumerate(conv):
                    if is_exact_zero(x) or is_exact_zero(rrow[j]):
                        continue
                    acc = acc + rrow[j] * x
                if not is_exact_zero(acc):
                    total = total + coef * acc
    return backend(total) if backend is not None else total


class _PolylogTerms:
    """
    Coefficient providers for the regularised polylogarithm generating
    series: ``(-1)^dp(w) h^B_w`` on both sides, restricted compositions
    in the middle, adjoint values as couplings.
    """

    def __init__(self, p: int, m: int, backend, table: MzvTable | None):
        self.p = p
        self.m = m
        self.backend = backend
        self.table = table
        self._rows: dict[Word, list] = {}
        self._middle: dict[int, list] = {}

    def bmhs(self, w: Word) -> list:
        try:
            return self._rows[w]
        except KeyError:
            pass
        vals = bmhs_table(w, self.m, self.backend).values
        if depth(w) & 1:
            vals = [-x for x in vals]
        self._rows[w] = vals
        return vals

    def middle(self, b: int) -> list:
        try:
            return self._middle[b]
        except KeyError:
            pass
        row = [self.backend(x) if x else 0 for x in _composition_row(b, self.p, self.m)]
        self._middle[b] = row
        return row

    def coupling(self, seg: Word):
        val = adjoint_mzv(seg, self.table)
        return val if depth(seg) & 1 else -val


def _backend(p: int, precision: int | None):
    return RationalBackend() if precision is None else PadicBackend(p, precision)


@dataclass(frozen=True)
class PartialSumRequest:
    """
    One partial sum: a word of depth >= 1, a prime, a truncation level
    and a working precision. Without a precision the sum is exact.

    The table must hold every value of depth below the word's.
    """

    word: Word
    p: int
    m: int
    precision: int | None = None
    table: MzvTable | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        w = parse_word(self.word)
        if depth(w) < 1:
            raise WordError(f"{self.word!r} has depth 0")
        if self.m < 0:
            raise ValueError(f"truncation level must be >= 0, not {self.m}")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @classmethod
    def from_index(cls, idx, p: int, m: int, **kw) -> PartialSumRequest:
        return cls(index_to_word(tuple(idx)), p, m, **kw)

    @property
    def index(self):
        return word_to_index(self.word)

    @property
    def backend(self):
        return _backend(self.p, self.precision)


def theorem_partial_sum(req: PartialSumRequest):
    """
    The partial sum at level ``req.m``.

    Its limit along m = p^N is ``-Φ_w``, the (sign-adjusted) p-adic
    multiple zeta value.
    """
    table = req.table if req.table is not None else cur_table.get(None)
    terms = _PolylogTerms(req.p, req.m, req.backend, table)
    res = expand_coefficient(
        req.word,
        req.m,
        req.p,
        terms.bmhs,
        terms.middle,
        terms.bmhs,
        terms.coupling,
        backend=req.backend,
    )
    logger.debug("T_%s[%d] = %s", req.word, req.m, res)
    return res


def example_depth1_sum(n: int, m: int, p: int, table: MzvTable | None = None, precision=None):
    """
    The depth-1 partial sum, written out.

    ``-h^B_{e0^{n-1}e1}(m) - sum_b sum_{l+pj=m} c_b(l) (-1/p)^{n-b} h^B_{e1 e0^{n-1-b}}(j)``

    No table is needed.
    """
    bk = _backend(p, precision)
    res = bmhs_word(index_to_word((n,)), m, bk)
    for b in range(n):
        row = _composition_row(b, p, m)
        tail = bmhs_table("1" + "0" * (n - 1 - b), m // p, bk)
        coef = Fraction(-1, p) ** (n - b)
        for j in range(m // p + 1):
            c = row[m - p * j]
            if c and not is_exact_zero(tail[j]):
                res = res + coef * c * tail[j]
    return bk(-res)


def example_depth2_sum(n1: int, n2: int, m: int, p: int, table: MzvTable, precision=None):
    """
    The depth-2 partial sum for the index (n1, n2), written out.

    Besides the leading term there are two kinds of segment
    decompositions: one segment per e1, with trivial couplings, or a
    single segment covering both, whose coupling is a depth-1 value.
    """
    bk = _backend(p, precision)
    q = Fraction(-1, p)
    top = m // p
    res = bmhs_word(index_to_word((n1, n2)), m, bk)

    # the outer e1 stays left
    for a in range(n1):
        left = bmhs_table("0" * (n2 - 1) + "1" + "0" * a, m, bk)
        for b in range(n1 - a):
            row = _composition_row(b, p, m)
            right = bmhs_table("1" + "0" * (n1 - 1 - a - b), top, bk)
            coef = q ** (n1 - a - b)
            for j in range(top + 1):
                if is_exact_zero(right[j]):
                    continue
                r = m - p * j
                acc = 0
                for i in range(r + 1):
                    if row[r - i] and not is_exact_zero(left[i]):
                        acc = acc + left[i] * row[r - i]
                if not is_exact_zero(acc):
                    res = res + coef * acc * right[j]

    # both e1 in the tail
    z1 = table.zeta((n1,))
    for b in range(n2):
        row = _composition_row(b, p, m)
        c = n2 - 1 - b
        sign = -1 if (n1 + n2 - b) & 1 else 1
        inner = [0] * (top + 1)
        for k in range(c + 1):
            z = binomial_negative(n1, c - k) * table.zeta((n1 + c - k,))
            if k == c:
                z = z + (-z1 if n1 & 1 else z1)
            hk = bmhs_table("1" + "0" * k, top, bk)
            coef = Fraction(sign, p ** (k + 1)) * z
            for j in range(top + 1):
                if not is_exact_zero(hk[j]):
                    inner[j] = inner[j] + coef * hk[j]
        h4 = bmhs_table("1" + "0" * (n1 - 1) + "1" + "0" * c, top, bk)
        coef4 = q ** (n1 + n2 - b)
        for j in range(top + 1):
            l = m - p * j
            if row[l]:
                res = res + row[l] * (inner[j] + coef4 * h4[j])
    return bk(res)


def mahler_value(coefficients, p: int, levels: int = 3, precision: int = 20) -> Padic:
    """
    The value at infinity of a function analytic off the residue disc
    of 1, from its Taylor coefficients: ``a_0 - lim a_{p^N}``.

    @coefficients is a sequence or a callable. The result is known to the
    precision on which the last two levels agree.
    """
    if levels < 2:
        raise ValueError("need at least two levels")
    a = coefficients if callable(coefficients) else coefficients.__getitem__
    bk = PadicBackend(p, precision)
    vals = [bk(a(p**N)) for N in range(1, levels + 1)]
    diff = vals[-1] - vals[-2]
    agree = diff.absprec if diff.is_zero() else diff.valuation
    return (bk(a(0)) - vals[-1]).with_precision(agree)


def padic_json(x) -> dict:
    "valuation and little-endian digits"
    if not isinstance(x, Padic):
        raise TypeError(f"not a p-adic value: {x!r}")
    return {"valuation": x.valuation, "digits": x.digits()}


@dataclass
class LimitReport:
    """
    The levels S(p^N) of one value, their pairwise agreement, and the
    certified result.

    ``exact`` is set when every level is exactly zero, or when the value
    is known to vanish; ``value`` is then a p-adic zero at ``precision``.
    """

    word: Word
    prime: int
    levels: list[tuple[int, Padic]]
    valuations: list[int]
    value: Padic
    precision: int
    sign: str = "derived"
    exact: bool = False

    @property
    def index(self):
        return word_to_index(self.word) if self.word.endswith("1") else None

    def as_dict(self) -> dict:
        res: dict = {"p": self.prime}
        idx = self.index
        if idx is None:
            res["word"] = self.word
        else:
            res["index"] = list(idx)
        res.update(padic_json(self.value))
        res["precision"] = self.precision
        res["levels"] = [{"N": n, **padic_json(v)} for n, v in self.levels]
        return res


def working_precision(weight: int, target: int, levels: int) -> int:
    """
    Absolute precision for the levels p^1 … p^@levels of a word of
    @weight, so that @target digits survive.

    A level at p^N divides by up to about @weight·N powers of p.
    """
    return target + weight * (levels + 1) + 2


def vanishes_identically(idx) -> bool:
    "ζ(2k) and ζ(1,…,1) are zero for every prime"
    idx = tuple(idx)
    return all(n == 1 for n in idx) or (len(idx) == 1 and idx[0] % 2 == 0)


def clear_caches() -> None:
    "drop the cached composition rows and harmonic sum tables"
    _composition_rows.clear()
    clear_harmonic_caches()


def _as_word(index_or_word) -> Word:
    if isinstance(index_or_word, str):
        return parse_word(index_or_word)
    return index_to_word(tuple(index_or_word))


def _agreement(d: Padic) -> int:
    return d.absprec if d.is_zero() else d.valuation


def _level(word: Word, p: int, n: int, table, precision, flip: bool):
    s = theorem_partial_sum(PartialSumRequest(word, p, p**n, precision, table))
    logger.debug("%s p=%d N=%d: %s", word, p, n, s)
    return n, (-s if flip else s)


def _exact_inputs(word: Word, table: MzvTable | None) -> bool:
    "no p-adic table entry can enter the partial sums of @word"
    if table is None:
        return True
    d = depth(word)
    return not any(isinstance(v, Padic) for i, v in table.entries.items() if len(i) < d)


def _exactly_zero(word: Word, p: int, levels: int, table: MzvTable | None) -> bool:
    return all(
        theorem_partial_sum(PartialSumRequest(word, p, p**n, None, table)) == 0
        for n in range(1, levels + 1)
    )


def mzv_limit(
    index_or_word,
    p: int,
    K: int,
    N_max: int,
    table: MzvTable | None = None,
    sign: str = "derived",
    precision: int | None = None,
    target: int | None = None,
    max_levels: int | None = None,
) -> LimitReport:
    """
    The p-adic multiple zeta value of an index (or a word of depth >= 1),
    as the limit of the partial sums at m = p, p^2, …, p^N_max.

    The value is certified to one digit less than the agreement of the
    last two levels, and to at most @target digits (default @K). Levels
    beyond N_max are added, up to @max_levels, while fewer than @target
    digits are certified.

    If every level is zero and no p-adic table entry is involved, the
    levels are recomputed exactly; if they are all exactly zero the
    report is marked ``exact``.
    """
    word = _as_word(index_or_word)
    if N_max < 2:
        raise ValueError("N_max must be at least 2")
    if sign not in ("derived", "literal"):
        raise ValueError(f"sign convention {sign!r} must be resolved first")
    if table is None:
        table = cur_table.get(None)
    target = K if target is None else max(target, K)
    max_levels = N_max if max_levels is None else max(max_levels, N_max)
    if precision is None:
        precision = working_precision(len(word), target, max_levels)
    flip = sign == "derived" and depth(word) % 2 == 0

    levels = [_level(word, p, n, table, precision, flip) for n in range(1, N_max + 1)]
    while True:
        diffs = [y - x for (_, x), (_, y) in pairwise(levels)]
        vals = [_agreement(d) for d in diffs]
        certified = min(vals[-1] - 1, levels[-1][1].absprec, target)
        if certified >= target or len(levels) >= max_levels:
            break
        logger.info("%s at p=%d: %d digits, adding level %d", word, p, certified, len(levels) + 1)
        levels.append(_level(word, p, len(levels) + 1, table, precision, flip))

    if (
        all(v.is_zero() for _, v in levels)
        and _exact_inputs(word, table)
        and _exactly_zero(word, p, len(levels), table)
    ):
        return LimitReport(
            word=word,
            prime=p,
            levels=levels,
            valuations=vals,
            value=Padic.zero(p, target),
            precision=target,
            sign=sign,
            exact=True,
        )

    for i in range(1, len(vals)):
        # levels that agree to their full precision do not count as a drop
        if vals[i] < vals[i - 1] and not diffs[i].is_zero():
            msg = f"agreement of {word} at p={p} drops from {vals[i - 1]} to {vals[i]}"
            if i == len(vals) - 1:
                raise ConvergenceError(msg, levels)
            warnings.warn(msg)
    if certified < 1:
        raise ConvergenceError(f"{word} at p={p}: no certified digits", levels)
    return LimitReport(
        word=word,
        prime=p,
        levels=levels,
        valuations=vals,
        value=levels[-1][1].with_precision(certified),
        precision=certified,
        sign=sign,
    )


def _vanishing_report(
    word: Word, p: int, K: int, N_max: int, table, sign: str, precision: int
) -> LimitReport:
    flip = sign == "derived" and depth(word) % 2 == 0
    levels = [_level(word, p, n, table, precision, flip) for n in range(1, N_max + 1)]
    vals = [_agreement(y - x) for (_, x), (_, y) in pairwise(levels)]
    last = levels[-1][1]
    logger.info("%s at p=%d vanishes; level agreements %s", word, p, vals)
    if not last.is_zero() and last.valuation < 1:
        warnings.warn(f"{word} should vanish, but S({p}^{N_max}) is a {p}-adic unit")
    return LimitReport(
        word=word,
        prime=p,
        levels=levels,
        valuations=vals,
        value=Padic.zero(p, K),
        precision=K,
        sign=sign,
        exact=True,
    )


def table_entry(
    idx,
    p: int,
    K: int,
    N_max: int,
    table: MzvTable | None,
    sign: str = "derived",
    precision: int | None = None,
    target: int | None = None,
    max_levels: int | None = None,
):
    """
    The value to store for ζ(@idx), with its report.

    Values that vanish identically, and values whose levels are exactly
    zero, are returned as an exact ``Fraction(0)``.
    """
    idx = tuple(idx)
    if vanishes_identically(idx):
        word = index_to_word(idx)
        if precision is None:
            precision = working_precision(len(word), K, N_max)
        return Fraction(0), _vanishing_report(word, p, K, N_max, table, sign, precision)
    rep = mzv_limit(
        idx,
        p,
        K,
        N_max,
        table=table,
        sign=sign,
        precision=precision,
        target=target,
        max_levels=max_levels,
    )
    return (Fraction(0) if rep.exact else rep.value), rep


def decide_sign(z3: Padic, z12_literal: Padic) -> str:
    """
    Choose the sign convention from ζ(1,2) = ζ(3), with ζ(1,2) computed
    under the literal convention.
    """
    prec = min(z3.absprec, z12_literal.absprec)

    def vanishes(x: Padic) -> bool:
        return x.with_precision(prec).is_zero()

    if vanishes(z3):
        warnings.warn(f"ζ(3) vanishes to precision {prec}; sign undecided, using 'derived'")
        return "derived"
    same = vanishes(z12_literal - z3)
    opposite = vanishes(z12_literal + z3)
    if same and opposite:
        warnings.warn("duality check cannot tell the signs apart; using 'derived'")
        return "derived"
    if same:
        return "literal"
    if opposite:
        return "derived"
    warnings.warn("duality check fails for both signs; using 'derived'")
    return "derived"


def resolve_sign_convention(
    p: int,
    K: int,
    N_max: int,
    table: MzvTable | None = None,
    precision: int | None = None,
    extra_levels: int = 0,
) -> str:
    """
    Decide between the 'derived' and 'literal' conventions for @p.

    Depth-1 values do not depend on the choice. @table is not modified.
    """
    if precision is None:
        precision = table.precision if table is not None else None
    if precision is None:
        precision = working_precision(3, K, N_max + extra_levels)
    scratch = table.copy() if table is not None else MzvTable(p, precision)
    for idx in ((1,), (2,), (3,)):
        if idx not in scratch:
            value, rep = table_entry(
                idx, p, K, N_max, scratch, precision=precision, max_levels=N_max + extra_levels
            )
            scratch.add(idx, value, rep)
    z12 = mzv_limit(
        (1, 2),
        p,
        K,
        N_max,
        table=scratch,
        sign="literal",
        precision=precision,
        max_levels=N_max + extra_levels,
    )
    res = decide_sign(scratch.padic((3,)), z12.value)
    logger.info("p=%d: sign convention %r", p, res)
    return res


def build_table(
    p: int,
    W: int,
    K: int,
    N_max: int,
    sign: str = "derived",
    max_depth: int | None = None,
    precision: int | None = None,
    extra_levels: int = 0,
    consumer_weight: int | None = None,
) -> MzvTable:
    """
    All values of weight <= @W, depth by depth.

    A layer only sees the layers below it. A failure names the index.
    The associator is attached as ``table.phi`` unless @max_depth cuts
    the table short.

    Entries that later layers (or a value of @consumer_weight) read are
    certified to K + weight·N_max digits, since a level at p^N can lose
    that many. Up to @extra_levels levels beyond N_max are added to get
    there. The top layer of a complete table only needs @K digits.
    """
    if sign not in SIGNS:
        raise ValueError(f"unknown sign convention {sign!r}")
    if extra_levels < 0:
        raise ValueError("extra_levels must not be negative")
    clear_caches()
    reader = consumer_weight or W
    deep = K + reader * N_max
    max_levels = N_max + extra_levels
    if precision is None:
        precision = working_precision(reader, deep, max_levels)
    table = MzvTable(p, precision)
    table.sign = "derived" if sign == "auto" else sign

    layers: dict[int, list] = {}
    for idx in indices_up_to(W):
        if max_depth is not None and len(idx) > max_depth:
            continue
        layers.setdefault(len(idx), []).append(idx)
    top = max(layers, default=0)

    for d in sorted(layers):
        if d == 2 and sign == "auto":
            table.sign = resolve_sign_convention(p, K, N_max, table, precision, extra_levels)
        target = K if consumer_weight is None and d == top else deep
        logger.info("p=%d depth %d: %d values to %d digits", p, d, len(layers[d]), target)
        done = []
        for idx in layers[d]:
            try:
                value, rep = table_entry(
                    idx, p, K, N_max, table, table.sign, precision, target, max_levels
                )
            except ConvergenceError as exc:
                raise ConvergenceError(f"zeta{idx!r}: {exc}", exc.levels) from exc
            except PrecisionError as exc:
                raise PrecisionError(f"zeta{idx!r}: {exc}") from exc
            done.append((idx, value, rep))
        for idx, value, rep in done:
            table.add(idx, value, rep)

    if max_depth is None or max_depth >= W:
        table.phi = phi_from_table(table, W)
    return table


def compute_zeta(
    index_or_word,
    p: int,
    K: int,
    N_max: int,
    sign: str = "derived",
    extra_levels: int = 0,
) -> LimitReport:
    """
    One value, with the table of lower depths it needs built on the way.
    """
    word = _as_word(index_or_word)
    d = depth(word)
    wt = len(word)
    max_levels = N_max + extra_levels
    precision = working_precision(wt, K + wt * N_max, max_levels)
    table = None
    if d > 1:
        table = build_table(
            p,
            wt - 1,
            K,
            N_max,
            sign=sign,
            max_depth=d - 1,
            precision=precision,
            extra_levels=extra_levels,
            consumer_weight=wt,
        )
    else:
        clear_caches()
    if sign == "auto":
        if d < 2:
            sign = "derived"
        elif table.max_depth >= 2:
            sign = table.sign
        else:
            sign = resolve_sign_convention(p, K, N_max, table, precision, extra_levels)
    return mzv_limit(
        word, p, K, N_max, table=table, sign=sign, precision=precision, max_levels=max_levels
    )
