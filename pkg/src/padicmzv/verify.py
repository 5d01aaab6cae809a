"""
Named verification suites.

Each suite checks one family of identities and records every
counterexample. Suites marked fast run in a few seconds and make up
``selftest``; the others compute actual p-adic values.
"""
from __future__ import annotations

import logging
import random
from collections.abc import Callable
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction

from . import ConvergenceError, PrecisionError, cur_config
from ._test import (
    brute_force_segments,
    composition_sum_by_enumeration,
    direct_substitution,
    mobius_by_products,
    random_contraction_pair,
    random_grouplike,
    random_regular_series,
    random_zseries,
    synthetic_table,
)
from .adjoint import adjoint_mzv, adjoint_mzv_via_conjugation
from .config import RunConfig, default_nmax
from .engine import (
    PartialSumRequest,
    build_table,
    example_depth1_sum,
    example_depth2_sum,
    expand_coefficient,
    mahler_value,
    mzv_limit,
    restricted_composition_sum,
    theorem_partial_sum,
)
from .harmonic import bmhs, mhs, reciprocal_check
from .ncseries import NcSeries, grouplike_inverse, is_grouplike, nc_mul, substitute, triangle_op
from .words import depth, enumerate_e1_segments, indices_up_to, words_up_to
from .zseries import ZSeries, mobius_transform, series_power_over_factorial

logger = logging.getLogger(__name__)

__all__ = ["SuiteResult", "SUITES", "suite", "run_suite", "fast_suites"]


@dataclass
class SuiteResult:
    """
    Outcome of one suite: how many identities were checked, and the
    ones that failed.
    """

    name: str
    anchor: str
    seed: int = 0
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, cond, msg) -> bool:
        self.checked += 1
        if not cond:
            logger.warning("%s: %s", self.name, msg)
            self.failures.append(str(msg))
        return bool(cond)

    def as_dict(self) -> dict:
        return {
            "suite": self.name,
            "anchor": self.anchor,
            "seed": self.seed,
            "checked": self.checked,
            "ok": self.ok,
            "failures": self.failures,
        }


@dataclass(frozen=True)
class _Suite:
    name: str
    anchor: str
    fast: bool
    fn: Callable


SUITES: dict[str, _Suite] = {}


def suite(name: str, anchor: str, fast: bool = True):
    "register a suite"

    def deco(fn):
        SUITES[name] = _Suite(name, anchor, fast, fn)
        return fn

    return deco


def fast_suites() -> list[str]:
    return [n for n, s in SUITES.items() if s.fast]


def run_suite(name: str, config: RunConfig | None = None) -> SuiteResult:
    """
    Run the suite @name with a generator seeded from the configuration.
    """
    try:
        s = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; known: {', '.join(SUITES)}") from None
    if config is None:
        config = cur_config.get(None) or RunConfig()
    res = SuiteResult(name, s.anchor, seed=config.seed)
    logger.info("suite %s, seed %d", name, config.seed)
    s.fn(res, config, random.Random(config.seed))
    return res


def _coefficient(x, m: int):
    return x[m] if isinstance(x, ZSeries) else x


@suite("contraction", "substitution A(e0,B) as a sum over e1-segment decompositions")
def _contraction(res: SuiteResult, cfg: RunConfig, rng):
    for w in words_up_to(5):
        res.check(
            enumerate_e1_segments(w) == brute_force_segments(w), f"segments of {w!r}"
        )
    for n in range(100):
        A, B = random_contraction_pair(rng, 5)
        got = substitute(A, B)
        want = direct_substitution(A, B)
        for w in words_up_to(5):
            if not res.check(got[w] == want[w], f"pair {n} at {w!r}: {got[w]} != {want[w]}"):
                return


@suite("prop-sec2", "three-factor product coefficients as the partial-sum formula")
def _prop_sec2(res: SuiteResult, cfg: RunConfig, rng):
    cap, order, p = 4, 20, cfg.p
    for n in range(2):
        L = random_regular_series(rng, cap, order)
        L1 = random_zseries(rng, order, terms=4, constant=False)
        P = random_grouplike(rng, cap)
        T = triangle_op(P, L, L1, p, order)

        X = L.map(ZSeries.moebius)
        zero = ZSeries.constant(0, order)
        B = nc_mul(nc_mul(grouplike_inverse(P), NcSeries.letter("1", cap)), P)

        def row(u):
            return X[u] if u in X else zero

        def middle(b):
            return series_power_over_factorial(L1, b)

        for w in words_up_to(cap):
            for m in range(order + 1):
                want = expand_coefficient(w, m, p, row, middle, row, B.__getitem__)
                got = _coefficient(T[w], m)
                if not res.check(got == want, f"case {n} at {w!r}, z^{m}: {got} != {want}"):
                    return


@suite("transform", "Möbius transform involution and the harmonic-sum reciprocal formula")
def _transform(res: SuiteResult, cfg: RunConfig, rng):
    for n in range(20):
        n_terms = rng.randint(1, 30)
        a = [0] + [Fraction(rng.randint(-50, 50), rng.randint(1, 20)) for _ in range(n_terms)]
        b = mobius_transform(a)
        res.check(mobius_transform(b) == a, f"involution fails on {a!r}")
        res.check(b == mobius_by_products(a), f"kernel differs from composition on {a!r}")
    for idx in indices_up_to(6):
        for m in range(1, 31):
            if not res.check(reciprocal_check(idx, m), f"reciprocal formula at {idx!r}, m={m}"):
                return


@suite("closed-forms", "h^B_1(m) = -1/m, h^B_2(m) = -1/m^2 - h_1(m)/m, restricted compositions")
def _closed_forms(res: SuiteResult, cfg: RunConfig, rng):
    for m in range(1, 51):
        res.check(bmhs((1,), m) == Fraction(-1, m), f"h^B_1({m})")
        res.check(
            bmhs((2,), m) == Fraction(-1, m * m) - mhs((1,), m) / m, f"h^B_2({m})"
        )
    for b in range(4):
        for l in range(9):
            want = composition_sum_by_enumeration(b, l, cfg.p)
            res.check(restricted_composition_sum(b, l, cfg.p) == want, f"compositions b={b} l={l}")


@suite("examples", "written-out depth-1 and depth-2 sums equal the general sum")
def _examples(res: SuiteResult, cfg: RunConfig, rng):
    for p in sorted({3, 5, cfg.p}):
        table = synthetic_table(p, 5, rng)
        top = 2 * p * p
        for n in range(1, 6):
            for m in range(top + 1):
                want = theorem_partial_sum(PartialSumRequest.from_index((n,), p, m))
                got = example_depth1_sum(n, m, p)
                if not res.check(got == want, f"({n},) at p={p}, m={m}: {got} != {want}"):
                    return
        for n1 in range(1, 5):
            for n2 in range(1, 6 - n1):
                for m in range(top + 1):
                    req = PartialSumRequest.from_index((n1, n2), p, m, table=table)
                    want = theorem_partial_sum(req)
                    got = example_depth2_sum(n1, n2, m, p, table)
                    msg = f"({n1},{n2}) at p={p}, m={m}: {got} != {want}"
                    if not res.check(got == want, msg):
                        return


@suite("adjoint", "closed adjoint formula equals the conjugation Φ^-1 e1 Φ")
def _adjoint(res: SuiteResult, cfg: RunConfig, rng):
    table = synthetic_table(cfg.p, 5, rng)
    for w in words_up_to(5):
        with table.logging_reads() as reads:
            a = adjoint_mzv(w, table)
        res.check(all(len(i) < max(depth(w), 1) for i in reads), f"{w!r} reads {reads!r}")
        b = adjoint_mzv_via_conjugation(w, table)
        res.check(a == b, f"{w!r}: {a} != {b}")


@suite("identity", "T_(1)[p^N] = 0 and the values at m = 1")
def _identity(res: SuiteResult, cfg: RunConfig, rng):
    for p in sorted({2, 3, 5, cfg.p}):
        n_max = cfg.n_max if p == cfg.p else default_nmax(p)
        for n in range(1, n_max + 1):
            v = theorem_partial_sum(PartialSumRequest.from_index((1,), p, p**n))
            res.check(v == 0, f"T_(1)[{p}^{n}] = {v}")
    for idx in ((1,), (2,)):
        v = theorem_partial_sum(PartialSumRequest.from_index(idx, cfg.p, 1))
        res.check(v == 1, f"T_{idx}[1] = {v}")


@suite("mahler", "value at infinity is a_0 - lim a_(p^N)")
def _mahler(res: SuiteResult, cfg: RunConfig, rng):
    p = cfg.p
    for name, coef, value in (
        ("1/(1-z)", lambda n: 1, 0),
        ("z/(1-z)", lambda n: 1 if n else 0, -1),
        ("1/(1-z)^2", lambda n: n + 1, 0),
    ):
        v = mahler_value(coef, p, levels=4)
        res.check(v == value and v.absprec >= 1, f"{name}: {v}")


@contextmanager
def _limits(res: SuiteResult, what: str):
    "record a limit that does not converge as a failed check"
    try:
        yield
    except (ConvergenceError, PrecisionError) as exc:
        res.check(False, f"{what}: {exc}")


@suite("even", "ζ(2) and ζ(4) vanish", fast=False)
def _even(res: SuiteResult, cfg: RunConfig, rng):
    for idx in ((2,), (4,)):
        with _limits(res, f"ζ{idx}"):
            rep = mzv_limit(
                idx, cfg.p, cfg.prec, cfg.n_max, max_levels=cfg.n_max + cfg.extra_levels
            )
            res.check(rep.value.is_zero(), f"ζ{idx} = {rep.value}")
            logger.info("ζ%s certified to %d digits", idx, rep.precision)


def _table(cfg: RunConfig):
    return build_table(
        cfg.p, cfg.weight, cfg.prec, cfg.n_max, sign=cfg.sign, extra_levels=cfg.extra_levels
    )


@suite("shuffle", "the assembled associator is group-like", fast=False)
def _shuffle(res: SuiteResult, cfg: RunConfig, rng):
    with _limits(res, "table"):
        table = _table(cfg)
        ok, witness = is_grouplike(table.phi)
        res.check(ok, f"shuffle relation fails at {witness!r}")


@suite("duality", "Φ(e0,e1) Φ(e1,e0) = 1", fast=False)
def _duality(res: SuiteResult, cfg: RunConfig, rng):
    with _limits(res, "table"):
        table = _table(cfg)
        prod = nc_mul(table.phi, table.phi.swapped())
        for w in words_up_to(table.phi.cap):
            want = 1 if not w else 0
            res.check(prod[w] == want, f"coefficient at {w!r} is {prod[w]}")


@suite("convergence", "agreement of successive levels does not decrease", fast=False)
def _convergence(res: SuiteResult, cfg: RunConfig, rng):
    try:
        table = build_table(cfg.p, 2, cfg.prec, cfg.n_max)
    except (ConvergenceError, PrecisionError) as exc:
        res.check(False, f"table: {exc}")
        return
    for idx in ((2,), (3,), (1, 2)):
        try:
            rep = mzv_limit(idx, cfg.p, cfg.prec, cfg.n_max, table=table)
        except ConvergenceError as exc:
            res.check(False, f"ζ{idx}: {exc}")
            continue
        logger.info("ζ%s: agreement %s", idx, rep.valuations)
        res.check(rep.precision >= 1, f"ζ{idx}: agreement {rep.valuations}")
