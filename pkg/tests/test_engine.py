from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from padicmzv import ConvergenceError, WordError, engine, harmonic
from padicmzv._test import (
    composition_sum_by_enumeration,
    random_grouplike,
    random_regular_series,
    random_zseries,
    synthetic_table,
)
from padicmzv.adjoint import MzvTable, phi_from_table
from padicmzv.arith import Padic, is_exact_zero, padic_from_rational
from padicmzv.engine import (
    LimitReport,
    PartialSumRequest,
    build_table,
    clear_caches,
    compute_zeta,
    decide_sign,
    example_depth1_sum,
    example_depth2_sum,
    expand_coefficient,
    mahler_value,
    mzv_limit,
    restricted_composition_sum,
    table_entry,
    theorem_partial_sum,
    vanishes_identically,
    working_precision,
)
from padicmzv.ncseries import NcSeries, grouplike_inverse, is_grouplike, nc_mul, triangle_op
from padicmzv.words import indices_up_to, words_up_to
from padicmzv.zseries import ZSeries, series_power_over_factorial


def tps(idx, p, m, **kw):
    return theorem_partial_sum(PartialSumRequest.from_index(idx, p, m, **kw))


def test_compositions():
    assert restricted_composition_sum(0, 0, 5) == 1
    assert restricted_composition_sum(0, 3, 5) == 0
    assert restricted_composition_sum(1, 4, 5) == Fraction(1, 4)
    assert restricted_composition_sum(1, 5, 5) == 0
    assert restricted_composition_sum(2, 4, 5) == Fraction(11, 24)
    assert restricted_composition_sum(2, 4, 3) == Fraction(1, 8)
    with pytest.raises(ValueError):
        restricted_composition_sum(-1, 0, 3)


@given(
    st.integers(min_value=0, max_value=3),
    st.integers(min_value=0, max_value=12),
    st.sampled_from([2, 3, 5, 7]),
)
def test_compositions_enumerated(b, l, p):
    assert restricted_composition_sum(b, l, p) == composition_sum_by_enumeration(b, l, p)


def test_small_levels():
    assert tps((1,), 3, 1) == 1
    assert tps((2,), 5, 1) == 1
    assert tps((1,), 3, 0) == 0
    assert tps((2, 1), 3, 0, table=synthetic_table(3, 3, random.Random(1))) == 0


@pytest.mark.parametrize("p", [2, 3, 5])
def test_log_identity(p):
    for n in range(1, 4):
        assert tps((1,), p, p**n) == 0, (p, n)


def test_request():
    with pytest.raises(WordError):
        PartialSumRequest("000", 3, 1)
    with pytest.raises(ValueError):
        PartialSumRequest("1", 4, 1)
    with pytest.raises(ValueError):
        PartialSumRequest("1", 3, -1)
    req = PartialSumRequest.from_index((1, 2), 3, 4, precision=5)
    assert req.word == "011"
    assert req.index == (1, 2)
    assert req.backend.precision == 5


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_depth1_example(p, n):
    for m in range(2 * p * p + 1):
        assert example_depth1_sum(n, m, p) == tps((n,), p, m), (n, m)


@pytest.mark.parametrize("p", [3, 5])
@pytest.mark.parametrize("idx", [i for i in indices_up_to(5) if len(i) == 2])
def test_depth2_example(p, idx):
    table = synthetic_table(p, 5, random.Random(sum(idx)))
    for m in range(2 * p * p + 1):
        want = tps(idx, p, m, table=table)
        assert example_depth2_sum(*idx, m, p, table) == want, (idx, m)


def test_padic_backend():
    table = synthetic_table(3, 3, random.Random(7))
    for idx in ((1,), (3,), (1, 2)):
        for m in (1, 4, 9):
            x = tps(idx, 3, m, table=table, precision=10)
            assert isinstance(x, Padic)
            assert x == tps(idx, 3, m, table=table), (idx, m)


def test_generic_formula():
    rng = random.Random(5)
    cap, order, p = 3, 10, 2
    L = random_regular_series(rng, cap, order)
    L1 = random_zseries(rng, order, constant=False)
    P = random_grouplike(rng, cap)
    T = triangle_op(P, L, L1, p, order)
    X = L.map(ZSeries.moebius)
    B = nc_mul(nc_mul(grouplike_inverse(P), NcSeries.letter("1", cap)), P)
    zero = ZSeries.constant(0, order)

    def row(u):
        return X[u] if u in X else zero

    def middle(b):
        return series_power_over_factorial(L1, b)

    for w in words_up_to(cap):
        for m in range(order + 1):
            got = T[w][m] if isinstance(T[w], ZSeries) else T[w]
            assert got == expand_coefficient(w, m, p, row, middle, row, B.__getitem__), (w, m)


@pytest.mark.parametrize("p", [3, 5])
def test_mahler(p):
    v = mahler_value(lambda n: 1, p)
    assert v.is_zero()
    v = mahler_value(lambda n: 1 if n else 0, p)
    assert v == -1
    assert v.absprec >= 10
    v = mahler_value(lambda n: n + 1, p, levels=4)
    assert v.is_zero()
    assert v.absprec == 3
    # -lim alone would give -1
    assert mahler_value([1] * (p**3 + 1), p) == 0
    with pytest.raises(ValueError):
        mahler_value(lambda n: 1, p, levels=1)


def test_limit_log():
    rep = mzv_limit((1,), 3, 4, 3)
    assert isinstance(rep, LimitReport)
    assert rep.value.is_zero()
    assert rep.exact
    assert rep.precision == 4
    assert [n for n, _ in rep.levels] == [1, 2, 3]
    assert all(v.is_zero() for _, v in rep.levels)
    d = rep.as_dict()
    assert d["p"] == 3
    assert d["index"] == [1]
    assert d["digits"] == []
    assert d["precision"] == rep.precision
    assert [x["N"] for x in d["levels"]] == [1, 2, 3]


def test_limit_even():
    rep = mzv_limit((2,), 5, 4, 3)
    assert rep.precision >= 1
    # S(p^N) is divisible by p^N here
    assert rep.value.with_precision(min(rep.precision, 3)).is_zero()


def test_trailing_zeros():
    # e1 e0 is minus the index (2) under the e0-shuffle
    a = mzv_limit("10", 3, 3, 4)
    b = mzv_limit((2,), 3, 3, 4)
    assert a.index is None
    assert a.as_dict()["word"] == "10"
    prec = min(a.precision, b.precision)
    assert (a.value + b.value).with_precision(prec).is_zero()


def test_limit_arguments():
    with pytest.raises(ValueError):
        mzv_limit((1,), 3, 4, 1)
    with pytest.raises(ValueError):
        mzv_limit((1,), 3, 4, 2, sign="auto")
    with pytest.raises(WordError):
        mzv_limit("00", 3, 4, 2)


def test_decide_sign():
    z3 = padic_from_rational(Fraction(1, 2), 5, 4)
    assert decide_sign(z3, z3) == "literal"
    assert decide_sign(z3, -z3) == "derived"
    with pytest.warns(UserWarning):
        assert decide_sign(Padic.zero(5, 4), z3) == "derived"
    with pytest.warns(UserWarning):
        assert decide_sign(z3, z3 * 2) == "derived"


def test_build_table_layers(monkeypatch):
    seen = []

    def fake_limit(idx, p, K, N_max, table=None, sign="derived", precision=None, **kw):
        seen.append((tuple(idx), sorted(table.entries), kw["target"]))
        v = padic_from_rational(len(idx), p, precision)
        return LimitReport("1", p, [], [], v, K, sign)

    monkeypatch.setattr("padicmzv.engine.mzv_limit", fake_limit)
    monkeypatch.setattr("padicmzv.engine.vanishes_identically", lambda idx: False)
    tab = build_table(5, 3, 4, 2)
    assert list(tab) == [(1,), (2,), (3,), (1, 1), (1, 2), (2, 1), (1, 1, 1)]
    for idx, known, _ in seen:
        assert all(len(k) < len(idx) for k in known), (idx, known)
    # no later layer reads the top one
    assert {idx: t for idx, _, t in seen}[(1, 1, 1)] == 4
    assert {idx: t for idx, _, t in seen}[(1, 2)] == 4 + 3 * 2
    assert tab.phi is not None
    assert tab.phi["11"] == 2
    assert tab.precision == working_precision(3, 4 + 3 * 2, 2) == 21


def test_build_table_failure(monkeypatch):
    def failing(idx, *a, **k):
        raise ConvergenceError("no", [(1, 0)])

    monkeypatch.setattr("padicmzv.engine.mzv_limit", failing)
    with pytest.raises(ConvergenceError) as exc:
        build_table(5, 3, 4, 2)
    assert "(3,)" in str(exc.value)
    assert exc.value.levels == [(1, 0)]
    with pytest.raises(ValueError):
        build_table(5, 2, 4, 2, sign="other")
    with pytest.raises(ValueError):
        build_table(5, 2, 4, 2, extra_levels=-1)


def test_empty_table_read():
    with pytest.raises(KeyError):
        tps((1, 1), 3, 3, table=MzvTable(3, None))


def test_working_precision():
    assert working_precision(3, 4, 3) == 4 + 3 * 4 + 2
    assert working_precision(1, 1, 2) < working_precision(2, 1, 2) < working_precision(2, 1, 3)


def test_vanishing():
    assert vanishes_identically((1,))
    assert vanishes_identically((1, 1, 1))
    assert vanishes_identically((4,))
    assert not vanishes_identically((3,))
    assert not vanishes_identically((2, 2))
    assert not vanishes_identically((1, 2))


def test_exact_entries():
    tab = MzvTable(5, 6)
    tab.add((1,), Fraction(0))
    tab.add((2,), 0)
    tab.add((3,), Fraction(1, 5))
    assert tab.zeta((1,)) == 0 and not isinstance(tab.zeta((1,)), Padic)
    assert not isinstance(tab.zeta((2,)), Padic)
    assert isinstance(tab.zeta((3,)), Padic)
    z = tab.padic((1,))
    assert isinstance(z, Padic) and z.is_zero() and z.absprec == 6
    assert tab.padic((3,)).valuation == -1
    with pytest.raises(ValueError):
        MzvTable(5, None).padic((1,))


def test_table_entry_known_zero():
    value, rep = table_entry((1, 1), 5, 3, 2, MzvTable(5, 12), precision=12)
    assert value == 0 and not isinstance(value, Padic)
    assert rep.exact
    assert rep.precision == 3
    assert [n for n, _ in rep.levels] == [1, 2]


def test_extra_levels(monkeypatch):
    # level n agrees with level n+1 to n+1 digits
    def fake_level(word, p, n, table, precision, flip):
        return n, padic_from_rational(sum(p**k for k in range(n + 1)), p, precision)

    monkeypatch.setattr("padicmzv.engine._level", fake_level)
    rep = mzv_limit((3,), 5, 4, 2, max_levels=8)
    assert [n for n, _ in rep.levels] == [1, 2, 3, 4, 5]
    assert rep.precision == 4
    rep = mzv_limit((3,), 5, 4, 2, max_levels=3)
    assert len(rep.levels) == 3
    assert rep.precision == 2
    rep = mzv_limit((3,), 5, 4, 2)
    assert len(rep.levels) == 2
    assert rep.precision == 1
    rep = mzv_limit((3,), 5, 2, 2, target=6, max_levels=8)
    assert len(rep.levels) == 7
    assert rep.precision == 6


def test_clear_caches():
    harmonic.bmhs_table("011", 10)
    restricted_composition_sum(2, 6, 5)
    assert harmonic._bmhs_cache and engine._composition_rows
    clear_caches()
    assert not harmonic._bmhs_cache
    assert not harmonic._mhs_cache
    assert not harmonic._recip_cache
    assert not engine._composition_rows


def test_real_table():
    # low-depth entries vanish exactly, so depth 2 is read from exact inputs
    tab = build_table(5, 3, 3, 3)
    assert list(tab) == [(1,), (2,), (3,), (1, 1), (1, 2), (2, 1), (1, 1, 1)]
    for idx in ((1,), (2,), (1, 1), (1, 1, 1)):
        assert is_exact_zero(tab.zeta(idx)), idx
    for idx in ((3,), (1, 2), (2, 1)):
        assert tab.reports[idx].precision >= 1, idx
    prec = min(tab.reports[(3,)].precision, tab.reports[(1, 2)].precision)
    assert (tab.zeta((1, 2)) - tab.zeta((3,))).with_precision(prec).is_zero()
    assert is_grouplike(tab.phi) == (True, None)
    assert is_grouplike(phi_from_table(tab, 3)) == (True, None)


def test_compute_zeta_depth2():
    rep = compute_zeta((1, 2), 5, 4, 3)
    assert rep.index == (1, 2)
    assert 1 <= rep.precision <= 4
    assert len(rep.levels) == 3
