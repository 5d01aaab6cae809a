from __future__ import annotations

import random
from fractions import Fraction

import pytest

from padicmzv import MissingEntryError, WordError, cur_table
from padicmzv._test import synthetic_table
from padicmzv.adjoint import (
    MzvTable,
    adjoint_mzv,
    adjoint_mzv_via_conjugation,
    phi_coefficient,
    phi_from_table,
    zeta_word,
)
from padicmzv.arith import Padic, binomial_negative, is_exact_zero
from padicmzv.words import depth, words_up_to


@pytest.fixture
def table():
    return synthetic_table(5, 5, random.Random(42))


def test_trivial_words(table):
    assert adjoint_mzv("1", None) == 1
    assert adjoint_mzv("000", None) == 0
    assert adjoint_mzv("010", None) == 0
    assert adjoint_mzv("10", None) == 0
    assert adjoint_mzv_via_conjugation("1", table) == 1
    assert adjoint_mzv_via_conjugation("010", table) == 0


@pytest.mark.parametrize("w", [w for w in words_up_to(5) if w])
def test_closed_formula(table, w):
    assert adjoint_mzv(w, table) == adjoint_mzv_via_conjugation(w, table), w


@pytest.mark.parametrize("w", [w for w in words_up_to(5) if depth(w) > 1])
def test_reads_lower_depth(table, w):
    table._adjoint.clear()
    with table.logging_reads() as reads:
        adjoint_mzv(w, table)
    assert all(len(i) < depth(w) for i in reads), (w, reads)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_two_e1(table, n):
    w = "1" + "0" * (n - 1) + "1"
    z = table.zeta((n,))
    assert adjoint_mzv(w, table) == (1 + (-1) ** n) * z
    for b in (1, 2):
        w = "1" + "0" * (n - 1) + "1" + "0" * b
        assert adjoint_mzv(w, table) == binomial_negative(n, b) * table.zeta((n + b,))


def test_missing(table):
    small = MzvTable(5, None)
    with pytest.raises(MissingEntryError) as exc:
        adjoint_mzv("11", small)
    assert "(1,)" in str(exc.value)
    with pytest.raises(MissingEntryError):
        adjoint_mzv("11", None)


def test_phi(table):
    assert phi_coefficient(table, "") == 1
    assert phi_coefficient(table, "000") == 0
    assert phi_coefficient(table, "10") == -phi_coefficient(table, "01")
    assert phi_coefficient(table, "01") == -table.zeta((2,))
    assert phi_coefficient(table, "011") == table.zeta((1, 2))
    phi = phi_from_table(table, 4)
    assert phi["110"] == -phi["011"] - phi["101"]
    assert zeta_word("011", table) == table.zeta((1, 2))
    assert zeta_word("10", table) == -table.zeta((2,))
    with pytest.raises(WordError):
        zeta_word("00", table)


def test_table():
    tab = MzvTable(3, 6)
    tab.add((1,), Fraction(1, 3))
    assert tab.zeta((1,)) == Fraction(1, 3)
    assert (1,) in tab
    assert len(tab) == 1
    with pytest.warns(UserWarning):
        tab.add((1,), 0)
    tab.add((1, 1), 2)
    tab.add((2,), 5)
    assert list(tab) == [(1,), (2,), (1, 1)]
    assert tab.max_depth == 2
    assert tab.max_weight == 2
    other = tab.copy()
    other.add((3,), 1)
    assert (3,) not in tab
    with tab.activated():
        assert cur_table.get() is tab
    assert cur_table.get(None) is None


def test_exact_zeros_stay_exact():
    tab = MzvTable(5, 8)
    tab.add((1,), 0)
    tab.add((2,), Fraction(0))
    tab.add((3,), Fraction(2, 5))
    assert isinstance(tab.zeta((3,)), Padic)
    # weight-3 adjoints only read weight <= 2
    for w in ("011", "101", "110"):
        a = adjoint_mzv(w, tab)
        assert is_exact_zero(a), (w, a)
