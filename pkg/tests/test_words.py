from __future__ import annotations

from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from padicmzv import WordError
from padicmzv._test import brute_force_segments
from padicmzv.words import (
    WordPoly,
    antipode,
    blocks,
    contract,
    depth,
    e0_tail_expansion,
    enumerate_e1_segments,
    index_to_word,
    indices_up_to,
    parse_index,
    parse_word,
    shuffle,
    swap_letters,
    weak_compositions,
    word_to_index,
    words_up_to,
)

words = st.text(alphabet="01", max_size=6)
indices = st.lists(st.integers(min_value=1, max_value=4), min_size=1, max_size=4).map(tuple)


def test_index_words():
    assert index_to_word((1,)) == "1"
    assert index_to_word((2,)) == "01"
    assert index_to_word((1, 2)) == "011"
    assert index_to_word((3, 1)) == "1001"
    assert word_to_index("011") == (1, 2)
    assert word_to_index("1001") == (3, 1)


@given(indices)
def test_index_word_inverse(idx):
    w = index_to_word(idx)
    assert word_to_index(w) == idx
    assert len(w) == sum(idx)
    assert depth(w) == len(idx)


def test_bad_words():
    with pytest.raises(WordError):
        index_to_word((0,))
    with pytest.raises(WordError):
        index_to_word(())
    with pytest.raises(WordError):
        word_to_index("10")
    with pytest.raises(WordError):
        word_to_index("")
    with pytest.raises(WordError):
        parse_word("012")
    with pytest.raises(WordError):
        parse_index("1,x")
    with pytest.raises(WordError):
        parse_index("0")


def test_parse():
    assert parse_word("-") == ""
    assert parse_word(" 0101 ") == "0101"
    assert parse_index("1,2") == (1, 2)
    assert parse_index("3") == (3,)


def test_blocks():
    assert blocks("0110") == (2, 1, 2)
    assert blocks("1") == (1, 1)
    assert blocks("000") == (4,)
    assert swap_letters("0110") == "1001"


def test_segment_counts():
    assert len(enumerate_e1_segments("101")) == 4
    assert len(enumerate_e1_segments("100")) == 3
    assert enumerate_e1_segments("000") == []
    assert enumerate_e1_segments("101")[0] == ((0, 3),)
    assert enumerate_e1_segments("1") == [((0, 1),)]


@given(words)
def test_segments_brute_force(w):
    assert enumerate_e1_segments(w) == brute_force_segments(w), w


@given(words)
def test_segments_shape(w):
    for segs in enumerate_e1_segments(w):
        c = contract(w, segs)
        assert depth(c) == len(segs), (w, segs)
        assert len(c) == len(w) - sum(t - s for s, t in segs) + len(segs)


def test_contract():
    assert contract("101", ((0, 1), (2, 3))) == "101"
    assert contract("101", ((0, 3),)) == "1"
    assert contract("0110", ((1, 3),)) == "010"
    with pytest.raises(WordError):
        contract("101", ((0, 1),))
    with pytest.raises(WordError):
        contract("101", ((1, 2),))
    with pytest.raises(WordError):
        contract("101", ())


def test_shuffle():
    assert shuffle("0", "1") == {"01": 1, "10": 1}
    assert shuffle("1", "1") == {"11": 2}
    assert shuffle("", "01") == {"01": 1}
    assert shuffle("01", "1") == {"011": 2, "101": 1}


@given(words, words)
def test_shuffle_size(u, v):
    res = shuffle(u, v)
    assert sum(res.values()) == comb(len(u) + len(v), len(u))
    assert res == shuffle(v, u)


@given(st.text(alphabet="01", max_size=3), st.text(alphabet="01", max_size=3), words)
def test_shuffle_associative(u, v, w):
    left = shuffle(u, v).shuffle(WordPoly.of(w))
    right = WordPoly.of(u).shuffle(shuffle(v, w))
    assert left == right


def test_word_poly():
    a = WordPoly.of("0") + WordPoly.of("1", 2)
    assert a == {"0": 1, "1": 2}
    assert (a + WordPoly.of("0", -1)) == {"1": 2}
    assert a.scale(0) == {}
    assert WordPoly.of("0").shuffle(WordPoly.of("1")) == {"01": 1, "10": 1}


def test_antipode():
    assert antipode("01") == (1, "10")
    assert antipode("011") == (-1, "110")


def test_enumeration():
    assert list(words_up_to(1)) == ["", "0", "1"]
    assert len(list(words_up_to(4))) == 31
    assert indices_up_to(2) == [(1,), (2,), (1, 1)]
    assert len(indices_up_to(4)) == 15
    assert list(weak_compositions(2, 2)) == [(0, 2), (1, 1), (2, 0)]
    assert list(weak_compositions(0, 0)) == [()]
    assert list(weak_compositions(1, 0)) == []


def test_tail_expansion():
    assert e0_tail_expansion("011") == ((1, "011"),)
    assert e0_tail_expansion("10") == ((-1, "01"),)
    # e1 e1 e0: -(e0 e1 e1) - (e1 e0 e1)
    assert dict((w, c) for c, w in e0_tail_expansion("110")) == {"011": -1, "101": -1}
    with pytest.raises(WordError):
        e0_tail_expansion("00")
