import itertools
import random

import pytest
from hypothesis import given, strategies as st

from adtlab.core import PropSet, Trace, Valuation, counterdepth
from adtlab.semantics import enumerate_traces, member
from adtlab.witness import (
    W,
    WMINUS,
    WPLUS,
    ab_props,
    build_witness_adt,
    in_witness,
    measure,
    recursive_witness_sets,
    swap,
    trace_to_word,
    word_to_trace,
)


def _words_upto(maxlen):
    for n in range(maxlen + 1):
        for tup in itertools.product("ab", repeat=n):
            yield "".join(tup)


def _language(t, maxlen):
    return {trace_to_word(w) for w in enumerate_traces(t, maxlen)}


def _predicate_set(k, kind, maxlen):
    return {w for w in _words_upto(maxlen) if in_witness(w, k, kind)}


def test_measure_counts_balance():
    assert measure("") == 0
    assert measure("ab") == 0
    assert measure("aab") == 1
    assert measure("b") == -1
    assert measure(word_to_trace("abba")) == 0


@given(st.text(alphabet="ab", max_size=8), st.text(alphabet="ab", max_size=8))
def test_measure_is_additive(u, v):
    assert measure(u + v) == measure(u) + measure(v)


def test_in_witness_spot_values():
    assert in_witness("ab", 1)
    assert not in_witness("ba", 1)
    assert not in_witness("", 1)
    assert in_witness("abab", 1)
    assert not in_witness("aabb", 1)
    assert in_witness("aabb", 2)
    assert in_witness("a", 1, WPLUS)
    assert not in_witness("a", 2, WPLUS)
    assert in_witness("b", 1, WMINUS)
    assert not in_witness("ab", 1, WPLUS)


def test_in_witness_requires_positive_level():
    with pytest.raises(ValueError):
        in_witness("ab", 0)


def test_word_trace_conversions():
    assert trace_to_word(word_to_trace("abba")) == "abba"
    assert word_to_trace("") == Trace(ab_props())
    with pytest.raises(ValueError):
        word_to_trace("ac")
    with pytest.raises(ValueError):
        trace_to_word(Trace(PropSet(("p", "q"))))


def test_swap_on_words_and_traces():
    assert swap("aab") == "bba"
    assert swap(word_to_trace("ab")) == word_to_trace("ba")
    assert swap(swap("abba")) == "abba"


def test_swap_on_trees_is_an_involution_with_swapped_language():
    t, plus, minus = build_witness_adt(1)
    for tree in (t, plus, minus):
        assert swap(swap(tree)) == tree
    assert _language(swap(plus), 5) == {swap(w) for w in _language(plus, 5)}


def test_level_one_languages():
    t, plus, minus = build_witness_adt(1)
    assert _language(t, 6) == {"ab", "abab", "ababab"}
    assert _language(plus, 5) == {"a", "aba", "ababa"}
    assert _language(minus, 5) == {"b", "bab", "babab"}


def test_tree_languages_match_the_predicate():
    for k in (1, 2):
        t, plus, minus = build_witness_adt(k)
        for tree, kind in ((t, W), (plus, WPLUS), (minus, WMINUS)):
            assert _language(tree, 6) == _predicate_set(k, kind, 6), (k, kind)


def test_depth_grows_linearly_with_level():
    for k in (1, 2, 3):
        t, plus, minus = build_witness_adt(k)
        assert counterdepth(t) == k + 1
        assert counterdepth(plus) == k + 1
        assert counterdepth(minus) == k + 1


def test_recursive_sets_match_the_predicate():
    for k in (1, 2):
        got = dict(zip((W, WPLUS, WMINUS), recursive_witness_sets(k, 6)))
        for kind in (W, WPLUS, WMINUS):
            assert got[kind] == _predicate_set(k, kind, 6), (k, kind)


def test_levels_are_disjoint_enough():
    # a word of exact peak k sits in W_k only
    assert in_witness("aabb", 2) and not in_witness("aabb", 3)
    assert in_witness("ab", 1) and not in_witness("ab", 2)


def test_build_witness_requires_positive_level():
    with pytest.raises(ValueError):
        build_witness_adt(0)
