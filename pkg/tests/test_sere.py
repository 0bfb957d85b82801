import random

import pytest

from adtlab.core import (
    Counter,
    PropSet,
    Trace,
    Valuation,
    counterdepth,
    empty_trace,
    size,
)
from adtlab.semantics import member
from adtlab.sere import (
    SCompl,
    SConcat,
    SEmpty,
    SEps,
    SInter,
    SLetter,
    SUnion,
    adt_to_sere,
    node_count,
    sere_member,
    sere_to_adt,
    sigma_star,
)
from adtlab.textio import parse_adt, parse_sere
from corpus import P1, P2, random_sere, random_tree, traces_upto


def _trace(props, *masks):
    return Trace(props, tuple(Valuation(props, m) for m in masks))


def test_sigma_star_accepts_everything():
    star = sigma_star()
    for w in traces_upto(P2, 3):
        assert sere_member(star, w)


def test_atom_languages():
    assert not any(sere_member(SEmpty(), w) for w in traces_upto(P1, 3))
    assert sere_member(SEps(), empty_trace(P1))
    assert not sere_member(SEps(), _trace(P1, 0))
    a = SLetter(Valuation(P1, 1))
    assert sere_member(a, _trace(P1, 1))
    assert not sere_member(a, _trace(P1, 0))
    assert not sere_member(a, _trace(P1, 1, 1))


def test_boolean_and_concat_operations():
    a = SLetter(Valuation(P1, 1))
    b = SLetter(Valuation(P1, 0))
    ab = SConcat(a, b)
    assert sere_member(ab, _trace(P1, 1, 0))
    assert not sere_member(ab, _trace(P1, 0, 1))
    both = SInter(SConcat(a, sigma_star()), SConcat(sigma_star(), b))
    assert sere_member(both, _trace(P1, 1, 0))
    assert not sere_member(both, _trace(P1, 1, 1))
    neither = SCompl(SUnion(a, b))
    assert sere_member(neither, empty_trace(P1))
    assert not sere_member(neither, _trace(P1, 1))
    assert sere_member(neither, _trace(P1, 1, 1))


def test_contradiction_is_empty():
    a = SLetter(Valuation(P1, 1))
    e = SInter(a, SCompl(a))
    assert not any(sere_member(e, w) for w in traces_upto(P1, 3))


def test_node_count():
    e = SConcat(SCompl(SEmpty()), SLetter(Valuation(P1, 1)))
    assert node_count(e) == 4


def test_tree_to_expression_agrees_with_member():
    rng = random.Random(31)
    for i in range(60):
        props = P2 if i % 3 == 0 else P1
        t = random_tree(rng, props, 5, 2)
        e = adt_to_sere(t)
        for w in traces_upto(props, 3):
            assert sere_member(e, w) == member(t, w), t


def test_expression_to_tree_agrees_with_member():
    rng = random.Random(37)
    for i in range(60):
        props = P2 if i % 3 == 0 else P1
        e = random_sere(rng, props, 5)
        t = sere_to_adt(e, props=props)
        for w in traces_upto(props, 3):
            assert member(t, w) == sere_member(e, w), e


def test_double_round_trips_preserve_language():
    rng = random.Random(41)
    for _ in range(25):
        t = random_tree(rng, P1, 4, 1)
        t2 = sere_to_adt(adt_to_sere(t), props=P1)
        for w in traces_upto(P1, 3):
            assert member(t2, w) == member(t, w)
    for _ in range(25):
        e = random_sere(rng, P1, 4)
        e2 = adt_to_sere(sere_to_adt(e, props=P1))
        for w in traces_upto(P1, 3):
            assert sere_member(e2, w) == sere_member(e, w)


def test_tree_size_is_linear_in_expression_size():
    rng = random.Random(43)
    for i in range(120):
        props = P2 if i % 2 else P1
        e = random_sere(rng, props, 6)
        t = sere_to_adt(e, props=props)
        assert size(t) <= 8 * node_count(e), e


def test_depth_grows_only_under_boolean_operators():
    def depth_budget(e):
        if isinstance(e, (SEmpty, SEps, SLetter)):
            return 1
        if isinstance(e, (SUnion, SConcat)):
            return max(depth_budget(e.left), depth_budget(e.right))
        if isinstance(e, SInter):
            return max(depth_budget(e.left), depth_budget(e.right)) + 2
        if isinstance(e, SCompl):
            return depth_budget(e.arg) + 1
        raise TypeError(e)

    rng = random.Random(47)
    for _ in range(80):
        e = random_sere(rng, P1, 6)
        assert counterdepth(sere_to_adt(e, props=P1)) <= depth_budget(e)


def test_sere_to_adt_needs_props_when_no_letters():
    with pytest.raises(ValueError):
        sere_to_adt(sigma_star())
    t = sere_to_adt(sigma_star(), props=P1)
    assert all(member(t, w) for w in traces_upto(P1, 2))


def test_parse_and_convert_pipeline():
    e = parse_sere("!0 . {p}", P1)
    t = sere_to_adt(e, props=P1)
    reference = parse_adt("[p]", P1)
    for w in traces_upto(P1, 3):
        assert member(t, w) == member(reference, w)
