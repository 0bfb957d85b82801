import random

import pytest

from adtlab.core import Counter, Eps, Leaf, PropSet, Var, counterdepth, size
from adtlab.decision import (
    BOUNDED,
    GEN0_EXACT,
    GEN_SMP,
    NO,
    NO_UP_TO_BOUND,
    REDUCTION,
    YES,
    Verdict,
    equiv,
    nonempty,
)
from adtlab.semantics import enumerate_traces, member
from adtlab.textio import parse_adt
from adtlab.witness import build_witness_adt, trace_to_word
from corpus import P1, random_small_tree


def test_verdict_bounded_no_requires_bound():
    with pytest.raises(ValueError):
        Verdict(NO_UP_TO_BOUND, BOUNDED)
    Verdict(NO_UP_TO_BOUND, BOUNDED, bound=4)


def test_nonempty_exact_on_shallow_trees():
    v = nonempty(parse_adt("[p]", P1))
    assert (v.answer, v.method, v.depth) == (YES, GEN_SMP, 0)
    assert member(parse_adt("[p]", P1), v.witness)
    v = nonempty(parse_adt("C([p],[p])", P1))
    assert (v.answer, v.witness) == (NO, None)


def test_nonempty_auto_falls_back_to_bounded():
    t2 = build_witness_adt(2)[0]
    with pytest.raises(ValueError):
        nonempty(t2)  # depth 3 needs a bound
    v = nonempty(t2, maxlen=4)
    assert v.answer == YES and v.method == BOUNDED
    assert trace_to_word(v.witness) == "aabb"
    v = nonempty(t2, method="bounded", maxlen=3)
    assert (v.answer, v.bound) == (NO_UP_TO_BOUND, 3)


def test_nonempty_gen_method_rejects_deep_trees():
    t = Counter(Eps(P1), Counter(Eps(P1), Eps(P1)))
    with pytest.raises(ValueError):
        nonempty(t, method="gen")


def test_nonempty_methods_agree():
    rng = random.Random(3)
    for _ in range(60):
        t = random_small_tree(rng, P1, 5, 1, size_cap=10)
        exact = nonempty(t, method="gen")
        bounded = nonempty(t, method="bounded", maxlen=size(t))
        assert (exact.answer == YES) == (bounded.answer == YES)
        if exact.answer == YES:
            assert member(t, exact.witness) and member(t, bounded.witness)


def test_equiv_exact_at_depth_zero():
    v = equiv(parse_adt("OR([p],[p])", P1), parse_adt("[p]", P1))
    assert (v.answer, v.method, v.bound) == (YES, GEN0_EXACT, None)
    v = equiv(parse_adt("[p]", P1), parse_adt("ETRUE", P1))
    assert v.answer == NO
    assert member(parse_adt("[p]", P1), v.witness) != member(
        parse_adt("ETRUE", P1), v.witness
    )


def test_equiv_reduction_reports_depth():
    s = parse_adt("STRICT(p)", P1)
    v = equiv(s, s, maxlen=5)
    assert (v.answer, v.method, v.bound, v.depth) == (YES, REDUCTION, 5, 2)
    v = equiv(s, parse_adt("STRICT(!p)", P1), maxlen=5)
    assert v.answer == NO and v.witness is not None


def test_equiv_reduction_is_exact_for_depth_zero_operands():
    a = parse_adt("SAND([p],[p])", P1)
    b = parse_adt("AND([p],[p])", P1)
    v = equiv(a, b, method="reduction")
    assert (v.answer, v.bound, v.depth) == (NO, None, 1)
    assert member(a, v.witness) != member(b, v.witness)


def test_equiv_requires_maxlen_only_when_bounded():
    s = parse_adt("STRICT(p)", P1)
    with pytest.raises(ValueError):
        equiv(s, s)
    with pytest.raises(ValueError):
        equiv(s, s, method="bounded")


def test_equiv_rejects_mismatched_propsets():
    with pytest.raises(ValueError):
        equiv(Eps(P1), Eps(PropSet(("q",))))


def test_equiv_methods_agree_on_depth_zero_pairs():
    rng = random.Random(11)
    for _ in range(50):
        t1 = random_small_tree(rng, P1, 4, 0, size_cap=8)
        t2 = random_small_tree(rng, P1, 4, 0, size_cap=8)
        bound = max(size(t1), size(t2))
        answers = {
            equiv(t1, t2, method="gen0").answer,
            equiv(t1, t2, method="reduction").answer,
            equiv(t1, t2, method="bounded", maxlen=bound).answer,
        }
        assert len(answers) == 1, (t1, t2)


def test_equiv_bounded_yes_carries_its_bound():
    t2 = build_witness_adt(2)[0]
    v = equiv(t2, t2, maxlen=4)
    assert (v.answer, v.method, v.bound, v.depth) == (YES, REDUCTION, 4, 4)


def test_bounded_equiv_finds_least_difference():
    a = parse_adt("SAND([p],[p])", P1)
    b = parse_adt("AND([p],[p])", P1)
    v = equiv(a, b, method="bounded", maxlen=4)
    assert v.answer == NO
    assert len(v.witness) == 1  # {p} itself: parallel allows overlap
