import random

import pytest

from adtlab.core import (
    AndN,
    BudgetError,
    Counter,
    Eps,
    Leaf,
    OrN,
    PropSet,
    SandN,
    Top,
    Trace,
    Valuation,
    Var,
    empty_trace,
    ge,
    leaves_count,
    size,
)
from adtlab.generators import (
    distinguishing_trace,
    equiv_adt0,
    gen,
    has_lift_witness,
    nonempty_smp,
    normalize_adt0,
    shuffle,
)
from adtlab.semantics import enumerate_traces, is_lift, member
from adtlab.textio import parse_adt
from corpus import (
    P1,
    P2,
    random_depth0,
    random_depth1,
    random_small_tree,
    random_tree,
    traces_upto,
)


def _trace(props, *masks):
    return Trace(props, tuple(Valuation(props, m) for m in masks))


# ---------------------------------------------------------------------------
# shuffle


def _shuffle_oracle(t1: Trace, t2: Trace) -> set[Trace]:
    """Straight from the defining equations: interleave distinct heads,
    and a shared head may also be taken once for both sides."""
    props = t1.props
    if len(t1) == 0:
        return {t2}
    if len(t2) == 0:
        return {t1}
    v, u = t1.letters[0], t2.letters[0]
    out = set()
    for rest in _shuffle_oracle(Trace(props, t1.letters[1:]), t2):
        out.add(Trace(props, (v,) + rest.letters))
    for rest in _shuffle_oracle(t1, Trace(props, t2.letters[1:])):
        out.add(Trace(props, (u,) + rest.letters))
    if v == u:
        for rest in _shuffle_oracle(
            Trace(props, t1.letters[1:]), Trace(props, t2.letters[1:])
        ):
            out.add(Trace(props, (v,) + rest.letters))
    return out


def test_shuffle_matches_recursive_oracle():
    rng = random.Random(3)
    letters = [Valuation(P2, m) for m in range(4)]
    for _ in range(60):
        t1 = Trace(P2, tuple(rng.choice(letters) for _ in range(rng.randint(0, 4))))
        t2 = Trace(P2, tuple(rng.choice(letters) for _ in range(rng.randint(0, 4))))
        assert shuffle(t1, t2) == _shuffle_oracle(t1, t2)


def test_shuffle_merges_equal_letters():
    a = _trace(P1, 1)
    assert shuffle(a, a) == {_trace(P1, 1, 1), a}
    assert shuffle(a, empty_trace(P1)) == {a}
    assert shuffle(empty_trace(P1), empty_trace(P1)) == {empty_trace(P1)}


def test_shuffle_cap():
    long = _trace(P2, *([1, 2] * 6))
    other = _trace(P2, *([2, 1] * 6))
    with pytest.raises(BudgetError):
        shuffle(long, other, cap=100)


# ---------------------------------------------------------------------------
# gen


def test_gen_of_leaf_lists_satisfying_letters():
    g = gen(Leaf(Var("p"), P2))
    assert g.traces == {_trace(P2, 1), _trace(P2, 3)}
    assert g.sound


def test_gen_holds_only_nonempty_generators():
    # ε never appears as a generator: the empty trace is checked directly
    assert gen(Eps(P1)).traces == frozenset()
    assert gen(parse_adt("ETRUE", P1)).traces == {_trace(P1, 0), _trace(P1, 1)}


def test_gen_concat_absorbs_epsilon_sides():
    # a left factor that accepts ε must not force every generator to
    # carry one of its letters
    t = parse_adt("SAND(ETRUE, [p])", P1)
    g = gen(t)
    assert _trace(P1, 1) in g.traces
    assert has_lift_witness(g, _trace(P1, 0, 1))


def test_gen_parallel_absorbs_epsilon_sides():
    t = parse_adt("AND(EPS, [p])", P1)
    assert gen(t).traces == {_trace(P1, 1)}


def test_gen_subset_of_language_and_bounded_by_leaves():
    rng = random.Random(7)
    for i in range(150):
        props = P2 if i % 2 else P1
        t = random_depth1(rng, props, 6)
        g = gen(t)
        assert g.sound
        for w in g.traces:
            assert member(t, w), (t, w)
            assert len(w) <= leaves_count(t)


def test_gen_covers_language_through_lifts():
    rng = random.Random(19)
    for _ in range(80):
        t = random_depth1(rng, P1, 5)
        g = gen(t)
        for w in enumerate_traces(t, 4):
            if len(w) == 0:
                continue
            assert has_lift_witness(g, w), (t, w)


def test_gen_deeper_trees_are_flagged_unsound():
    t = Counter(Eps(P1), Counter(Eps(P1), Leaf(Var("p"), P1)))
    assert not gen(t).sound


def test_fold_direction_does_not_change_the_closure():
    rng = random.Random(29)
    for _ in range(25):
        t1, t2, t3 = (random_depth0(rng, P1, 3) for _ in range(3))
        left = AndN((AndN((t1, t2)), t3))
        right = AndN((t1, AndN((t2, t3))))
        gl, gr = gen(left), gen(right)
        for w in traces_upto(P1, 4):
            in_left = (len(w) == 0 and member(left, w)) or (
                len(w) > 0 and has_lift_witness(gl, w)
            )
            in_right = (len(w) == 0 and member(right, w)) or (
                len(w) > 0 and has_lift_witness(gr, w)
            )
            assert in_left == in_right == member(left, w)


# ---------------------------------------------------------------------------
# small model property


def test_smp_agrees_with_bounded_enumeration():
    rng = random.Random(11)
    for _ in range(150):
        t = random_small_tree(rng, P1, 5, 1, size_cap=12)
        found, w = nonempty_smp(t)
        assert found == (enumerate_traces(t, size(t)) != [])
        if found:
            assert member(t, w)
            assert len(w) <= size(t)


def test_smp_prefers_the_empty_witness():
    found, w = nonempty_smp(parse_adt("ETRUE", P1))
    assert found and w == empty_trace(P1)


def test_smp_on_empty_languages():
    assert nonempty_smp(Leaf(Var("p"), P1).__class__(parse_adt("[false]", P1).formula, P1))[0] is False
    assert nonempty_smp(parse_adt("AND(STRICT(!p), STRICT(p))", P1)) == (False, None)


def test_smp_refuses_deep_trees():
    t = Counter(Eps(P1), Counter(Eps(P1), Eps(P1)))
    with pytest.raises(ValueError):
        nonempty_smp(t)


# ---------------------------------------------------------------------------
# depth-0 normal form and equivalence


def test_normalize_preserves_bounded_language():
    rng = random.Random(13)
    for _ in range(60):
        t = random_depth0(rng, P1, 4)
        n = normalize_adt0(t)
        assert enumerate_traces(n, 4) == enumerate_traces(t, 4)


def test_normalize_shape_is_flat():
    n = normalize_adt0(parse_adt("OR([p], EPS)", P1))
    assert isinstance(n, OrN)
    for d in n.children:
        assert isinstance(d, (SandN, Eps))


def test_equiv_adt0_examples():
    p = Leaf(Var("p"), P1)
    assert equiv_adt0(OrN((p, p)), p)
    assert not equiv_adt0(p, Leaf(Top(), P1))
    assert equiv_adt0(SandN((Leaf(Top(), P1), Leaf(Top(), P1))), ge(P1, 2))


def test_equiv_adt0_rejects_deeper_trees():
    with pytest.raises(ValueError):
        equiv_adt0(parse_adt("STRICT(p)", P1), Eps(P1))


def test_distinguishing_trace_separates():
    rng = random.Random(17)
    seen = 0
    for _ in range(80):
        t1 = random_depth0(rng, P1, 4)
        t2 = random_depth0(rng, P1, 4)
        if equiv_adt0(t1, t2):
            assert distinguishing_trace(t1, t2) is None
        else:
            w = distinguishing_trace(t1, t2)
            seen += 1
            assert member(t1, w) != member(t2, w)
    assert seen > 10  # the corpus really exercises the separating path


def test_gen_ordered_is_deterministic():
    g = gen(parse_adt("OR([p], [q], EPS)", P2))
    assert g.ordered() == sorted(g.traces, key=Trace.sort_key)
