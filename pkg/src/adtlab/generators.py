"""Generator sets for shallow trees and what they buy us.

A generator set of a language L is a finite set of non-empty traces such
that every non-empty trace of L lies above some generator in the lift
order.  For trees of counterdepth at most 1 the structural gen() below
computes one, which yields:

* the small model property: a non-empty language has a member no longer
  than the tree's size (nonempty_smp),
* a normal form for depth-0 trees: an OR over SANDs of exact-valuation
  leaves (normalize_adt0),
* exact equivalence of depth-0 trees by cross-membership of generators
  (equiv_adt0) — depth-0 languages are upward closed, so the generator
  sets determine them completely.

gen() still computes on deeper trees but the result is flagged unsound;
no finite generator set exists for e.g. the language (ab)^+.
"""

from __future__ import annotations

from dataclasses import dataclass

from adtlab.core import (
    Adt,
    AndN,
    BudgetError,
    Bottom,
    Counter,
    Eps,
    Leaf,
    OrN,
    SandN,
    Trace,
    counterdepth,
    exact_formula,
    satisfying,
    to_binary,
)
from adtlab.semantics import is_lift, member

SHUFFLE_CAP = 10**5


def shuffle(t1: Trace, t2: Trace, cap: int = SHUFFLE_CAP) -> set[Trace]:
    """All interleavings of the two traces, plus the merged words obtained
    by fusing equal head letters (v·u1 and v·u2 also combine into v·w for
    w interleaving u1 and u2)."""
    if t1.props != t2.props:
        raise ValueError("shuffle requires traces over the same PropSet")
    props = t1.props
    memo: dict[tuple, frozenset] = {}

    def go(l1: tuple, l2: tuple) -> frozenset:
        if not l1:
            return frozenset((l2,))
        if not l2:
            return frozenset((l1,))
        key = (l1, l2)
        got = memo.get(key)
        if got is not None:
            return got
        out = set()
        for w in go(l1[1:], l2):
            out.add((l1[0],) + w)
        for w in go(l1, l2[1:]):
            out.add((l2[0],) + w)
        if l1[0] == l2[0]:
            for w in go(l1[1:], l2[1:]):
                out.add((l1[0],) + w)
        if len(out) > cap:
            raise BudgetError(f"shuffle produced more than {cap} traces")
        result = frozenset(out)
        memo[key] = result
        return result

    return {Trace(props, letters) for letters in go(t1.letters, t2.letters)}


@dataclass(frozen=True)
class GenSet:
    """A computed generator set.  sound is False when the origin tree has
    counterdepth above 1, where no guarantee holds."""

    origin: Adt
    traces: frozenset
    sound: bool

    def ordered(self) -> list[Trace]:
        return sorted(self.traces, key=Trace.sort_key)


def gen(t: Adt, cap: int = SHUFFLE_CAP) -> GenSet:
    """The structural generator set of t.

    Leaves contribute their satisfying valuations as one-letter traces,
    OR unions, SAND concatenates (joined by the other side's generators
    when one side accepts the empty trace), AND shuffles then filters
    through membership, and a counter C(t1,t2) keeps the generators
    of t1 that t2 rejects.  n-ary nodes are folded to binary first.
    """
    binary = to_binary(t)
    memo: dict[int, frozenset] = {}

    def go(node: Adt) -> frozenset:
        got = memo.get(id(node))
        if got is not None:
            return got
        if isinstance(node, Eps):
            out = frozenset()
        elif isinstance(node, Leaf):
            out = frozenset(
                Trace(node.props, (v,)) for v in satisfying(node.props, node.formula)
            )
        elif isinstance(node, OrN):
            acc: set = set()
            for c in node.children:
                acc |= go(c)
            out = frozenset(acc)
        elif isinstance(node, SandN):
            left, right = node.children
            gl, gr = go(left), go(right)
            acc = {a + b for a in gl for b in gr}
            # ε-absorption: when one side accepts ε, the other side's
            # generators are concatenations with the empty piece
            if member(left, _eps_of(left)):
                acc |= gr
            if member(right, _eps_of(right)):
                acc |= gl
            out = frozenset(acc)
        elif isinstance(node, AndN):
            left, right = node.children
            gl, gr = go(left), go(right)
            acc = set()
            for a in gl:
                for b in gr:
                    for w in shuffle(a, b, cap):
                        if member(node, w):
                            acc.add(w)
                    if len(acc) > cap:
                        raise BudgetError(f"gen produced more than {cap} traces")
            if member(left, _eps_of(left)):
                acc |= gr
            if member(right, _eps_of(right)):
                acc |= gl
            out = frozenset(acc)
        elif isinstance(node, Counter):
            out = frozenset(g for g in go(node.attack) if not member(node.defense, g))
        else:
            raise TypeError(f"not a tree node: {node!r}")
        if len(out) > cap:
            raise BudgetError(f"gen produced more than {cap} traces")
        memo[id(node)] = out
        return out

    return GenSet(origin=t, traces=go(binary), sound=counterdepth(t) <= 1)


def _eps_of(node: Adt) -> Trace:
    return Trace(node.props, ())


def nonempty_smp(t: Adt) -> tuple[bool, Trace | None]:
    """Small-model non-emptiness for counterdepth ≤ 1: the language is
    non-empty iff it contains ε or the generator set is non-empty.  On a
    yes answer the second component is a witness of length ≤ size(t)."""
    if counterdepth(t) > 1:
        raise ValueError(
            "small-model non-emptiness requires counterdepth <= 1"
            " (use decision.nonempty with the bounded method)"
        )
    eps = _eps_of(t)
    if member(t, eps):
        return True, eps
    g = gen(t)
    if g.traces:
        return True, min(g.traces, key=Trace.sort_key)
    return False, None


def normalize_adt0(t: Adt) -> Adt:
    """Equivalent normal form for a depth-0 tree: an OR whose disjuncts
    are SANDs of exact-valuation leaves (one per generator), plus an Eps
    disjunct when the language contains the empty trace."""
    if counterdepth(t) != 0:
        raise ValueError("normal form applies to counterdepth-0 trees only")
    props = t.props
    disjuncts: list[Adt] = [
        SandN(tuple(Leaf(exact_formula(v), props) for v in g))
        for g in sorted(gen(t).traces, key=Trace.sort_key)
    ]
    if member(t, _eps_of(t)):
        disjuncts.append(Eps(props))
    if not disjuncts:
        disjuncts.append(SandN((Leaf(Bottom(), props),)))
    return OrN(tuple(disjuncts))


def equiv_adt0(t1: Adt, t2: Adt) -> bool:
    """Exact language equivalence for depth-0 trees.  Both languages are
    the upward closures of their generator sets (plus possibly ε), so
    checking ε agreement and generator cross-membership decides."""
    if counterdepth(t1) != 0 or counterdepth(t2) != 0:
        raise ValueError("exact generator equivalence applies to counterdepth 0 only")
    if t1.props != t2.props:
        raise ValueError("equivalence requires trees over the same PropSet")
    eps = _eps_of(t1)
    if member(t1, eps) != member(t2, eps):
        return False
    if not all(member(t2, g) for g in gen(t1).traces):
        return False
    return all(member(t1, g) for g in gen(t2).traces)


def distinguishing_trace(t1: Adt, t2: Adt) -> Trace | None:
    """A trace on which two depth-0 trees disagree, None if equivalent."""
    if counterdepth(t1) != 0 or counterdepth(t2) != 0:
        raise ValueError("exact generator equivalence applies to counterdepth 0 only")
    eps = _eps_of(t1)
    if member(t1, eps) != member(t2, eps):
        return eps
    candidates = [g for g in gen(t1).traces if not member(t2, g)]
    candidates += [g for g in gen(t2).traces if not member(t1, g)]
    if candidates:
        return min(candidates, key=Trace.sort_key)
    return None


def has_lift_witness(genset: GenSet, trace: Trace) -> bool:
    """Whether some generator lies below the given non-empty trace."""
    return any(is_lift(g, trace) for g in genset.traces)
