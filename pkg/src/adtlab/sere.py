"""Star-free extended regular expressions and the two-way tree translation.

The expression language has the empty set, the empty word, single
letters, union, concatenation, intersection, and complement (relative to
all words) — no Kleene star, so all-words is written as the complement
of the empty set.

Both translations are structural: trees map letter-by-letter onto
expressions (the each-operator expands into its union-of-intersections
form), and expressions map back onto trees with a constant size factor.
"""

from __future__ import annotations

from dataclasses import dataclass

from adtlab.core import (
    Adt,
    AndN,
    Bottom,
    Counter,
    Eps,
    Leaf,
    OrN,
    PropSet,
    SandN,
    Trace,
    Valuation,
    cap,
    co,
    satisfying,
    strict_val,
)


class Sere:
    """Base class of star-free expression nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class SEmpty(Sere):
    pass


@dataclass(frozen=True)
class SEps(Sere):
    pass


@dataclass(frozen=True)
class SLetter(Sere):
    val: Valuation


@dataclass(frozen=True)
class SUnion(Sere):
    left: Sere
    right: Sere


@dataclass(frozen=True)
class SConcat(Sere):
    left: Sere
    right: Sere


@dataclass(frozen=True)
class SInter(Sere):
    left: Sere
    right: Sere


@dataclass(frozen=True)
class SCompl(Sere):
    arg: Sere


def sigma_star() -> Sere:
    """All words, star-free style: the complement of the empty set."""
    return SCompl(SEmpty())


def node_count(e: Sere) -> int:
    if isinstance(e, (SEmpty, SEps, SLetter)):
        return 1
    if isinstance(e, SCompl):
        return 1 + node_count(e.arg)
    return 1 + node_count(e.left) + node_count(e.right)


def sere_member(e: Sere, trace: Trace) -> bool:
    """Decide whether the trace matches the expression, by memoized
    recursion over (node, substring)."""
    memo: dict[tuple, bool] = {}
    letters = trace.letters

    def matches(node: Sere, i: int, j: int) -> bool:
        key = (id(node), i, j)
        got = memo.get(key)
        if got is not None:
            return got
        if isinstance(node, SEmpty):
            out = False
        elif isinstance(node, SEps):
            out = i == j
        elif isinstance(node, SLetter):
            out = j == i + 1 and letters[i] == node.val
        elif isinstance(node, SUnion):
            out = matches(node.left, i, j) or matches(node.right, i, j)
        elif isinstance(node, SConcat):
            out = any(
                matches(node.left, i, m) and matches(node.right, m, j)
                for m in range(i, j + 1)
            )
        elif isinstance(node, SInter):
            out = matches(node.left, i, j) and matches(node.right, i, j)
        elif isinstance(node, SCompl):
            out = not matches(node.arg, i, j)
        else:
            raise TypeError(f"not an expression node: {node!r}")
        memo[key] = out
        return out

    return matches(e, 0, len(letters))


def adt_to_sere(t: Adt) -> Sere:
    """An expression with the same language as the tree.  A leaf becomes
    any-words followed by one of its satisfying letters; OR and SAND fold
    to binary unions/concatenations; a counter intersects with the
    complement; the each-operator expands n-ary — each child in turn
    matches the whole word while all others match prefixes — which is
    where the translation blows up."""
    memo: dict[int, Sere] = {}

    def go(node: Adt) -> Sere:
        got = memo.get(id(node))
        if got is not None:
            return got
        if isinstance(node, Eps):
            out: Sere = SEps()
        elif isinstance(node, Leaf):
            letters = [SLetter(v) for v in satisfying(node.props, node.formula)]
            out = SConcat(sigma_star(), _union(letters))
        elif isinstance(node, OrN):
            out = _fold(SUnion, [go(c) for c in node.children])
        elif isinstance(node, SandN):
            out = _fold(SConcat, [go(c) for c in node.children])
        elif isinstance(node, AndN):
            parts = [go(c) for c in node.children]
            choices = []
            for i, full in enumerate(parts):
                others = [
                    SConcat(p, sigma_star()) for j, p in enumerate(parts) if j != i
                ]
                choices.append(
                    SInter(full, _fold(SInter, others)) if others else full
                )
            out = _fold(SUnion, choices)
        elif isinstance(node, Counter):
            out = SInter(go(node.attack), SCompl(go(node.defense)))
        else:
            raise TypeError(f"not a tree node: {node!r}")
        memo[id(node)] = out
        return out

    return go(t)


def _union(parts: list[Sere]) -> Sere:
    if not parts:
        return SEmpty()
    return _fold(SUnion, parts)


def _fold(op, parts: list[Sere]) -> Sere:
    out = parts[0]
    for p in parts[1:]:
        out = op(out, p)
    return out


def sere_to_adt(e: Sere, props: PropSet | None = None) -> Adt:
    """A tree with the same language as the expression, linear in its
    size: letters become exact single-letter trees, concatenation becomes
    SAND, intersection and complement go through their counter-based
    encodings.  The alphabet is read off the expression's letters unless
    given explicitly."""
    if props is None:
        props = _infer_props(e)
        if props is None:
            raise ValueError("no letter in the expression to infer the alphabet from; pass props")

    def go(node: Sere) -> Adt:
        if isinstance(node, SEmpty):
            return Leaf(Bottom(), props)
        if isinstance(node, SEps):
            return Eps(props)
        if isinstance(node, SLetter):
            return strict_val(node.val)
        if isinstance(node, SUnion):
            return OrN((go(node.left), go(node.right)))
        if isinstance(node, SConcat):
            return SandN((go(node.left), go(node.right)))
        if isinstance(node, SInter):
            return cap(go(node.left), go(node.right))
        if isinstance(node, SCompl):
            return co(go(node.arg))
        raise TypeError(f"not an expression node: {node!r}")

    return go(e)


def _infer_props(e: Sere) -> PropSet | None:
    if isinstance(e, SLetter):
        return e.val.props
    if isinstance(e, SCompl):
        return _infer_props(e.arg)
    if isinstance(e, (SUnion, SConcat, SInter)):
        return _infer_props(e.left) or _infer_props(e.right)
    return None
