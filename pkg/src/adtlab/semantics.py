"""Trace semantics of attack-defense trees.

Membership is decided by memoized recursion over (node, substring) pairs.
A trace belongs to a node's language as follows:

* ``Eps``     -- the trace is empty
* ``Leaf(f)`` -- the trace is non-empty and its last letter satisfies f
* ``OrN``     -- some child accepts the trace
* ``SandN``   -- the trace splits into consecutive (possibly empty) pieces,
                 one per child, each accepted by its child
* ``AndN``    -- some child accepts the whole trace and every other child
                 accepts some (possibly empty, possibly full) prefix of it
* ``Counter`` -- the attack child accepts and the defense child rejects

The module also provides bounded enumeration (the brute-force oracle used
throughout the tests) and the lift relation that underlies upward closure
of depth-0 languages.
"""

from __future__ import annotations

from adtlab.core import (
    DEFAULT_BUDGET,
    Adt,
    AndN,
    BudgetError,
    Counter,
    Eps,
    Leaf,
    OrN,
    SandN,
    Trace,
    all_traces,
    count_traces,
    holds,
)


def member(t: Adt, trace: Trace) -> bool:
    """Decide whether trace belongs to the language of t."""
    if trace.props != t.props:
        raise ValueError(
            f"trace alphabet {trace.props.names} does not match tree alphabet {t.props.names}"
        )
    memo: dict[tuple, bool] = {}
    letters = trace.letters

    def accept(node: Adt, i: int, j: int) -> bool:
        key = (id(node), i, j)
        got = memo.get(key)
        if got is not None:
            return got
        if isinstance(node, Eps):
            out = i == j
        elif isinstance(node, Leaf):
            out = i < j and holds(letters[j - 1], node.formula)
        elif isinstance(node, OrN):
            out = any(accept(c, i, j) for c in node.children)
        elif isinstance(node, SandN):
            out = split(node, 0, i, j)
        elif isinstance(node, AndN):
            out = False
            for full in node.children:
                if not accept(full, i, j):
                    continue
                if all(
                    c is full or any(accept(c, i, m) for m in range(i, j + 1))
                    for c in node.children
                ):
                    out = True
                    break
        elif isinstance(node, Counter):
            out = accept(node.attack, i, j) and not accept(node.defense, i, j)
        else:
            raise TypeError(f"not a tree node: {node!r}")
        memo[key] = out
        return out

    def split(node: SandN, ci: int, i: int, j: int) -> bool:
        # children[ci:] accept consecutive pieces of letters[i:j]
        if ci == len(node.children) - 1:
            return accept(node.children[ci], i, j)
        key = (id(node), ci, i, j)
        got = memo.get(key)
        if got is not None:
            return got
        out = any(
            accept(node.children[ci], i, m) and split(node, ci + 1, m, j)
            for m in range(i, j + 1)
        )
        memo[key] = out
        return out

    return accept(t, 0, len(letters))


def enumerate_traces(t: Adt, maxlen: int, budget: int = DEFAULT_BUDGET) -> list[Trace]:
    """All traces of length at most maxlen in the language of t, in
    length-lexicographic order.  Refuses outright when the candidate
    space exceeds the budget."""
    candidates = count_traces(t.props, maxlen)
    if candidates > budget:
        raise BudgetError(
            f"enumeration up to length {maxlen} needs {candidates} candidate traces"
            f" (budget {budget})"
        )
    return [trace for trace in all_traces(t.props, maxlen) if member(t, trace)]


def is_lift(g: Trace, trace: Trace) -> bool:
    """Whether trace lies above g: for g = v1…vn the trace must be in
    Σ*v1…Σ*vn, i.e. it ends with vn and v1…v(n-1) embeds as a subsequence
    of everything before the last letter."""
    if len(g) == 0:
        raise ValueError("the lower trace of a lift must be non-empty")
    if g.props != trace.props:
        raise ValueError("lift requires both traces over the same PropSet")
    if len(trace) == 0 or len(trace) < len(g):
        return False
    if trace.letters[-1] != g.letters[-1]:
        return False
    rest = trace.letters[:-1]
    pos = 0
    for v in g.letters[:-1]:
        while pos < len(rest) and rest[pos] != v:
            pos += 1
        if pos == len(rest):
            return False
        pos += 1
    return True
