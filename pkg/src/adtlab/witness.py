"""The separating language family over the one-proposition alphabet.

Over Prop = {p} write a for the letter {p} and b for ∅.  The measure of
a word is #a − #b.  For k ≥ 1:

* W(k):  measure 0, every prefix measure within [0, k], some prefix
         reaches k,
* W+(k): measure k, every prefix measure within [0, k],
* W-(k): measure −k, every prefix measure within [−k, 0].

Three views are provided: the direct predicate (in_witness), recursive
set equations evaluated under a length bound (recursive_witness_sets),
and tree constructions whose languages are exactly these (for instance
the level-1 tree denotes (ab)+).  The tree for level k has counterdepth
k + 1.  swap exchanges a and b on words, and on trees by substituting
p with its negation inside every leaf formula.
"""

from __future__ import annotations

from adtlab import core
from adtlab.core import (
    Adt,
    AndN,
    Counter,
    Eps,
    Formula,
    Leaf,
    OrN,
    PropSet,
    SandN,
    Trace,
    Valuation,
    all_both,
    all_right,
    etrue,
    exact_formula,
    ge,
    strict_val,
)

W = "W"
WPLUS = "Wplus"
WMINUS = "Wminus"


def ab_props() -> PropSet:
    return PropSet(("p",))


def word_to_trace(word: str) -> Trace:
    """Build a trace from a string of a's and b's."""
    props = ab_props()
    val_a = props.valuation(("p",))
    val_b = props.valuation(())
    letters = []
    for ch in word:
        if ch == "a":
            letters.append(val_a)
        elif ch == "b":
            letters.append(val_b)
        else:
            raise ValueError(f"expected only a/b, got {ch!r}")
    return Trace(props, tuple(letters))


def trace_to_word(trace: Trace) -> str:
    _check_ab(trace.props)
    return "".join("a" if v.mask else "b" for v in trace.letters)


def _check_ab(props: PropSet):
    if len(props) != 1:
        raise ValueError("the a/b vocabulary needs a one-proposition alphabet")


def measure(w) -> int:
    """Number of a's minus number of b's."""
    word = w if isinstance(w, str) else trace_to_word(w)
    return 2 * word.count("a") - len(word)


def in_witness(w, k: int, kind: str = W) -> bool:
    """Decide membership in W(k) / W+(k) / W-(k) straight from the
    prefix-measure definition."""
    if k < 1:
        raise ValueError("witness languages are defined for k >= 1")
    word = w if isinstance(w, str) else trace_to_word(w)
    if any(ch not in "ab" for ch in word):
        raise ValueError("expected a word over a/b")
    total = 0
    lo = hi = 0
    for ch in word:
        total += 1 if ch == "a" else -1
        lo = min(lo, total)
        hi = max(hi, total)
    if kind == W:
        return total == 0 and lo >= 0 and hi == k
    if kind == WPLUS:
        return total == k and lo >= 0 and hi <= k
    if kind == WMINUS:
        return total == -k and hi <= 0 and lo >= -k
    raise ValueError(f"kind must be one of {W!r}, {WPLUS!r}, {WMINUS!r}")


def swap(x):
    """Exchange the letters a and b.  On a word or trace the letters are
    flipped in place; on a tree every leaf formula has p replaced by its
    negation (with double negations collapsed, so swap is an involution
    on the trees built here)."""
    if isinstance(x, str):
        return x.translate(str.maketrans("ab", "ba"))
    if isinstance(x, Trace):
        _check_ab(x.props)
        return Trace(
            x.props, tuple(Valuation(x.props, 1 - v.mask) for v in x.letters)
        )
    if isinstance(x, Adt):
        _check_ab(x.props)
        return _swap_adt(x)
    raise TypeError(f"cannot swap {type(x).__name__}")


def _swap_formula(f: Formula) -> Formula:
    if isinstance(f, (core.Top, core.Bottom)):
        return f
    if isinstance(f, core.Var):
        return core.Not(f)
    if isinstance(f, core.Not):
        inner = _swap_formula(f.arg)
        return inner.arg if isinstance(inner, core.Not) else core.Not(inner)
    if isinstance(f, core.And):
        return core.And(_swap_formula(f.left), _swap_formula(f.right))
    if isinstance(f, core.Or):
        return core.Or(_swap_formula(f.left), _swap_formula(f.right))
    raise TypeError(f"not a formula: {f!r}")


def _swap_adt(t: Adt) -> Adt:
    memo: dict[int, Adt] = {}

    def go(node: Adt) -> Adt:
        got = memo.get(id(node))
        if got is not None:
            return got
        if isinstance(node, Eps):
            out: Adt = node
        elif isinstance(node, Leaf):
            out = Leaf(_swap_formula(node.formula), node.props)
        elif isinstance(node, (OrN, SandN, AndN)):
            out = type(node)(tuple(go(c) for c in node.children))
        elif isinstance(node, Counter):
            out = Counter(go(node.attack), go(node.defense))
        else:
            raise TypeError(f"not a tree node: {node!r}")
        memo[id(node)] = out
        return out

    return go(t)


def build_witness_adt(k: int) -> tuple[Adt, Adt, Adt]:
    """The level-k trees for W(k), W+(k) and W-(k).

    Level 1 is explicit: with the shared defense D = words that start
    with the wrong letter or contain a repeated letter,

        T1  = C(b, OR(ALLR(strict b), ALLB(C(GE(2), AND(ALLR(a), ALLR(b))))))

    denotes (ab)+, and the + / - variants adjust the attack leaf and the
    forbidden first letter.  Level k builds on level k-1 following the
    recursive set equations; the trailing-run detector

        count = OR(SAND(a, T+(k-1), ALLR(strict a)), SAND(b, T-(k-1), ALLR(strict b)))

    removes words where the measure leaves [0, k], and the union tree
    ranges over i in 0..k-1 (level 0 contributing the empty tree) as in
    the set equations.  The minus tree is the swap of the plus tree."""
    if k < 1:
        raise ValueError("witness trees are defined for k >= 1")
    props = ab_props()
    val_a = props.valuation(("p",))
    val_b = props.valuation(())
    leaf_a = Leaf(exact_formula(val_a), props)
    leaf_b = Leaf(exact_formula(val_b), props)
    strict_a = strict_val(val_a)
    strict_b = strict_val(val_b)

    # C(GE(2), AND(ALLR(a), ALLR(b))) = runs aa+ and bb+; wrapped in
    # ALLB it forbids any repeated adjacent letter
    runs = Counter(ge(props, 2), AndN((all_right(leaf_a), all_right(leaf_b))))
    no_repeat_defense = all_both(runs)

    t1 = Counter(leaf_b, OrN((all_right(strict_b), no_repeat_defense)))
    t1_plus = Counter(leaf_a, OrN((all_right(strict_b), no_repeat_defense)))
    t1_minus = Counter(leaf_b, OrN((all_right(strict_a), no_repeat_defense)))
    if k == 1:
        return t1, t1_plus, t1_minus

    level_w: dict[int, Adt] = {0: Eps(props), 1: t1}
    plus, minus = t1_plus, t1_minus
    for level in range(2, k + 1):
        count = OrN(
            (
                SandN((leaf_a, plus, all_right(strict_a))),
                SandN((leaf_b, minus, all_right(strict_b))),
            )
        )
        union = OrN(
            tuple(
                SandN((level_w[i], strict_a, plus)) for i in range(level)
            )
        )
        new_w = Counter(
            SandN((plus, strict_a, etrue(props), strict_b, minus)), count
        )
        new_plus = Counter(
            OrN(
                (
                    SandN((plus, strict_a, etrue(props), strict_a, plus)),
                    union,
                )
            ),
            count,
        )
        level_w[level] = new_w
        plus, minus = new_plus, swap(new_plus)
    return level_w[k], plus, minus


def recursive_witness_sets(k: int, maxlen: int) -> tuple[set, set, set]:
    """The sets W(k), W+(k), W-(k) restricted to words of length at most
    maxlen, computed from the recursive equations

        W(0) = W+(0) = W-(0) = {ε}
        W(k+1)  = W+(k) a Σ* b W-(k)  \\  D
        W+(k+1) = (W+(k) a Σ* a W+(k)  ∪  ⋃_{i≤k} W(i) a W+(k))  \\  D
        W-(k+1) = swap(W+(k+1))
        with D = Σ* a W+(k) a Σ*  ∪  Σ* b W-(k) b Σ*

    as words over the letters a/b.  Every factor of a bounded word is
    itself bounded, so the truncated computation is exact."""
    if k < 0:
        raise ValueError("levels are non-negative")
    sigma = {""}
    frontier = [""]
    for _ in range(maxlen):
        frontier = [w + ch for w in frontier for ch in "ab"]
        sigma.update(frontier)

    def cc(*parts) -> set:
        acc = {""}
        for part in parts:
            words = part if isinstance(part, set) else {part}
            acc = {u + v for u in acc for v in words if len(u) + len(v) <= maxlen}
        return acc

    levels = [{""}]
    plus: set = {""}
    minus: set = {""}
    for _ in range(k):
        banned = cc(sigma, "a", plus, "a", sigma) | cc(sigma, "b", minus, "b", sigma)
        new_w = cc(plus, "a", sigma, "b", minus) - banned
        joined: set = set()
        for earlier in levels:
            joined |= cc(earlier, "a", plus)
        new_plus = (cc(plus, "a", sigma, "a", plus) | joined) - banned
        levels.append(new_w)
        plus = new_plus
        minus = {swap(w) for w in new_plus}
    return levels[k], plus, minus
