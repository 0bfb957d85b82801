"""First-order logic on finite words over the alphabet of valuations.

The signature has the order predicate x < y and one letter predicate per
valuation; positions are 1-based.  The module provides model checking,
negation normal form, position relativization, quantifier-alternation
classification, bounded satisfiability, and three translations:

* adt_to_fo     -- any tree to an equivalent closed formula
* adt0_to_pi2   -- depth-0 trees to an equivalent formula with a single
                   universal block in front (via the generator normal form)
* sigma1_to_adt -- purely existential formulas back to depth-0 trees, by
                   DNF expansion and enumeration of the total preorders of
                   the quantified variables consistent with each clause
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from adtlab import generators
from adtlab.core import (
    DEFAULT_BUDGET,
    Adt,
    AndN,
    BudgetError,
    Bottom,
    Counter,
    Eps,
    Leaf,
    OrN,
    PropSet,
    SandN,
    Trace,
    Valuation,
    all_traces,
    and_fold,
    count_traces,
    counterdepth,
    etrue,
    exact_formula,
    satisfying,
    to_binary,
)
from adtlab import core as _core


class FoFormula:
    """Base class of first-order formula nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class FTrue(FoFormula):
    pass


@dataclass(frozen=True)
class FFalse(FoFormula):
    pass


@dataclass(frozen=True)
class Less(FoFormula):
    left: str
    right: str


@dataclass(frozen=True)
class Letter(FoFormula):
    val: Valuation
    var: str


@dataclass(frozen=True)
class Not(FoFormula):
    arg: FoFormula


@dataclass(frozen=True)
class And(FoFormula):
    left: FoFormula
    right: FoFormula


@dataclass(frozen=True)
class Or(FoFormula):
    left: FoFormula
    right: FoFormula


@dataclass(frozen=True)
class Exists(FoFormula):
    var: str
    body: FoFormula


@dataclass(frozen=True)
class Forall(FoFormula):
    var: str
    body: FoFormula


def _conj(parts: list[FoFormula]) -> FoFormula:
    if not parts:
        return FTrue()
    out = parts[0]
    for f in parts[1:]:
        out = And(out, f)
    return out


def _disj(parts: list[FoFormula]) -> FoFormula:
    if not parts:
        return FFalse()
    out = parts[0]
    for f in parts[1:]:
        out = Or(out, f)
    return out


def free_vars(phi: FoFormula) -> frozenset:
    """The free variables of a formula."""
    if isinstance(phi, (FTrue, FFalse)):
        return frozenset()
    if isinstance(phi, Less):
        return frozenset((phi.left, phi.right))
    if isinstance(phi, Letter):
        return frozenset((phi.var,))
    if isinstance(phi, Not):
        return free_vars(phi.arg)
    if isinstance(phi, (And, Or)):
        return free_vars(phi.left) | free_vars(phi.right)
    if isinstance(phi, (Exists, Forall)):
        return free_vars(phi.body) - {phi.var}
    raise TypeError(f"not a first-order formula: {phi!r}")


def bound_vars(phi: FoFormula) -> frozenset:
    """All variables bound by some quantifier in the formula."""
    if isinstance(phi, (FTrue, FFalse, Less, Letter)):
        return frozenset()
    if isinstance(phi, Not):
        return bound_vars(phi.arg)
    if isinstance(phi, (And, Or)):
        return bound_vars(phi.left) | bound_vars(phi.right)
    if isinstance(phi, (Exists, Forall)):
        return bound_vars(phi.body) | {phi.var}
    raise TypeError(f"not a first-order formula: {phi!r}")


def eval_fo(phi: FoFormula, trace: Trace, env: dict | None = None) -> bool:
    """Word-model satisfaction.  Positions range over 1..|trace|; on the
    empty trace an Exists is false and a Forall is true.  env may bind
    free variables to positions; without it the formula must be closed."""
    env = dict(env) if env else {}
    missing = free_vars(phi) - set(env)
    if missing:
        raise ValueError(f"free variable(s) without a binding: {sorted(missing)}")

    fv: dict[int, frozenset] = {}

    def fv_of(node: FoFormula) -> frozenset:
        got = fv.get(id(node))
        if got is not None:
            return got
        if isinstance(node, (FTrue, FFalse)):
            out: frozenset = frozenset()
        elif isinstance(node, Less):
            out = frozenset((node.left, node.right))
        elif isinstance(node, Letter):
            out = frozenset((node.var,))
        elif isinstance(node, Not):
            out = fv_of(node.arg)
        elif isinstance(node, (And, Or)):
            out = fv_of(node.left) | fv_of(node.right)
        else:
            out = fv_of(node.body) - {node.var}
        fv[id(node)] = out
        return out

    letters = trace.letters
    n = len(letters)
    memo: dict[tuple, bool] = {}

    def go(node: FoFormula, env: dict) -> bool:
        if isinstance(node, FTrue):
            return True
        if isinstance(node, FFalse):
            return False
        if isinstance(node, Less):
            return env[node.left] < env[node.right]
        if isinstance(node, Letter):
            return letters[env[node.var] - 1] == node.val
        key = (id(node), tuple(sorted((v, env[v]) for v in fv_of(node))))
        got = memo.get(key)
        if got is not None:
            return got
        if isinstance(node, Not):
            out = not go(node.arg, env)
        elif isinstance(node, And):
            out = go(node.left, env) and go(node.right, env)
        elif isinstance(node, Or):
            out = go(node.left, env) or go(node.right, env)
        elif isinstance(node, Exists):
            out = False
            for pos in range(1, n + 1):
                env2 = dict(env)
                env2[node.var] = pos
                if go(node.body, env2):
                    out = True
                    break
        elif isinstance(node, Forall):
            out = True
            for pos in range(1, n + 1):
                env2 = dict(env)
                env2[node.var] = pos
                if not go(node.body, env2):
                    out = False
                    break
        else:
            raise TypeError(f"not a first-order formula: {node!r}")
        memo[key] = out
        return out

    return go(phi, env)


def nnf(phi: FoFormula) -> FoFormula:
    """Negation normal form: negations pushed down to atoms."""
    if isinstance(phi, (FTrue, FFalse, Less, Letter)):
        return phi
    if isinstance(phi, And):
        return And(nnf(phi.left), nnf(phi.right))
    if isinstance(phi, Or):
        return Or(nnf(phi.left), nnf(phi.right))
    if isinstance(phi, Exists):
        return Exists(phi.var, nnf(phi.body))
    if isinstance(phi, Forall):
        return Forall(phi.var, nnf(phi.body))
    if isinstance(phi, Not):
        arg = phi.arg
        if isinstance(arg, FTrue):
            return FFalse()
        if isinstance(arg, FFalse):
            return FTrue()
        if isinstance(arg, (Less, Letter)):
            return phi
        if isinstance(arg, Not):
            return nnf(arg.arg)
        if isinstance(arg, And):
            return Or(nnf(Not(arg.left)), nnf(Not(arg.right)))
        if isinstance(arg, Or):
            return And(nnf(Not(arg.left)), nnf(Not(arg.right)))
        if isinstance(arg, Exists):
            return Forall(arg.var, nnf(Not(arg.body)))
        if isinstance(arg, Forall):
            return Exists(arg.var, nnf(Not(arg.body)))
    raise TypeError(f"not a first-order formula: {phi!r}")


SIGMA = "Sigma"
PI = "Pi"
BOTH_BELOW = "BothBelow"


@dataclass(frozen=True)
class AltClass:
    """Quantifier-alternation classification: the least level of the
    Sigma/Pi hierarchy containing the formula.  kind BothBelow means the
    formula sits in Sigma_level ∩ Pi_level (level 0 = quantifier-free)."""

    level: int
    kind: str


def alternation(phi: FoFormula) -> AltClass:
    """Classify a formula by quantifier-block alternations, computed on
    its negation normal form.  For each node we track the least k with
    the node in Sigma_k and the least k with it in Pi_k."""

    def go(node: FoFormula) -> tuple[int, int]:
        if isinstance(node, (FTrue, FFalse, Less, Letter)):
            return 0, 0
        if isinstance(node, Not):
            return go(node.arg)
        if isinstance(node, (And, Or)):
            ls, lp = go(node.left)
            rs, rp = go(node.right)
            return max(ls, rs), max(lp, rp)
        if isinstance(node, Exists):
            bs, bp = go(node.body)
            s = min(max(1, bs), bp + 1)
            return s, s + 1
        if isinstance(node, Forall):
            bs, bp = go(node.body)
            p = min(max(1, bp), bs + 1)
            return p + 1, p
        raise TypeError(f"not a first-order formula: {node!r}")

    s, p = go(nnf(phi))
    if s < p:
        return AltClass(s, SIGMA)
    if p < s:
        return AltClass(p, PI)
    return AltClass(s, BOTH_BELOW)


LE = "LE"
GT = "GT"


def relativize(phi: FoFormula, x: str, direction: str, zero: bool = False) -> FoFormula:
    """Restrict all quantifiers to positions ≤ x (LE) or > x (GT): each
    ∃y φ becomes ∃y(y⋈x ∧ φ) and each ∀y φ becomes ∀y(¬(y⋈x) ∨ φ).  With
    zero=True the comparison is replaced by the constant it takes when x
    is left of the first position — false for LE, true for GT — so the
    result evaluates the original formula on the empty piece."""
    if direction not in (LE, GT):
        raise ValueError(f"direction must be LE or GT, got {direction!r}")

    def guards(y: str) -> tuple[FoFormula, FoFormula]:
        # (guard for ∃, guard for ∀); the ∀ guard is the negation
        if zero:
            if direction == LE:
                return FFalse(), FTrue()
            return FTrue(), FFalse()
        if direction == LE:
            return Not(Less(x, y)), Less(x, y)  # y ≤ x encoded as ¬(x < y)
        return Less(x, y), Not(Less(x, y))

    def go(node: FoFormula) -> FoFormula:
        if isinstance(node, (FTrue, FFalse, Less, Letter)):
            return node
        if isinstance(node, Not):
            return Not(go(node.arg))
        if isinstance(node, And):
            return And(go(node.left), go(node.right))
        if isinstance(node, Or):
            return Or(go(node.left), go(node.right))
        if isinstance(node, (Exists, Forall)):
            if node.var == x:
                raise ValueError(f"relativization variable {x!r} is bound in the formula")
            pos, neg = guards(node.var)
            if isinstance(node, Exists):
                return Exists(node.var, And(pos, go(node.body)))
            return Forall(node.var, Or(neg, go(node.body)))
        raise TypeError(f"not a first-order formula: {node!r}")

    return go(phi)


def adt_to_fo(t: Adt) -> FoFormula:
    """A closed formula equivalent to the tree: eval_fo agrees with
    member on every trace.  n-ary nodes are folded to binary, SAND uses
    a split position, AND re-reads each child once on the whole word and
    once on a prefix, and the zero-relativized disjuncts cover the empty
    prefix."""
    binary = to_binary(t)
    counter = itertools.count(1)

    def fresh() -> str:
        return f"x{next(counter)}"

    def go(node: Adt) -> FoFormula:
        if isinstance(node, Eps):
            return Forall(fresh(), FFalse())
        if isinstance(node, Leaf):
            x, y = fresh(), fresh()
            last = Forall(y, Not(Less(x, y)))
            letter = _disj([Letter(v, x) for v in satisfying(node.props, node.formula)])
            return Exists(x, And(last, letter))
        if isinstance(node, OrN):
            left, right = node.children
            return Or(go(left), go(right))
        if isinstance(node, Counter):
            return And(go(node.attack), Not(go(node.defense)))
        if isinstance(node, SandN):
            f1, f2 = go(node.children[0]), go(node.children[1])
            x = fresh()
            split = Exists(x, And(relativize(f1, x, LE), relativize(f2, x, GT)))
            empty_first = And(relativize(f1, x, LE, zero=True), f2)
            return Or(split, empty_first)
        if isinstance(node, AndN):
            f1, f2 = go(node.children[0]), go(node.children[1])
            x = fresh()
            some_split = Exists(
                x,
                Or(
                    And(relativize(f1, x, LE), f2),
                    And(relativize(f2, x, LE), f1),
                ),
            )
            return Or(
                Or(some_split, And(relativize(f1, x, LE, zero=True), f2)),
                And(relativize(f2, x, LE, zero=True), f1),
            )
        raise TypeError(f"not a tree node: {node!r}")

    return go(binary)


def adt0_to_pi2(t: Adt) -> FoFormula:
    """A formula with one leading universal block equivalent to a depth-0
    tree.  The tree is first normalized to an OR over SANDs of exact
    letters; a SAND disjunct v1…vm turns into

        ∀y ∃x1…∃xm (x1<…<xm ∧ ¬(xm<y) ∧ ⋀ letters) ∧ ∃z true

    (the final conjunct rules out the empty trace, where the ∀ would hold
    vacuously); an Eps disjunct turns into ∀x false."""
    if counterdepth(t) != 0:
        raise ValueError("the one-universal-block form applies to counterdepth 0 only")
    norm = generators.normalize_adt0(t)
    counter = itertools.count(1)

    def fresh() -> str:
        return f"x{next(counter)}"

    disjuncts: list[FoFormula] = []
    for d in norm.children:
        if isinstance(d, Eps):
            disjuncts.append(Forall(fresh(), FFalse()))
            continue
        gammas = [leaf.formula for leaf in d.children]
        xs = [fresh() for _ in gammas]
        y = fresh()
        z = fresh()
        parts: list[FoFormula] = [Less(a, b) for a, b in zip(xs, xs[1:])]
        parts.append(Not(Less(xs[-1], y)))
        parts.extend(
            _disj([Letter(v, x) for v in satisfying(t.props, g)])
            for g, x in zip(gammas, xs)
        )
        body: FoFormula = _conj(parts)
        for x in reversed(xs):
            body = Exists(x, body)
        disjuncts.append(And(Forall(y, body), Exists(z, FTrue())))
    return _disj(disjuncts)


def ordered_partitions(items: tuple):
    """All ordered set partitions (total preorders) of the items, in a
    deterministic order."""
    items = tuple(items)
    if not items:
        yield ()
        return
    n = len(items)
    for mask in range(1, 1 << n):
        block = tuple(items[i] for i in range(n) if mask & (1 << i))
        rest = tuple(items[i] for i in range(n) if not mask & (1 << i))
        for tail in ordered_partitions(rest):
            yield (block,) + tail


def consistent_preorders(
    variables: tuple, positive: set, negative: set
) -> list[tuple]:
    """Total preorders of the variables satisfying every order literal:
    (x,y) ∈ positive forces block(x) < block(y), (x,y) ∈ negative forces
    block(x) ≥ block(y) (the literal was ¬(x<y))."""
    out = []
    for blocks in ordered_partitions(variables):
        index = {}
        for i, block in enumerate(blocks):
            for v in block:
                index[v] = i
        if all(index[a] < index[b] for a, b in positive) and all(
            index[a] >= index[b] for a, b in negative
        ):
            out.append(blocks)
    return out


MAX_SIGMA1_VARS = 6


def sigma1_to_adt(phi: FoFormula, props: PropSet | None = None) -> Adt:
    """A counterdepth-0 tree equivalent to a purely existential formula
    ∃x1…∃xn ψ (ψ quantifier-free).  ψ goes to DNF; for each clause, every
    total preorder of the quantified variables consistent with the order
    literals describes one way the positions can sit in a word, and each
    becomes a SAND of per-block letter constraints followed by anything."""
    variables: list[str] = []
    body = phi
    while isinstance(body, Exists):
        variables.append(body.var)
        body = body.body
    body = nnf(body)
    if bound_vars(body):
        raise ValueError("not a purely existential formula")
    free = free_vars(phi)
    if free:
        raise ValueError(f"free variable(s): {sorted(free)}")
    # an outer duplicate binds nothing but still claims a position;
    # rename it so the preorders treat it as an unconstrained variable
    seen: set = set()
    taken = set(variables) | bound_vars(phi) | free_vars(body)
    for i in range(len(variables) - 1, -1, -1):
        v = variables[i]
        if v in seen:
            fresh = v
            while fresh in taken:
                fresh += "_"
            variables[i] = fresh
            taken.add(fresh)
        else:
            seen.add(v)
    if len(variables) > MAX_SIGMA1_VARS:
        raise BudgetError(
            f"{len(variables)} quantified variables exceed the"
            f" {MAX_SIGMA1_VARS}-variable preorder budget"
        )
    if props is None:
        props = _infer_props(phi)
        if props is None:
            raise ValueError("no letter predicate to infer the alphabet from; pass props")

    if not variables:
        # constant formula: all traces or none
        return etrue(props) if eval_fo(body, Trace(props, ())) else Leaf(Bottom(), props)

    disjuncts: list[Adt] = []
    for clause in _dnf(body):
        positive: set = set()
        negative: set = set()
        letters: list[tuple[str, Valuation, bool]] = []
        for lit in clause:
            neg = isinstance(lit, Not)
            atom = lit.arg if neg else lit
            if isinstance(atom, Less):
                (negative if neg else positive).add((atom.left, atom.right))
            elif isinstance(atom, Letter):
                letters.append((atom.var, atom.val, not neg))
            else:
                raise TypeError(f"unexpected literal {lit!r}")
        orders = consistent_preorders(tuple(variables), positive, negative)
        if not orders:
            disjuncts.append(Leaf(Bottom(), props))
            continue
        for blocks in orders:
            gammas = []
            for block in blocks:
                constraints = [
                    exact_formula(v) if pos else _core.Not(exact_formula(v))
                    for var, v, pos in letters
                    if var in block
                ]
                gammas.append(and_fold(constraints))
            pattern = SandN(tuple(Leaf(g, props) for g in gammas))
            disjuncts.append(SandN((pattern, etrue(props))))
    if not disjuncts:
        return Leaf(Bottom(), props)
    return OrN(tuple(disjuncts))


def _dnf(phi: FoFormula) -> list[list[FoFormula]]:
    """Disjunctive normal form of a quantifier-free NNF formula, as a
    list of clauses (lists of literals).  Constants are folded away."""
    if isinstance(phi, FTrue):
        return [[]]
    if isinstance(phi, FFalse):
        return []
    if isinstance(phi, (Less, Letter, Not)):
        return [[phi]]
    if isinstance(phi, Or):
        return _dnf(phi.left) + _dnf(phi.right)
    if isinstance(phi, And):
        return [cl + cr for cl in _dnf(phi.left) for cr in _dnf(phi.right)]
    raise TypeError(f"not quantifier-free: {phi!r}")


def _infer_props(phi: FoFormula) -> PropSet | None:
    if isinstance(phi, Letter):
        return phi.val.props
    if isinstance(phi, Not):
        return _infer_props(phi.arg)
    if isinstance(phi, (And, Or)):
        return _infer_props(phi.left) or _infer_props(phi.right)
    if isinstance(phi, (Exists, Forall)):
        return _infer_props(phi.body)
    return None


def sat_bounded(
    phi: FoFormula,
    maxlen: int,
    props: PropSet | None = None,
    budget: int = DEFAULT_BUDGET,
) -> Trace | None:
    """The length-lexicographically first trace of length ≤ maxlen
    satisfying the closed formula, None if there is none."""
    if props is None:
        props = _infer_props(phi)
        if props is None:
            raise ValueError("no letter predicate to infer the alphabet from; pass props")
    candidates = count_traces(props, maxlen)
    if candidates > budget:
        raise BudgetError(
            f"satisfiability search up to length {maxlen} needs {candidates}"
            f" candidate traces (budget {budget})"
        )
    for trace in all_traces(props, maxlen):
        if eval_fo(phi, trace):
            return trace
    return None
