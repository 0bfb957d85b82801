"""Core vocabulary: alphabets, traces, propositional formulas and tree nodes.

A tree describes a language of finite traces.  A trace is a word over the
alphabet of valuations of a fixed, ordered set of proposition names; the
alphabet therefore has 2^n letters for n propositions (a single letter, the
empty valuation, when there are none).

Tree nodes:

* ``Eps``            -- the singleton language containing the empty trace.
* ``Leaf(formula)``  -- all non-empty traces whose *last* letter satisfies
                        the propositional formula.
* ``OrN(children)``  -- union.
* ``SandN(children)``-- sequential composition: concatenation of one piece
                        per child, in order.
* ``AndN(children)`` -- unordered combination: some child accepts the whole
                        trace and every other child accepts some (possibly
                        empty) prefix of it.
* ``Counter(a, d)``  -- traces of the attack ``a`` not countered by the
                        defense ``d``: the relative complement.

Everything here is immutable; structural equality is value equality.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union


NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

DEFAULT_BUDGET = 10**6


class BudgetError(RuntimeError):
    """Raised when an operation refuses to run past its explicit budget."""


# ---------------------------------------------------------------------------
# alphabet


class PropSet:
    """An ordered set of proposition names; fixes the trace alphabet."""

    __slots__ = ("names", "_index", "_hash")

    def __init__(self, names: Iterable[str] = ()):
        names = tuple(names)
        seen = set()
        for name in names:
            if not NAME_RE.match(name):
                raise ValueError(f"bad proposition name: {name!r}")
            if name in seen:
                raise ValueError(f"duplicate proposition name: {name!r}")
            seen.add(name)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})
        object.__setattr__(self, "_hash", hash(names))

    def __setattr__(self, name, value):
        raise AttributeError("PropSet is immutable")

    def __eq__(self, other):
        return isinstance(other, PropSet) and self.names == other.names

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name):
        return name in self._index

    def __repr__(self):
        return f"PropSet({list(self.names)!r})"

    def index(self, name: str) -> int:
        return self._index[name]

    def valuation(self, names: Iterable[str] = ()) -> "Valuation":
        """The letter in which exactly the given propositions hold."""
        mask = 0
        for name in names:
            if name not in self._index:
                raise ValueError(f"unknown proposition: {name!r}")
            mask |= 1 << self._index[name]
        return Valuation(self, mask)

    def valuations(self) -> list["Valuation"]:
        """All letters of the alphabet, in mask order (deterministic)."""
        return [Valuation(self, m) for m in range(1 << len(self.names))]


@dataclass(frozen=True)
class Valuation:
    """One letter: the subset of propositions (as a bit mask) that hold."""

    props: PropSet
    mask: int

    def __post_init__(self):
        if not 0 <= self.mask < (1 << len(self.props)):
            raise ValueError(f"valuation mask {self.mask} out of range")

    def __contains__(self, name: str) -> bool:
        return bool(self.mask >> self.props.index(name) & 1)

    def members(self) -> tuple[str, ...]:
        return tuple(n for i, n in enumerate(self.props.names) if self.mask >> i & 1)

    def __repr__(self):
        return "{%s}" % ",".join(self.members())


@dataclass(frozen=True)
class Trace:
    """A finite word of valuations, all over the same PropSet."""

    props: PropSet
    letters: tuple[Valuation, ...] = ()

    def __post_init__(self):
        for v in self.letters:
            if v.props != self.props:
                raise ValueError("trace letters use a different PropSet")

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i) -> Union[Valuation, "Trace"]:
        if isinstance(i, slice):
            return Trace(self.props, self.letters[i])
        return self.letters[i]

    def __add__(self, other: "Trace") -> "Trace":
        if other.props != self.props:
            raise ValueError("cannot concatenate traces over different PropSets")
        return Trace(self.props, self.letters + other.letters)

    def sort_key(self):
        """Length-lexicographic ordering key (letters ordered by mask)."""
        return (len(self.letters), tuple(v.mask for v in self.letters))

    def __repr__(self):
        if not self.letters:
            return "<eps>"
        return "".join(repr(v) for v in self.letters)


def empty_trace(props: PropSet) -> Trace:
    return Trace(props, ())


def all_traces(props: PropSet, maxlen: int) -> Iterator[Trace]:
    """All traces of length <= maxlen, in length-lexicographic order."""
    letters = props.valuations()
    for n in range(maxlen + 1):
        for combo in itertools.product(letters, repeat=n):
            yield Trace(props, combo)


def count_traces(props: PropSet, maxlen: int) -> int:
    """How many traces all_traces(props, maxlen) yields."""
    k = 1 << len(props)
    if k == 1:
        return maxlen + 1
    return (k ** (maxlen + 1) - 1) // (k - 1)


# ---------------------------------------------------------------------------
# propositional formulas (leaf labels)


class Formula:
    """Base class for propositional formulas over a PropSet's names."""

    __slots__ = ()


@dataclass(frozen=True)
class Top(Formula):
    def __repr__(self):
        return "true"


@dataclass(frozen=True)
class Bottom(Formula):
    def __repr__(self):
        return "false"


@dataclass(frozen=True)
class Var(Formula):
    name: str

    def __repr__(self):
        return self.name


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula

    def __repr__(self):
        return f"!({self.arg!r})"


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"({self.left!r} & {self.right!r})"


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"({self.left!r} | {self.right!r})"


def formula_size(f: Formula) -> int:
    """Node count of the formula tree."""
    if isinstance(f, (Top, Bottom, Var)):
        return 1
    if isinstance(f, Not):
        return 1 + formula_size(f.arg)
    if isinstance(f, (And, Or)):
        return 1 + formula_size(f.left) + formula_size(f.right)
    raise TypeError(f"not a formula: {f!r}")


def formula_vars(f: Formula) -> frozenset[str]:
    if isinstance(f, (Top, Bottom)):
        return frozenset()
    if isinstance(f, Var):
        return frozenset((f.name,))
    if isinstance(f, Not):
        return formula_vars(f.arg)
    if isinstance(f, (And, Or)):
        return formula_vars(f.left) | formula_vars(f.right)
    raise TypeError(f"not a formula: {f!r}")


def holds(v: Valuation, f: Formula) -> bool:
    """Does the letter v satisfy the formula?"""
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Var):
        return f.name in v
    if isinstance(f, Not):
        return not holds(v, f.arg)
    if isinstance(f, And):
        return holds(v, f.left) and holds(v, f.right)
    if isinstance(f, Or):
        return holds(v, f.left) or holds(v, f.right)
    raise TypeError(f"not a formula: {f!r}")


def satisfying(props: PropSet, f: Formula) -> list[Valuation]:
    """All letters satisfying f, in mask order."""
    return [v for v in props.valuations() if holds(v, f)]


def exact_formula(v: Valuation) -> Formula:
    """The characteristic formula of a letter: satisfied by v and nothing else."""
    parts: list[Formula] = []
    for i, name in enumerate(v.props.names):
        if v.mask >> i & 1:
            parts.append(Var(name))
        else:
            parts.append(Not(Var(name)))
    if not parts:
        return Top()
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def and_fold(parts: Iterable[Formula]) -> Formula:
    parts = list(parts)
    if not parts:
        return Top()
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def or_fold(parts: Iterable[Formula]) -> Formula:
    parts = list(parts)
    if not parts:
        return Bottom()
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


# ---------------------------------------------------------------------------
# tree nodes


class Adt:
    """Base class of tree nodes.  Every node knows its PropSet."""

    __slots__ = ()


def _shared_props(children: tuple[Adt, ...]) -> PropSet:
    props = children[0].props
    for c in children[1:]:
        if c.props != props:
            raise ValueError("children built over different PropSets")
    return props


@dataclass(frozen=True)
class Eps(Adt):
    props: PropSet


@dataclass(frozen=True)
class Leaf(Adt):
    formula: Formula
    props: PropSet

    def __post_init__(self):
        extra = formula_vars(self.formula) - set(self.props.names)
        if extra:
            raise ValueError(f"formula mentions undeclared propositions: {sorted(extra)}")


@dataclass(frozen=True)
class OrN(Adt):
    children: tuple[Adt, ...]
    props: PropSet = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if not self.children:
            raise ValueError("OrN needs at least one child")
        object.__setattr__(self, "props", _shared_props(self.children))


@dataclass(frozen=True)
class SandN(Adt):
    children: tuple[Adt, ...]
    props: PropSet = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if not self.children:
            raise ValueError("SandN needs at least one child")
        object.__setattr__(self, "props", _shared_props(self.children))


@dataclass(frozen=True)
class AndN(Adt):
    children: tuple[Adt, ...]
    props: PropSet = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if not self.children:
            raise ValueError("AndN needs at least one child")
        object.__setattr__(self, "props", _shared_props(self.children))


@dataclass(frozen=True)
class Counter(Adt):
    attack: Adt
    defense: Adt
    props: PropSet = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "props", _shared_props((self.attack, self.defense)))


def _children(t: Adt) -> tuple[Adt, ...]:
    if isinstance(t, (OrN, SandN, AndN)):
        return t.children
    if isinstance(t, Counter):
        return (t.attack, t.defense)
    return ()


# ---------------------------------------------------------------------------
# measures

# Subtrees are shared aggressively by the builders below (and by the witness
# constructions), so all measures memoize on node identity.


def size(t: Adt) -> int:
    """Sum of leaf sizes: 1 for Eps, formula node count for Leaf."""
    memo: dict[int, int] = {}

    def go(node: Adt) -> int:
        got = memo.get(id(node))
        if got is not None:
            return got
        if isinstance(node, Eps):
            out = 1
        elif isinstance(node, Leaf):
            out = formula_size(node.formula)
        else:
            out = sum(go(c) for c in _children(node))
        memo[id(node)] = out
        return out

    return go(t)


def leaves_count(t: Adt) -> int:
    """Number of leaves (Eps and Leaf nodes)."""
    memo: dict[int, int] = {}

    def go(node: Adt) -> int:
        got = memo.get(id(node))
        if got is not None:
            return got
        if isinstance(node, (Eps, Leaf)):
            out = 1
        else:
            out = sum(go(c) for c in _children(node))
        memo[id(node)] = out
        return out

    return go(t)


def counterdepth(t: Adt) -> int:
    """Maximum nesting of defenses: Counter adds one on its defense side."""
    memo: dict[int, int] = {}

    def go(node: Adt) -> int:
        got = memo.get(id(node))
        if got is not None:
            return got
        if isinstance(node, (Eps, Leaf)):
            out = 0
        elif isinstance(node, Counter):
            out = max(go(node.attack), go(node.defense) + 1)
        else:
            out = max(go(c) for c in _children(node))
        memo[id(node)] = out
        return out

    return go(t)


def to_binary(t: Adt) -> Adt:
    """Rewrite n-ary nodes (arity > 2) into left-nested binary ones."""
    if isinstance(t, (Eps, Leaf)):
        return t
    if isinstance(t, Counter):
        return Counter(to_binary(t.attack), to_binary(t.defense))
    cls = type(t)
    kids = [to_binary(c) for c in t.children]
    out = kids[0] if len(kids) == 1 else cls((kids[0], kids[1]))
    for k in kids[2 if len(kids) > 1 else 1:]:
        out = cls((out, k))
    return out


# ---------------------------------------------------------------------------
# stock builders: length constraints

# ge(n) is n copies of [true] in sequence: traces of length >= n.
# le(n) is everything minus ge(n + 1): traces of length <= n (the empty trace
# included, which is why the attack side is the whole language, not [true]).
# eq(n) subtracts ge(n + 1) from ge(n).


def ge(props: PropSet, n: int) -> Adt:
    if n < 1:
        raise ValueError("length bound must be >= 1")
    top = Leaf(Top(), props)
    return SandN((top,) * n)


def le(props: PropSet, n: int) -> Adt:
    if n < 1:
        raise ValueError("length bound must be >= 1")
    return Counter(etrue(props), ge(props, n + 1))


def eq(props: PropSet, n: int) -> Adt:
    if n < 1:
        raise ValueError("length bound must be >= 1")
    return Counter(ge(props, n), ge(props, n + 1))


_LENGTH_BUILDERS = {"GE": ge, "LE": le, "EQ": eq}


def build_length(kind: str, n: int, props: PropSet) -> Adt:
    try:
        builder = _LENGTH_BUILDERS[kind.upper()]
    except KeyError:
        raise ValueError(f"unknown length builder: {kind!r}") from None
    return builder(props, n)


# ---------------------------------------------------------------------------
# stock builders: framing, complement, intersection, strictness


def etrue(props: PropSet) -> Adt:
    """All traces, the empty one included."""
    return OrN((Eps(props), Leaf(Top(), props)))


def co(t: Adt) -> Adt:
    """Complement: all traces not in t's language."""
    return Counter(etrue(t.props), t)


def cap(t1: Adt, t2: Adt) -> Adt:
    """Intersection, via De Morgan over co()."""
    return co(OrN((co(t1), co(t2))))


def all_right(t: Adt) -> Adt:
    """t followed by anything."""
    return SandN((t, etrue(t.props)))


def all_left(t: Adt) -> Adt:
    """Anything followed by t."""
    return SandN((etrue(t.props), t))


def all_both(t: Adt) -> Adt:
    """t somewhere inside: anything, then t, then anything."""
    return SandN((etrue(t.props), t, etrue(t.props)))


def strict(formula: Formula, props: PropSet) -> Adt:
    """One-letter traces whose letter satisfies the formula."""
    return Counter(Leaf(formula, props), ge(props, 2))


def strict_val(v: Valuation) -> Adt:
    """The singleton language of the one-letter trace v."""
    return strict(exact_formula(v), v.props)


def trace_tree(trace: Trace) -> Adt:
    """A tree denoting exactly the given trace."""
    if len(trace) == 0:
        return Eps(trace.props)
    return SandN(tuple(strict_val(v) for v in trace))


_FRAME_ARITIES = {
    "ETRUE": 0,
    "NOT": 1,
    "CO": 1,
    "CAP": 2,
    "ALLB": 1,
    "ALLL": 1,
    "ALLR": 1,
    "STRICT": 1,
    "STRICT_VAL": 1,
    "TRACE_TREE": 1,
}


def build_frame(kind: str, *args, props: PropSet | None = None) -> Adt:
    """Dispatcher over the framing builders, mostly for the parser and CLI."""
    kind = kind.upper()
    if kind not in _FRAME_ARITIES:
        raise ValueError(f"unknown frame builder: {kind!r}")
    if len(args) != _FRAME_ARITIES[kind]:
        raise ValueError(f"{kind} takes {_FRAME_ARITIES[kind]} argument(s), got {len(args)}")
    if kind == "ETRUE":
        if props is None:
            raise ValueError("ETRUE needs an explicit PropSet")
        return etrue(props)
    if kind in ("NOT", "CO"):
        return co(args[0])
    if kind == "CAP":
        return cap(args[0], args[1])
    if kind == "ALLB":
        return all_both(args[0])
    if kind == "ALLL":
        return all_left(args[0])
    if kind == "ALLR":
        return all_right(args[0])
    if kind == "STRICT":
        if props is None:
            raise ValueError("STRICT needs an explicit PropSet")
        return strict(args[0], props)
    if kind == "STRICT_VAL":
        return strict_val(args[0])
    return trace_tree(args[0])
