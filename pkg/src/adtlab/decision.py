"""User-facing non-emptiness and equivalence verdicts.

Exact answers exist only in the shallow part of the hierarchy: the small
model property decides non-emptiness up to counterdepth 1, and generator
comparison decides equivalence at depth 0.  Everything deeper falls back
to bounded enumeration, and the verdict then says so — a NoUpToBound is
never dressed up as a No.

Equivalence reduces to non-emptiness of OR(C(t1,t2), C(t2,t1)), which
raises the depth by one; the verdict records the depth at which the
question was actually decided so exactness (or its absence) is visible.
"""

from __future__ import annotations

from dataclasses import dataclass

from adtlab.core import DEFAULT_BUDGET, Adt, Counter, OrN, Trace, counterdepth
from adtlab.generators import distinguishing_trace, equiv_adt0, nonempty_smp
from adtlab.semantics import enumerate_traces, member

YES = "Yes"
NO = "No"
NO_UP_TO_BOUND = "NoUpToBound"

GEN_SMP = "GEN_SMP"
GEN0_EXACT = "GEN0_EXACT"
BOUNDED = "BOUNDED"
REDUCTION = "REDUCTION"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a decision query.  bound is None exactly when the
    answer is unconditional; witness carries a member of the language
    (non-emptiness) or a distinguishing trace (equivalence)."""

    answer: str
    method: str
    witness: Trace | None = None
    bound: int | None = None
    depth: int | None = None

    def __post_init__(self):
        if self.answer == NO_UP_TO_BOUND and self.bound is None:
            raise ValueError("a bounded no must carry its bound")


def nonempty(
    t: Adt,
    method: str = "auto",
    maxlen: int | None = None,
    budget: int = DEFAULT_BUDGET,
) -> Verdict:
    """Is the language of t non-empty?  method gen gives an exact answer
    for counterdepth ≤ 1 via the small model property; bounded searches
    up to maxlen; auto picks gen whenever it applies."""
    depth = counterdepth(t)
    if method == "auto":
        method = "gen" if depth <= 1 else "bounded"
    if method == "gen":
        found, w = nonempty_smp(t)  # raises for depth > 1
        if found:
            assert w is not None and member(t, w)
            return Verdict(YES, GEN_SMP, witness=w, depth=depth)
        return Verdict(NO, GEN_SMP, depth=depth)
    if method == "bounded":
        if maxlen is None:
            raise ValueError("the bounded method needs maxlen")
        for w in enumerate_traces(t, maxlen, budget):
            assert member(t, w)
            return Verdict(YES, BOUNDED, witness=w, depth=depth)
        return Verdict(NO_UP_TO_BOUND, BOUNDED, bound=maxlen, depth=depth)
    raise ValueError(f"unknown method {method!r} (auto, gen or bounded)")


def equiv(
    t1: Adt,
    t2: Adt,
    method: str = "auto",
    maxlen: int | None = None,
    budget: int = DEFAULT_BUDGET,
) -> Verdict:
    """Do t1 and t2 have the same language?  Yes with bound None is
    exact; Yes with a bound means no difference was found up to that
    length.  A No always carries a trace the two trees disagree on.

    Methods: gen0 (exact, both depths 0), reduction (non-emptiness of
    OR(C(t1,t2), C(t2,t1)) — exact when that tree stays within depth 1),
    bounded (direct comparison up to maxlen), auto (gen0 when possible,
    else reduction)."""
    if t1.props != t2.props:
        raise ValueError("equivalence requires trees over the same PropSet")
    d1, d2 = counterdepth(t1), counterdepth(t2)
    if method == "auto":
        method = "gen0" if d1 == 0 and d2 == 0 else "reduction"
    if method == "gen0":
        if equiv_adt0(t1, t2):  # raises unless both depths are 0
            return Verdict(YES, GEN0_EXACT, depth=0)
        w = distinguishing_trace(t1, t2)
        assert w is not None and member(t1, w) != member(t2, w)
        return Verdict(NO, GEN0_EXACT, witness=w, depth=0)
    if method == "reduction":
        difference = OrN((Counter(t1, t2), Counter(t2, t1)))
        depth = counterdepth(difference)
        if depth > 1 and maxlen is None:
            raise ValueError(
                f"the difference tree has counterdepth {depth}; "
                "equivalence is only decided up to a bound — provide maxlen"
            )
        inner = nonempty(
            difference,
            method="gen" if depth <= 1 else "bounded",
            maxlen=maxlen,
            budget=budget,
        )
        if inner.answer == YES:
            w = inner.witness
            assert w is not None and member(t1, w) != member(t2, w)
            return Verdict(NO, REDUCTION, witness=w, depth=depth)
        if inner.answer == NO:
            return Verdict(YES, REDUCTION, depth=depth)
        return Verdict(YES, REDUCTION, bound=inner.bound, depth=depth)
    if method == "bounded":
        if maxlen is None:
            raise ValueError("the bounded method needs maxlen")
        t1_lang = enumerate_traces(t1, maxlen, budget)
        t2_lang = set(enumerate_traces(t2, maxlen, budget))
        diffs = [w for w in t1_lang if w not in t2_lang]
        diffs += [w for w in t2_lang if not member(t1, w)]
        if diffs:
            w = min(diffs, key=Trace.sort_key)
            return Verdict(NO, BOUNDED, witness=w, bound=maxlen)
        return Verdict(YES, BOUNDED, bound=maxlen)
    raise ValueError(f"unknown method {method!r} (auto, gen0, reduction or bounded)")
