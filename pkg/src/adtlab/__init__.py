"""Attack-defense trees with trace-language semantics."""

from adtlab.core import (
    Adt,
    AndN,
    BudgetError,
    Counter,
    Eps,
    Formula,
    Leaf,
    OrN,
    PropSet,
    SandN,
    Trace,
    Valuation,
    counterdepth,
    leaves_count,
    size,
)

__all__ = [
    "Adt",
    "AndN",
    "BudgetError",
    "Counter",
    "Eps",
    "Formula",
    "Leaf",
    "OrN",
    "PropSet",
    "SandN",
    "Trace",
    "Valuation",
    "counterdepth",
    "leaves_count",
    "size",
]
