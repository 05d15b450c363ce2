"""Name-based dispatch over every quadratization method."""

from __future__ import annotations

from .aggregate import aggregate_pipeline
from .core import AuxAllocator, PseudoBooleanFunction
from .termwise import (
    THREE_SPLIT,
    TWO_SPLIT,
    Quadratization,
    quadratize_kzfd,
    quadratize_split,
    quadratize_termwise,
    rosenberg_reduce,
)

METHODS = ("rosenberg", "kzfd", "chain", "ishikawa", "rkfj", "aggregate", "split2", "split3")


def quadratize(
    f: PseudoBooleanFunction,
    method: str,
    fallback: str = "ishikawa",
    fresh: AuxAllocator | None = None,
) -> Quadratization:
    if method == "rosenberg":
        return rosenberg_reduce(f, fresh)
    if method == "kzfd":
        return quadratize_kzfd(f, fresh)
    if method in ("chain", "ishikawa", "rkfj"):
        return quadratize_termwise(f, method, fresh)
    if method == "aggregate":
        return aggregate_pipeline(f, fallback, fresh)
    if method == "split2":
        return quadratize_split(f, TWO_SPLIT, fresh)
    if method == "split3":
        return quadratize_split(f, THREE_SPLIT, fresh)
    raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
