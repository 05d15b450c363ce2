"""Instance generators: the star family and random test inputs."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

import numpy as np

from .aggregate import TermGroup
from .core import LiteralForm, PseudoBooleanFunction


def gen_star_family(edges: Iterable[tuple[int, int]], n: int) -> PseudoBooleanFunction:
    """``sum_{(i,j) in E} x_0 x_i x_j`` with the hub ``x_0`` stored as variable ``n + 1``."""
    hub = n + 1
    terms = []
    for i, j in edges:
        if not (1 <= i <= n and 1 <= j <= n) or i == j:
            raise ValueError(f"edge ({i}, {j}) is not over distinct vertices 1..{n}")
        terms.append(((hub, i, j), 1))
    return PseudoBooleanFunction(terms, n_vars=hub)


def _nonzero(rng: np.random.Generator, bound: int) -> int:
    v = int(rng.integers(1, bound + 1))
    return v if rng.random() < 0.5 else -v


def random_pbf(
    rng: np.random.Generator,
    n: int,
    max_degree: int = 5,
    max_terms: int = 10,
    coef_bound: int = 10,
    higher_sign: str | None = None,
) -> PseudoBooleanFunction:
    """Random integer polynomial; ``higher_sign='negative'`` makes terms of degree >= 3 negative."""
    terms = []
    for _ in range(int(rng.integers(1, max_terms + 1))):
        d = int(rng.integers(1, min(max_degree, n) + 1))
        key = tuple(int(v) + 1 for v in rng.choice(n, size=d, replace=False))
        c = _nonzero(rng, coef_bound)
        if d >= 3 and higher_sign == "negative":
            c = -abs(c)
        elif d >= 3 and higher_sign == "positive":
            c = abs(c)
        terms.append((key, c))
    return PseudoBooleanFunction(terms, n_vars=n)


def random_unary_negaform(
    rng: np.random.Generator, n: int, max_terms: int = 8, max_degree: int = 5, coef_bound: int = 10
) -> LiteralForm:
    terms = []
    for _ in range(int(rng.integers(1, max_terms + 1))):
        d = int(rng.integers(1, min(max_degree, n) + 1))
        vs = [int(v) + 1 for v in rng.choice(n, size=d, replace=False)]
        sign = 1 if rng.random() < 0.5 else -1
        terms.append((-int(rng.integers(1, coef_bound + 1)), [sign * v for v in vs]))
    return LiteralForm(terms, n_vars=n)


def random_submodular_quadratic(
    rng: np.random.Generator, n: int, coef_bound: int = 10, density: float = 0.5
) -> PseudoBooleanFunction:
    """Random quadratic with nonpositive pair coefficients and small denominators."""
    def rational(lo, hi):
        return Fraction(int(rng.integers(lo, hi + 1)), int(rng.integers(1, 4)))

    terms = [((), rational(-coef_bound, coef_bound))]
    terms += [((i,), rational(-coef_bound, coef_bound)) for i in range(1, n + 1)]
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if rng.random() < density:
                terms.append(((i, j), rational(-coef_bound, 0)))
    return PseudoBooleanFunction(terms, n_vars=n)


def random_tree(rng: np.random.Generator, p: int, branch: float = 0.6):
    """Random binary tree of depth <= p (root always split when p >= 1)."""
    def grow(depth):
        if depth >= p or (depth > 0 and rng.random() > branch):
            return None
        return (grow(depth + 1), grow(depth + 1))

    return grow(0)


def random_term_group(
    rng: np.random.Generator, n: int, max_common: int = 3, max_members: int = 5, sign: str | None = None
) -> TermGroup:
    k = int(rng.integers(1, min(max_common, n - 1) + 1))
    perm = [int(v) + 1 for v in rng.permutation(n)]
    common, rest = tuple(sorted(perm[:k])), perm[k:]
    members = []
    for _ in range(int(rng.integers(1, max_members + 1))):
        size = int(rng.integers(0, len(rest) + 1))
        h = tuple(sorted(int(v) for v in rng.choice(rest, size=size, replace=False)))
        members.append((Fraction(int(rng.integers(1, 11)), int(rng.integers(1, 4))), h))
    if sign is None:
        sign = "positive" if rng.random() < 0.5 else "negative"
    return TermGroup(common, tuple(members), sign)
