"""Exact oracles: minimisation by enumeration, the quadratization identity,
submodularity tests, negaform recognition and quadratization metrics."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import LiteralForm, PseudoBooleanFunction
from .errors import CapExceededError, UniverseMismatchError
from .kernels import (
    eliminate_min,
    integer_scale,
    lattice_violation,
    second_diff_violation,
    term_mask,
    values_table,
)

DEFAULT_CAP = 24
LATTICE_CAP = 10
SECOND_DIFF_CAP = 22


@dataclass(frozen=True)
class QuadMetrics:
    aux_count: int
    term_count: int
    positive_quadratic_terms: int
    max_abs_coefficient: Fraction


@dataclass(frozen=True)
class MinResult:
    value: Fraction
    argmin: tuple[int, ...]


def index_to_assignment(idx: int, n: int) -> tuple[int, ...]:
    return tuple((idx >> (n - 1 - k)) & 1 for k in range(n))


def _check_cap(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise CapExceededError(f"{what} over {n} variables exceeds cap {cap}")


def scaled_tables(functions: list[PseudoBooleanFunction], n: int) -> tuple[int, list[np.ndarray]]:
    """Value tables of several functions over ``2**n`` points, scaled by one common integer."""
    scale, ints, dtype = integer_scale([[c for _, c in f.items()] for f in functions])
    tables = []
    for f, coeffs in zip(functions, ints):
        masks = np.array([term_mask(k, n) for k in f], dtype=np.int64)
        tables.append(values_table(n, masks, np.array(coeffs, dtype=dtype)))
    return scale, tables


def value_table(f: PseudoBooleanFunction, cap: int = DEFAULT_CAP) -> list[Fraction]:
    """``f`` at every assignment, indexed with ``x_1`` as the most significant bit."""
    _check_cap(f.n_vars, cap, "value table")
    scale, (table,) = scaled_tables([f], f.n_vars)
    return [Fraction(int(v), scale) for v in table]


def brute_force_min(f: PseudoBooleanFunction, cap: int = DEFAULT_CAP) -> MinResult:
    _check_cap(f.n_vars, cap, "brute_force_min")
    scale, (table,) = scaled_tables([f], f.n_vars)
    idx = int(np.argmin(table))
    return MinResult(Fraction(int(table[idx]), scale), index_to_assignment(idx, f.n_vars))


def _min_over_aux_scaled(g: PseudoBooleanFunction, n_x: int, extra: list[PseudoBooleanFunction], cap: int):
    _check_cap(n_x, cap, "min over auxiliaries")
    scale, ints, dtype = integer_scale(
        [[c for _, c in g.items()]] + [[c for _, c in h.items()] for h in extra]
    )
    groups: dict[tuple[int, ...], tuple[list[int], list[int]]] = {}
    for (key, _), c in zip(g.items(), ints[0]):
        scope = tuple(v for v in key if v > n_x)
        masks, coeffs = groups.setdefault(scope, ([], []))
        masks.append(term_mask((v for v in key if v <= n_x), n_x))
        coeffs.append(c)
    factors = {
        scope: values_table(n_x, np.array(m, dtype=np.int64), np.array(c, dtype=dtype))
        for scope, (m, c) in groups.items()
    }
    mins = eliminate_min(1 << n_x, factors, n_x, cap)
    others = []
    for h, coeffs in zip(extra, ints[1:]):
        masks = np.array([term_mask(k, n_x) for k in h], dtype=np.int64)
        others.append(values_table(n_x, masks, np.array(coeffs, dtype=dtype)))
    return scale, mins, others


def min_over_aux(g: PseudoBooleanFunction, n_x: int, cap: int = DEFAULT_CAP) -> list[Fraction]:
    """``min_w g(x, w)`` for every ``x`` over variables ``1..n_x``; the rest are minimised out.

    The auxiliaries are eliminated exactly (min-sum variable elimination), so
    the cost is governed by the interaction structure of the auxiliaries, not
    their count.  ``cap`` bounds ``n_x`` plus the widest intermediate table.
    """
    scale, mins, _ = _min_over_aux_scaled(g, n_x, [], cap)
    return [Fraction(int(v), scale) for v in mins]


def is_quadratization(f: PseudoBooleanFunction, g: PseudoBooleanFunction, cap: int = DEFAULT_CAP) -> bool:
    """True iff ``f(x) == min_w g(x, w)`` for every ``x``.

    ``x`` ranges over ``f``'s universe ``1..f.n_vars``; every variable of ``g``
    beyond it is auxiliary.
    """
    n_x = f.n_vars
    if g.n_vars < n_x:
        raise UniverseMismatchError(f"g has universe {g.n_vars}, smaller than f's {n_x}")
    _, mins, (target,) = _min_over_aux_scaled(g, n_x, [f], cap)
    return bool(np.array_equal(mins, target))


def is_submodular_lattice(f: PseudoBooleanFunction, cap: int = LATTICE_CAP) -> bool:
    _check_cap(f.n_vars, cap, "lattice submodularity test")
    _, (table,) = scaled_tables([f], f.n_vars)
    return lattice_violation(table) == (-1, -1)


def is_submodular_second_diff(f: PseudoBooleanFunction, cap: int = SECOND_DIFF_CAP) -> bool:
    _check_cap(f.n_vars, cap, "second-difference submodularity test")
    _, (table,) = scaled_tables([f], f.n_vars)
    return second_diff_violation(table, f.n_vars)[0] == -1


def quadratic_submodularity(g: PseudoBooleanFunction) -> bool:
    if g.degree > 2:
        raise ValueError(f"expected a quadratic function, got degree {g.degree}")
    return all(c <= 0 for key, c in g.items() if len(key) == 2)


def is_unary_negaform(form: LiteralForm) -> bool:
    """Every non-constant term is negative and uses a single polarity."""
    for coef, lits in form:
        if not lits:
            continue
        if coef >= 0:
            return False
        if not (all(l > 0 for l in lits) or all(l < 0 for l in lits)):
            return False
    return True


def positive_quadratic_terms(g: PseudoBooleanFunction) -> int:
    return sum(1 for key, c in g.items() if len(key) == 2 and c > 0)


def metrics(q) -> QuadMetrics:
    """Size and non-submodularity counts of a :class:`~pbquad.termwise.Quadratization`."""
    g = q.g
    return QuadMetrics(
        aux_count=len(q.aux),
        term_count=len(g),
        positive_quadratic_terms=positive_quadratic_terms(g),
        max_abs_coefficient=max((abs(c) for _, c in g.items()), default=Fraction(0)),
    )
