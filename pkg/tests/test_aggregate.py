from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from pbquad.aggregate import (
    TermGroup,
    aggregate_pipeline,
    excess_degree,
    select_common_part,
    split_common_negative,
    split_common_positive,
)
from pbquad.core import AuxAllocator, LiteralForm, canonicalize
from pbquad.generate import random_pbf, random_term_group
from pbquad.termwise import quadratize_termwise
from pbquad.verify import is_quadratization

from conftest import P, naive_value


def group_value_by_w(group, form, n):
    """Values of the split form at w = 0 and w = 1 for every x."""
    g = canonicalize(form)
    out = {}
    for x in product((0, 1), repeat=n):
        out[x] = (naive_value(g, x + (0,)), naive_value(g, x + (1,)))
    return out


def test_positive_split_example():
    group = TermGroup((1,), ((1, (2,)), (1, (3,))), "positive")
    form = split_common_positive(group, AuxAllocator(3))
    assert canonicalize(form) == P({(1,): 2, (1, 4): -2, (2, 4): 1, (3, 4): 1})
    vals = group_value_by_w(group, form, 3)
    assert min(vals[(1, 1, 0)]) == 1
    assert min(vals[(0, 1, 1)]) == 0


def test_positive_split_pair_common_part():
    group = TermGroup((1, 2), ((1, (3,)), (1, (4,))), "positive")
    form = split_common_positive(group, AuxAllocator(4))
    f = canonicalize(group.as_function(4))
    assert f == P({(1, 2, 3): 1, (1, 2, 4): 1})
    vals = group_value_by_w(group, form, 4)
    for x in product((0, 1), repeat=4):
        assert min(vals[x]) == naive_value(f, x)


def test_negative_split_example():
    group = TermGroup((1,), ((1, (2,)), (1, (3,))), "negative")
    form = split_common_negative(group, AuxAllocator(3))
    assert canonicalize(form) == P({(4,): 2, (1, 4): -2, (2, 4): -1, (3, 4): -1})
    vals = group_value_by_w(group, form, 3)
    assert min(vals[(1, 1, 1)]) == -2
    assert min(vals[(1, 1, 0)]) == -1
    assert min(vals[(0, 1, 1)]) == 0


def test_group_validation():
    with pytest.raises(ValueError):
        TermGroup((1,), ((0, (2,)),), "positive")
    with pytest.raises(ValueError):
        TermGroup((1,), ((1, (1, 2)),), "positive")
    with pytest.raises(ValueError):
        split_common_negative(TermGroup((1,), ((1, (2,)),), "positive"), AuxAllocator(2))


@pytest.mark.parametrize("seed", range(40))
def test_common_part_value_is_optimal(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 7))
    group = random_term_group(rng, n)
    split = split_common_positive if group.sign == "positive" else split_common_negative
    form = split(group, AuxAllocator(n))
    f = canonicalize(group.as_function(n))
    vals = group_value_by_w(group, form, n)
    for x, (v0, v1) in vals.items():
        witness = int(all(x[c - 1] for c in group.common))
        assert (v0, v1)[witness] == min(v0, v1) == naive_value(f, x)


def test_select_common_part_examples():
    terms = LiteralForm([(1, (1, 2, 3)), (1, (1, 2, 4))]).terms
    part = select_common_part(terms)
    assert part.pair == (1, 2) and part.sign == "positive" and part.indices == (0, 1)
    assert select_common_part(LiteralForm([(1, (1, 2, 3)), (-1, (1, 2, 4))]).terms) is None
    assert select_common_part(LiteralForm([(1, (1, 2)), (-1, (2, 3)), (4, (1,))]).terms) is None


def test_select_common_part_tie_breaks():
    # pairs {1,2} positive and {1,2} negative both occur twice: positive wins
    terms = LiteralForm([(1, (1, 2, 3)), (1, (1, 2, 4)), (-1, (1, 2, 5)), (-1, (1, 2, 6))]).terms
    part = select_common_part(terms)
    assert part.pair == (1, 2) and part.sign == "positive"
    # {3,4} in three terms beats {1,2} in two
    terms = LiteralForm([(1, (1, 2, 3, 4)), (1, (1, 2, 3, 4, 5)), (1, (3, 4, 6))]).terms
    part = select_common_part(terms)
    assert part.pair == (3, 4) and len(part.indices) == 3


def test_pipeline_positive_example():
    f = P({(1, 2, 3): 1, (1, 2, 4): 1})
    q = aggregate_pipeline(f)
    w, s = 5, 6
    expected = P({(1, 2): 2, (3, w): 1, (4, w): 1, (s,): 4, (s, w): -2, (1, s): -2, (2, s): -2})
    assert q.g == expected
    assert (q.metrics.aux_count, q.metrics.positive_quadratic_terms) == (2, 3)
    assert is_quadratization(f, q.g)
    chain = quadratize_termwise(f, "chain").metrics
    assert (chain.aux_count, chain.positive_quadratic_terms) == (2, 4)


def test_pipeline_negative_example():
    f = P({(1, 2, 3): -1, (1, 2, 4): -1})
    q = aggregate_pipeline(f)
    (group,) = q.info["groups"]
    assert group.common == (1, 2) and group.sign == "negative"
    assert q.metrics.aux_count == 2
    assert is_quadratization(f, q.g)


@pytest.mark.parametrize("fallback", ["ishikawa", "chain"])
@pytest.mark.parametrize("seed", range(30))
def test_pipeline_random_exact_and_potential_decreases(fallback, seed):
    rng = np.random.default_rng(seed)
    f = random_pbf(rng, int(rng.integers(3, 7)), max_degree=5, max_terms=12)
    q = aggregate_pipeline(f, fallback)
    pots = q.info["potentials"]
    assert all(b < a for a, b in zip(pots, pots[1:]))
    assert q.g.degree <= 2
    assert is_quadratization(f, q.g)


@pytest.mark.parametrize("seed", range(30))
def test_positive_group_split_never_costs_more_aux(seed):
    # one shared pair, t >= 2 positive members, chain on the residuals:
    # 1 + 1 + sum(|H| - 1) <= sum |H|
    rng = np.random.default_rng(seed)
    n = 7
    t = int(rng.integers(2, 5))
    members = []
    for _ in range(t):
        h = tuple(sorted(int(v) + 3 for v in rng.choice(n - 2, size=int(rng.integers(1, 4)), replace=False)))
        members.append((Fraction(int(rng.integers(1, 5))), h))
    group = TermGroup((1, 2), tuple(members), "positive")
    fresh = AuxAllocator(n)
    form = split_common_positive(group, fresh)
    residual = quadratize_termwise(canonicalize(form).with_universe(fresh.n_vars), "chain")
    per_term = sum(len(h) for _, h in members)
    assert 1 + residual.metrics.aux_count <= per_term


def test_negative_group_split_can_cost_more_aux():
    # kzfd needs one aux per negative term whatever its degree, so the split loses here
    f = P({(1, 2, 3, 4): -1, (1, 2, 5, 6): -1})
    assert quadratize_termwise(f, "chain").metrics.aux_count == 2
    q = aggregate_pipeline(f)
    assert q.metrics.aux_count == 4
    assert is_quadratization(f, q.g)


def test_excess_degree():
    assert excess_degree([(1, (1, 2, 3, 4)), (1, (1, 2)), (1, (1, 2, 3))]) == 3


def test_pipeline_rejects_unknown_fallback():
    with pytest.raises(ValueError):
        aggregate_pipeline(P({(1, 2, 3): 1}), "rkfj")
