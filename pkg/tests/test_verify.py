from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from pbquad.core import AuxAllocator, LiteralForm, canonicalize
from pbquad.errors import CapExceededError, UniverseMismatchError
from pbquad.generate import random_pbf, random_unary_negaform
from pbquad.termwise import quadratize_negaform, quadratize_negative_term
from pbquad.verify import (
    brute_force_min,
    is_quadratization,
    is_submodular_lattice,
    is_submodular_second_diff,
    is_unary_negaform,
    metrics,
    quadratic_submodularity,
    value_table,
)

from conftest import P, naive_is_quadratization, naive_value


def test_brute_force_min_examples():
    r = brute_force_min(P({(1,): 1, (1, 2): -1}))
    assert (r.value, r.argmin) == (0, (0, 0))
    r = brute_force_min(P({(1, 2, 3): -1}))
    assert (r.value, r.argmin) == (-1, (1, 1, 1))
    r = brute_force_min(P({(1,): 2, (1, 2): -3}))
    assert (r.value, r.argmin) == (-1, (1, 1))


def test_brute_force_min_lexicographic_tie_break():
    # minimum 0 attained at (0,0), (0,1) and (1,0)
    r = brute_force_min(P({(1, 2): 1}))
    assert r.argmin == (0, 0)
    r = brute_force_min(P({(): 1, (1,): -1, (2,): -1, (1, 2): 1}))  # ~x1 ~x2
    assert r.value == 0 and r.argmin == (0, 1)


def test_brute_force_min_cap():
    with pytest.raises(CapExceededError):
        brute_force_min(P({(1,): 1}, n=30))


def test_is_quadratization_examples():
    f = P({(1, 2, 3): -1})
    q = quadratize_negative_term(1, (1, 2, 3), AuxAllocator(3))
    assert is_quadratization(f, q.g)
    assert not is_quadratization(P({(1, 2, 3): 1}), P({(1, 2): 1}, n=3))
    assert is_quadratization(f, f)
    assert not is_quadratization(f, P({(1, 2): -1}, n=3))


def test_is_quadratization_universe_mismatch():
    with pytest.raises(UniverseMismatchError):
        is_quadratization(P({(1, 2, 3): 1}), P({(1, 2): 1}))


@pytest.mark.parametrize("seed", range(25))
def test_is_quadratization_agrees_with_naive(seed):
    rng = np.random.default_rng(seed)
    f = random_pbf(rng, 3, max_degree=3, max_terms=4)
    g = random_pbf(rng, 5, max_degree=2, max_terms=8)
    g_good = quadratize_negative_term(1, (1, 2, 3), AuxAllocator(3)).g
    for cand in (g, g_good):
        assert is_quadratization(f, cand) == naive_is_quadratization(f, cand)


def test_submodular_lattice_examples():
    assert is_submodular_lattice(P({(1, 2): -1}))
    cube = P({(1, 2, 3): 1})
    assert not is_submodular_lattice(cube)
    x, y = (1, 1, 0), (1, 0, 1)
    join = tuple(a | b for a, b in zip(x, y))
    meet = tuple(a & b for a, b in zip(x, y))
    assert naive_value(cube, join) + naive_value(cube, meet) > naive_value(cube, x) + naive_value(cube, y)
    assert is_submodular_lattice(P({(1,): 3, (2,): -1, (): 4}))


def test_submodular_second_diff_examples():
    assert is_submodular_second_diff(P({(1, 2, 3): -1}))
    assert not is_submodular_second_diff(P({(1, 2, 3): 1}))
    assert is_submodular_second_diff(P({(1,): 1, (2,): 1}))


def test_quadratic_submodularity_examples():
    assert quadratic_submodularity(P({(1, 2): -1, (1,): 5}))
    assert not quadratic_submodularity(P({(1, 2): 1}))
    assert quadratic_submodularity(P({}))
    with pytest.raises(ValueError):
        quadratic_submodularity(P({(1, 2, 3): -1}))


def test_unary_negaform_examples():
    assert is_unary_negaform(LiteralForm([(-1, (1, 2)), (-1, (-1, -3))]))
    assert not is_unary_negaform(LiteralForm([(-1, (1, -2))]))
    assert not is_unary_negaform(LiteralForm([(1, (1, 2))]))


@pytest.mark.parametrize("seed", range(40))
def test_lattice_equals_second_difference(seed):
    rng = np.random.default_rng(seed)
    f = random_pbf(rng, 4, max_degree=4, max_terms=6, coef_bound=5)
    assert is_submodular_lattice(f) == is_submodular_second_diff(f)


@pytest.mark.parametrize("seed", range(40))
def test_quadratic_coefficient_test_equals_lattice(seed):
    rng = np.random.default_rng(seed)
    f = random_pbf(rng, 4, max_degree=2, max_terms=6, coef_bound=5)
    assert quadratic_submodularity(f) == is_submodular_lattice(f)


@pytest.mark.parametrize("seed", range(30))
def test_unary_negaforms_are_submodular_and_quadratize_submodularly(seed):
    rng = np.random.default_rng(seed)
    form = random_unary_negaform(rng, 5)
    assert is_unary_negaform(form)
    f = canonicalize(form)
    assert is_submodular_second_diff(f)
    q = quadratize_negaform(form)
    assert quadratic_submodularity(q.g)
    assert is_quadratization(f, q.g)


@pytest.mark.parametrize("seed", range(20))
def test_minimum_preserved_by_quadratization(seed):
    rng = np.random.default_rng(seed)
    f = random_pbf(rng, 5)
    from pbquad.methods import quadratize

    q = quadratize(f, "chain")
    assert is_quadratization(f, q.g)
    assert brute_force_min(f).value == brute_force_min(q.g).value


def test_metrics_examples():
    q = quadratize_negative_term(1, (1, 2, 3, 4), AuxAllocator(4))
    m = metrics(q)
    assert (m.aux_count, m.positive_quadratic_terms) == (1, 0)
    assert m.term_count == len(q.g) == 5
    assert m.max_abs_coefficient == 3


def test_value_table_fractions():
    f = P({(1,): Fraction(1, 3), (2,): Fraction(-1, 2)})
    assert value_table(f) == [0, Fraction(-1, 2), Fraction(1, 3), Fraction(-1, 6)]
