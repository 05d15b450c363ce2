from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from pbquad.core import PseudoBooleanFunction


def P(terms, n=None):
    """Shorthand: ``P({(1, 2): 1, (3,): -2})``."""
    return PseudoBooleanFunction(terms, n_vars=n)


def naive_value(f, x):
    """Direct evaluation, independent of the library's evaluate()."""
    total = Fraction(0)
    for key, c in f.items():
        prod = 1
        for v in key:
            prod *= x[v - 1]
        total += c * prod
    return total


def naive_min_over_aux(g, n_x):
    """min_w g(x, w) for every x by plain enumeration of (x, w)."""
    m = g.n_vars - n_x
    out = {}
    for x in product((0, 1), repeat=n_x):
        out[x] = min(naive_value(g, x + w) for w in product((0, 1), repeat=m))
    return out


def naive_is_quadratization(f, g):
    mins = naive_min_over_aux(g, f.n_vars)
    return all(mins[x] == naive_value(f, x) for x in mins)


@pytest.fixture
def rng():
    return np.random.default_rng(20121)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
