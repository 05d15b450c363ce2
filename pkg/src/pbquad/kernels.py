"""Enumeration kernels over the Boolean cube.

Assignments of ``n`` variables are indexed by integers in ``[0, 2**n)`` with
``x_1`` as the most significant bit, so increasing index order is the
lexicographic order on ``(x_1, ..., x_n)``.

Each hot loop exists twice: a ``*_jit`` version written as plain loops (compiled
with numba when available) and a vectorised ``*_numpy`` version.  The public
dispatchers pick the jit path for ``int64`` data when numba is enabled and the
numpy path otherwise; ``object`` arrays of Python ints (used when scaled
coefficients could overflow ``int64``) always take the numpy path.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from ._accel import USE_NUMBA, njit
from .errors import CapExceededError

INT64_SAFE = 1 << 60


def integer_scale(coefficient_lists: Sequence[Iterable[Fraction]]) -> tuple[int, list[list[int]], type]:
    """Scale several coefficient lists by one common denominator.

    Returns ``(scale, int_lists, dtype)`` where ``dtype`` is ``np.int64`` if
    every partial sum is guaranteed to fit, else ``object``.
    """
    lists = [list(cs) for cs in coefficient_lists]
    scale = 1
    for cs in lists:
        for c in cs:
            scale = lcm(scale, c.denominator)
    ints = [[int(c * scale) for c in cs] for cs in lists]
    bound = 2 * sum(abs(c) for cs in ints for c in cs)
    dtype = np.int64 if bound < INT64_SAFE else object
    return scale, ints, dtype


def term_mask(key: Iterable[int], n: int) -> int:
    mask = 0
    for v in key:
        mask |= 1 << (n - v)
    return mask


# ---------------------------------------------------------------------------
# value table: f(x) for every x, via the subset-sum (zeta) transform


@njit
def _values_table_jit(n, masks, coeffs):
    size = 1 << n
    out = np.zeros(size, np.int64)
    for t in range(masks.shape[0]):
        out[masks[t]] += coeffs[t]
    for b in range(n):
        bit = 1 << b
        for idx in range(size):
            if idx & bit:
                out[idx] += out[idx ^ bit]
    return out


def _values_table_numpy(n, masks, coeffs):
    dtype = coeffs.dtype if coeffs.dtype == object else np.int64
    out = np.zeros(1 << n, dtype=dtype)
    if dtype == object:
        out[:] = 0
    np.add.at(out, masks, coeffs)
    cube = out.reshape((2,) * n)
    for axis in range(n):
        lo = (slice(None),) * axis + (0,)
        hi = (slice(None),) * axis + (1,)
        cube[hi] += cube[lo]
    return out


def values_table(n: int, masks: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """Values ``sum_t coeffs[t] * [masks[t] subset of x]`` for all ``2**n`` x."""
    masks = np.asarray(masks, dtype=np.int64)
    if USE_NUMBA and coeffs.dtype == np.int64:
        return _values_table_jit(n, masks, coeffs)
    return _values_table_numpy(n, masks, coeffs)


# ---------------------------------------------------------------------------
# submodularity scans; both return the first violating witness or -1s


@njit
def _lattice_violation_jit(vals):
    size = vals.shape[0]
    for x in range(size):
        for y in range(x + 1, size):
            if vals[x | y] + vals[x & y] > vals[x] + vals[y]:
                return x, y
    return -1, -1


def _lattice_violation_numpy(vals):
    size = vals.shape[0]
    for x in range(size):
        ys = np.arange(x + 1, size)
        bad = vals[x | ys] + vals[x & ys] > vals[x] + vals[ys]
        if bad.any():
            return x, int(ys[np.argmax(bad)])
    return -1, -1


def lattice_violation(vals: np.ndarray) -> tuple[int, int]:
    if USE_NUMBA and vals.dtype == np.int64:
        x, y = _lattice_violation_jit(vals)
        return int(x), int(y)
    return _lattice_violation_numpy(vals)


@njit
def _second_diff_violation_jit(vals, n):
    size = vals.shape[0]
    for i in range(n):
        bi = 1 << (n - 1 - i)
        for j in range(i + 1, n):
            bj = 1 << (n - 1 - j)
            both = bi | bj
            for idx in range(size):
                if idx & both == 0:
                    if vals[idx | both] + vals[idx] > vals[idx | bi] + vals[idx | bj]:
                        return i, j, idx
    return -1, -1, -1


def _second_diff_violation_numpy(vals, n):
    cube = vals.reshape((2,) * n)
    for i in range(n):
        for j in range(i + 1, n):
            def sl(a, b):
                idx = [slice(None)] * n
                idx[i], idx[j] = a, b
                return cube[tuple(idx)]

            bad = sl(1, 1) + sl(0, 0) > sl(1, 0) + sl(0, 1)
            if bad.any():
                rest = np.unravel_index(int(np.argmax(bad.ravel())), bad.shape) if bad.ndim else ()
                bits = list(rest)
                bits.insert(i, 0)
                bits.insert(j, 0)
                idx = 0
                for b in bits:
                    idx = (idx << 1) | int(b)
                return i, j, idx
    return -1, -1, -1


def second_diff_violation(vals: np.ndarray, n: int) -> tuple[int, int, int]:
    """First ``(i, j, x)`` (0-based variables) with a positive mixed second difference."""
    if USE_NUMBA and vals.dtype == np.int64:
        i, j, idx = _second_diff_violation_jit(vals, n)
        return int(i), int(j), int(idx)
    return _second_diff_violation_numpy(vals, n)


# ---------------------------------------------------------------------------
# batched min-sum variable elimination


def eliminate_min(
    batch: int,
    factors: dict[tuple[int, ...], np.ndarray],
    base_width: int,
    cap: int,
) -> np.ndarray:
    """Minimise ``sum_T c_T[b] * prod_{v in T} w_v`` over all ``w`` for each batch row ``b``.

    ``factors`` maps a sorted scope ``T`` of eliminated variables to a length
    ``batch`` coefficient vector.  Variables are eliminated greedily by
    minimum degree (ties to the smallest index).  ``base_width + |scope|`` of
    every intermediate table must stay within ``cap``.
    """
    dtype = object if any(c.dtype == object for c in factors.values()) else np.int64
    result = np.zeros(batch, dtype=dtype)
    if dtype == object:
        result[:] = 0
    tables: list[tuple[tuple[int, ...], np.ndarray]] = []
    for scope, coeff in factors.items():
        if not scope:
            result = result + coeff
            continue
        arr = np.zeros((batch,) + (2,) * len(scope), dtype=dtype)
        if dtype == object:
            arr[...] = 0
        arr[(slice(None),) + (1,) * len(scope)] = coeff
        tables.append((scope, arr))

    neighbours: dict[int, set[int]] = {}
    for scope, _ in tables:
        for v in scope:
            neighbours.setdefault(v, set()).update(u for u in scope if u != v)

    while neighbours:
        v = min(neighbours, key=lambda u: (len(neighbours[u]), u))
        related = [t for t in tables if v in t[0]]
        tables = [t for t in tables if v not in t[0]]
        union = sorted({u for scope, _ in related for u in scope})
        if base_width + len(union) > cap:
            raise CapExceededError(
                f"elimination table of width {base_width + len(union)} exceeds cap {cap}"
            )
        total = np.zeros((batch,) + (2,) * len(union), dtype=dtype)
        if dtype == object:
            total[...] = 0
        for scope, arr in related:
            shape = (batch,) + tuple(2 if u in scope else 1 for u in union)
            total = total + arr.reshape(shape)
        reduced = total.min(axis=1 + union.index(v))
        rest = tuple(u for u in union if u != v)
        if rest:
            tables.append((rest, reduced))
        else:
            result = result + reduced
        for u in neighbours.pop(v):
            neighbours[u].discard(v)
            neighbours[u].update(w for w in rest if w != u)
    return result
