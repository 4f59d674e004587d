"""Compiled loops over packed tuples.

A tuple ``(x_1, ..., x_n)`` is packed as ``sum x_i q**(i-1)``. Letter ``i`` only
touches digits ``i-1`` and ``i``, whose joint value ``a + b q`` indexes a delta
table; the image is ``t + delta[a + b q] * q**(i-1)``.
"""
from __future__ import annotations

import numba
import numpy as np


def letter_deltas(table: np.ndarray, inverse: np.ndarray) -> np.ndarray:
    """Row 0: positive letters, row 1: inverse letters; both indexed by ``a + b q``."""
    q = table.shape[0]
    a = np.tile(np.arange(q, dtype=np.int64), q)
    b = np.repeat(np.arange(q, dtype=np.int64), q)
    out = np.empty((2, q * q), dtype=np.int64)
    if q == 0:
        return out
    # (a, b) -> (a ▷ b, a)
    out[0] = (table[a, b] - a) + (a - b) * q
    # (a, b) -> (b, inverse of phi_b applied to a)
    out[1] = (b - a) + (inverse[b, a] - b) * q
    return out


@numba.njit(cache=True)
def apply_letters(t, gens, signs, powers, deltas, qq):
    for k in range(gens.shape[0]):
        p = powers[gens[k]]
        c = (t // p) % qq
        t += deltas[signs[k], c] * p
    return t


@numba.njit(cache=True)
def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


@numba.njit(cache=True)
def orbit_roots(size, n, powers, forward, qq):
    """Union-find over ``size`` packed tuples; entry ``t`` ends as the least element of its orbit."""
    parent = np.arange(size).astype(np.int32)
    for t in range(size):
        for i in range(n - 1):
            p = powers[i]
            s = t + forward[(t // p) % qq] * p
            a = _find(parent, t)
            b = _find(parent, s)
            if a < b:
                parent[b] = a
            elif b < a:
                parent[a] = b
    for t in range(size):
        parent[t] = parent[parent[t]]
    return parent


@numba.njit(cache=True)
def count_roots(parent):
    c = 0
    for t in range(parent.shape[0]):
        if parent[t] == t:
            c += 1
    return c


@numba.njit(cache=True)
def tuple_mask(t, n, q):
    m = 0
    for _ in range(n):
        m |= 1 << (t % q)
        t //= q
    return m


@numba.njit(cache=True)
def root_mask_histogram(parent, n, q):
    """Number of orbits per coordinate bitmask of their least element."""
    hist = np.zeros(1 << q, dtype=np.int64)
    for t in range(parent.shape[0]):
        if parent[t] == t:
            hist[tuple_mask(t, n, q)] += 1
    return hist


@numba.njit(cache=True)
def fixed_count(size, gens, signs, powers, deltas, qq):
    c = 0
    for t in range(size):
        if apply_letters(t, gens, signs, powers, deltas, qq) == t:
            c += 1
    return c


@numba.njit(cache=True)
def fixed_mask_histogram(size, n, q, gens, signs, powers, deltas, qq):
    hist = np.zeros(1 << q, dtype=np.int64)
    for t in range(size):
        if apply_letters(t, gens, signs, powers, deltas, qq) == t:
            hist[tuple_mask(t, n, q)] += 1
    return hist
