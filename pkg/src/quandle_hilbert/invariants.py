"""Structural invariants of finite quandles: Inn(Q), components, exp, sub-quandles, dim."""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .errors import EmptyQuandle, GroupTooLarge, TooLarge
from .quandle import Quandle

__all__ = [
    "PermGroup",
    "SubquandleLattice",
    "inn_group",
    "pi0",
    "exp_q",
    "closure",
    "subquandles",
    "dim_q",
    "mask_elements",
    "DEFAULT_GROUP_CAP",
    "SUBQUANDLE_CAP",
]

DEFAULT_GROUP_CAP = 10**6
SUBQUANDLE_CAP = 16


class PermGroup:
    """Permutation group on ``0..degree-1`` given by generators.

    Permutations are arrays ``p`` with ``p[x]`` the image of ``x``. Products
    are read left to right: ``a * b`` applies ``a`` first, which is ``b[a]``.

    ``order`` comes from a Schreier-Sims stabilizer chain; ``elements`` is a
    breadth-first closure and is only materialized on request.
    """

    def __init__(self, generators: Sequence[Sequence[int]], degree: int | None = None):
        gens = [np.asarray(g, dtype=np.int64) for g in generators]
        if degree is None:
            degree = len(gens[0]) if gens else 0
        self.degree = degree
        ident = np.arange(degree)
        self.generators = [g for g in gens if not np.array_equal(g, ident)]
        self._elements: list[tuple[int, ...]] | None = None
        self._chain: _StabilizerChain | None = None

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, generators={len(self.generators)})"

    def chain(self, cap: int | None = None) -> "_StabilizerChain":
        if self._chain is None:
            self._chain = _StabilizerChain(self.degree, self.generators, cap)
        elif cap is not None and self._chain.order > cap:
            raise GroupTooLarge(cap)
        return self._chain

    def order(self, cap: int | None = None) -> int:
        """Group order; raises :class:`GroupTooLarge` as soon as it provably exceeds ``cap``."""
        if self._elements is not None:
            return len(self._elements)
        return self.chain(cap).order

    def elements(self, cap: int = DEFAULT_GROUP_CAP) -> list[tuple[int, ...]]:
        """All elements by closure under right multiplication with the generators."""
        if self._elements is not None:
            return self._elements
        ident = tuple(range(self.degree))
        gens = [tuple(int(v) for v in g) for g in self.generators]
        seen = {ident}
        queue = deque([ident])
        while queue:
            p = queue.popleft()
            for g in gens:
                q = tuple(g[i] for i in p)
                if q not in seen:
                    if len(seen) >= cap:
                        raise GroupTooLarge(cap)
                    seen.add(q)
                    queue.append(q)
        self._elements = sorted(seen)
        return self._elements

    def orbits(self) -> list[list[int]]:
        parent = list(range(self.degree))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.generators:
            for x in range(self.degree):
                a, b = find(x), find(int(g[x]))
                if a != b:
                    parent[max(a, b)] = min(a, b)
        groups: dict[int, list[int]] = {}
        for x in range(self.degree):
            groups.setdefault(find(x), []).append(x)
        return sorted(groups.values())

    def iter_element_blocks(self, block_rows: int = 4096, cap: int | None = None) -> Iterator[np.ndarray]:
        """Yield every element exactly once, as rows of 2-d arrays of at most ``block_rows`` rows."""
        yield from self.chain(cap).iter_blocks(block_rows)


class _Level:
    __slots__ = ("base", "gens", "orbit", "parent_point", "parent_gen", "_cache")

    def __init__(self, base: int):
        self.base = base
        self.gens: list[np.ndarray] = []
        self.orbit: list[int] = [base]
        # Schreier vector: point -> (previous point, generator index); keeps memory O(degree)
        self.parent_point: dict[int, int] = {base: -1}
        self.parent_gen: dict[int, int] = {base: -1}
        self._cache: dict[int, np.ndarray] = {}

    def transversal(self, point: int, degree: int) -> np.ndarray:
        """An element mapping ``base`` to ``point``."""
        got = self._cache.get(point)
        if got is not None:
            return got
        path = []
        p = point
        while p != self.base:
            path.append(self.parent_gen[p])
            p = self.parent_point[p]
        u = np.arange(degree)
        for gi in reversed(path):
            u = self.gens[gi][u]
        if len(self._cache) < 4096:
            self._cache[point] = u
        return u


class _StabilizerChain:
    """Deterministic incremental Schreier-Sims."""

    def __init__(self, degree: int, generators: list[np.ndarray], cap: int | None):
        self.degree = degree
        self.levels: list[_Level] = []
        self.cap = cap
        for g in generators:
            self._add(0, g)

    @property
    def order(self) -> int:
        return math.prod(len(lv.orbit) for lv in self.levels)

    def _check_cap(self):
        if self.cap is not None and self.order > self.cap:
            raise GroupTooLarge(self.cap)

    def sift(self, g: np.ndarray, start: int = 0) -> tuple[np.ndarray, int]:
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            b = int(g[lv.base])
            if b not in lv.parent_point:
                return g, i
            u = lv.transversal(b, self.degree)
            inv = np.empty_like(u)
            inv[u] = np.arange(self.degree)
            g = inv[g]  # g then u^-1
        return g, len(self.levels)

    def contains(self, g: np.ndarray) -> bool:
        h, _ = self.sift(np.asarray(g, dtype=np.int64))
        return bool(np.array_equal(h, np.arange(self.degree)))

    def _add(self, i: int, g: np.ndarray):
        ident = np.arange(self.degree)
        h, _ = self.sift(g, i)
        if np.array_equal(h, ident):
            return
        if i == len(self.levels):
            moved = np.flatnonzero(g != ident)
            self.levels.append(_Level(int(moved[0])))
        lv = self.levels[i]
        lv.gens.append(g)
        lv._cache.clear()
        gi_new = len(lv.gens) - 1
        # pairs (point, generator) still to process: every old point with the new
        # generator, and every newly found point with every generator
        work = deque((p, gi_new) for p in list(lv.orbit))
        while work:
            p, gi = work.popleft()
            s = lv.gens[gi]
            q = int(s[p])
            if q not in lv.parent_point:
                lv.parent_point[q] = p
                lv.parent_gen[q] = gi
                lv.orbit.append(q)
                self._check_cap()
                work.extend((q, k) for k in range(len(lv.gens)))
                continue
            up = lv.transversal(p, self.degree)
            uq = lv.transversal(q, self.degree)
            inv_q = np.empty_like(uq)
            inv_q[uq] = ident
            schreier = inv_q[s[up]]  # u_p then s then u_q^-1, fixes the base point
            if not np.array_equal(schreier, ident):
                self._add(i + 1, schreier)
                self._check_cap()

    def iter_blocks(self, block_rows: int) -> Iterator[np.ndarray]:
        ident = np.arange(self.degree)[None, :]
        transversals = [
            np.stack([lv.transversal(p, self.degree) for p in lv.orbit]) for lv in self.levels
        ]
        # element = u_k then ... then u_1, with u_i from level i (deepest first)
        order = list(reversed(transversals))

        def rec(partial: np.ndarray, depth: int):
            if depth == len(order):
                yield partial
                return
            ts = order[depth]
            step = max(1, block_rows // len(ts))
            for start in range(0, len(partial), step):
                chunk = partial[start:start + step]
                # every chunk row followed by every transversal element
                combined = ts[:, chunk].reshape(-1, self.degree)
                yield from rec(combined, depth + 1)

        yield from rec(ident, 0)


def inn_group(q: Quandle, cap: int = DEFAULT_GROUP_CAP) -> PermGroup:
    """Inner automorphism group, generated by the rows ``phi_x``; elements enumerated up to ``cap``."""
    group = PermGroup([q.table[x] for x in range(q.size)], degree=q.size)
    group.elements(cap)
    return group


def pi0(q: Quandle) -> list[list[int]]:
    """Connected components: classes of the relation generated by ``x ▷ y ~ y``.

    Components are sorted lists, ordered by their least element.
    """
    n = q.size
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    t = q.table
    for x in range(n):
        for y in range(n):
            a, b = find(y), find(int(t[x, y]))
            if a != b:
                parent[max(a, b)] = min(a, b)
    comps: dict[int, list[int]] = {}
    for y in range(n):
        comps.setdefault(find(y), []).append(y)
    return sorted(comps.values())


def _perm_order(p: np.ndarray) -> int:
    seen = np.zeros(len(p), dtype=bool)
    order = 1
    for start in range(len(p)):
        if seen[start]:
            continue
        k, x = 0, start
        while not seen[x]:
            seen[x] = True
            x = p[x]
            k += 1
        order = math.lcm(order, k)
    return order


def exp_q(q: Quandle) -> int:
    """Least ``N > 0`` with ``phi_x^N = id`` for every ``x``."""
    if q.size == 0:
        raise EmptyQuandle("exp is undefined for the empty quandle")
    return math.lcm(*(_perm_order(q.table[x]) for x in range(q.size)))


def mask_elements(mask: int) -> list[int]:
    out, i = [], 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def closure(q: Quandle, mask: int) -> int:
    """Bitmask of the sub-quandle generated by the elements in ``mask``."""
    t = q.table
    members = mask_elements(mask)
    frontier = list(members)
    current = mask
    while frontier:
        new = []
        for a in frontier:
            for b in members:
                for z in (int(t[a, b]), int(t[b, a])):
                    if not current >> z & 1:
                        current |= 1 << z
                        new.append(z)
        members.extend(new)
        frontier = new
    return current


@dataclass(frozen=True)
class SubquandleLattice:
    """All sub-quandles of ``quandle`` as ascending bitmasks (``0`` is the empty one)."""

    quandle: Quandle
    subsets: tuple[int, ...] = field(repr=False)

    @property
    def full(self) -> int:
        return (1 << self.quandle.size) - 1

    def __len__(self) -> int:
        return len(self.subsets)

    def __iter__(self):
        return iter(self.subsets)

    def __contains__(self, mask: int) -> bool:
        return mask in set(self.subsets)

    def proper(self) -> list[int]:
        return [m for m in self.subsets if m != self.full]

    def below(self, mask: int) -> list[int]:
        """Sub-quandles strictly contained in ``mask``."""
        return [m for m in self.subsets if m != mask and m & mask == m]

    def as_quandle(self, mask: int) -> Quandle:
        return self.quandle.restrict(mask_elements(mask))


def subquandles(q: Quandle) -> SubquandleLattice:
    """Enumerate closed subsets by extending each known one by a single element and re-closing."""
    if q.size > SUBQUANDLE_CAP:
        raise TooLarge(q.size, SUBQUANDLE_CAP)
    found = {0}
    queue = deque([0])
    while queue:
        s = queue.popleft()
        for x in range(q.size):
            if s >> x & 1:
                continue
            c = closure(q, s | 1 << x)
            if c not in found:
                found.add(c)
                queue.append(c)
    return SubquandleLattice(q, tuple(sorted(found)))


def dim_q(q: Quandle, lattice: SubquandleLattice | None = None) -> int:
    """Largest number of components of a sub-quandle (the empty one counts 0)."""
    lattice = lattice or subquandles(q)
    return max(len(pi0(lattice.as_quandle(m))) for m in lattice)
