"""Graded cardinalities |Q^n/B_n| and their dominant parts."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .braid import DEFAULT_BUDGET, _powers, check_budget
from .errors import BudgetExceeded
from .invariants import SubquandleLattice, closure, subquandles
from .quandle import Quandle

__all__ = [
    "GradedSeries",
    "graded_cardinality",
    "orbit_labels",
    "graded_series",
    "dominant_series",
    "dominant_cardinality_direct",
    "incremental_series",
]


@dataclass(frozen=True)
class GradedSeries:
    """Exact values ``a_0 .. a_N``; ``truncated`` is set when higher degrees were cut by the budget."""

    label: str
    values: tuple[int, ...]
    truncated: bool = False
    requested: int = field(default=-1, compare=False)

    @property
    def max_degree(self) -> int:
        return len(self.values) - 1

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, n):
        return self.values[n]

    def __iter__(self):
        return iter(self.values)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "values": [str(v) for v in self.values],
            "max_degree": self.max_degree,
            "truncated": self.truncated,
        }


def _forward(q: Quandle) -> np.ndarray:
    return K.letter_deltas(q.table, q.inverse_table)[0]


def orbit_labels(q: Quandle, n: int, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """For each packed tuple, the least packed tuple in its orbit."""
    size = check_budget(q.size, n, budget)
    if size == 0:
        return np.zeros(0, dtype=np.int32)
    if n <= 1:
        return np.arange(size, dtype=np.int32)
    return K.orbit_roots(size, n, _powers(q.size, n), _forward(q), q.size**2)


def graded_cardinality(q: Quandle, n: int, budget: int = DEFAULT_BUDGET) -> int:
    """Number of orbits of B_n on Q^n."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    if n == 0:
        return 1
    size = check_budget(q.size, n, budget)
    if n == 1 or size == 0:
        return size
    return int(K.count_roots(orbit_labels(q, n, budget)))


def _label(q: Quandle, dominant: bool = False) -> str:
    base = q.name or f"Q{q.size}"
    return f"{base}:dom" if dominant else base


def graded_series(q: Quandle, max_degree: int, budget: int = DEFAULT_BUDGET) -> GradedSeries:
    values = []
    truncated = False
    for n in range(max_degree + 1):
        try:
            values.append(graded_cardinality(q, n, budget))
        except BudgetExceeded:
            truncated = True
            break
    return GradedSeries(_label(q), tuple(values), truncated, max_degree)


def dominant_series(
    q: Quandle,
    max_degree: int,
    budget: int = DEFAULT_BUDGET,
    lattice: SubquandleLattice | None = None,
) -> GradedSeries:
    """``dom(R, n) = a_n(R) - sum of dom(R', n)`` over closed ``R'`` strictly inside ``R``.

    The recursion runs over sub-quandles as subsets of ``q``, memoized by bitmask.
    """
    lattice = lattice or subquandles(q)
    values = []
    truncated = False
    for n in range(max_degree + 1):
        try:
            values.append(_dominant_at(q, lattice, n, budget))
        except BudgetExceeded:
            truncated = True
            break
    return GradedSeries(_label(q, True), tuple(values), truncated, max_degree)


def _dominant_at(q: Quandle, lattice: SubquandleLattice, n: int, budget: int) -> int:
    check_budget(q.size, n, budget)
    dom: dict[int, int] = {}
    # ascending bitmasks visit every subset after all of its subsets
    for mask in lattice.subsets:
        total = graded_cardinality(lattice.as_quandle(mask), n, budget)
        dom[mask] = total - sum(dom[m] for m in lattice.below(mask))
    return dom[lattice.full]


def dominant_cardinality_direct(q: Quandle, n: int, budget: int = DEFAULT_BUDGET) -> int:
    """Orbits whose coordinates generate all of ``q``, counted on one union-find pass.

    The generated sub-quandle is constant along an orbit, so the least element decides.
    """
    full = (1 << q.size) - 1
    if n == 0:
        return 1 if q.size == 0 else 0
    labels = orbit_labels(q, n, budget)
    if labels.size == 0:
        return 0
    hist = K.root_mask_histogram(labels, n, q.size)
    return int(sum(int(hist[m]) for m in np.flatnonzero(hist) if closure(q, int(m)) == full))


def incremental_series(q: Quandle, max_degree: int, budget: int = DEFAULT_BUDGET) -> GradedSeries:
    """Orbit counts degree by degree in pure Python.

    Every orbit in degree ``n`` meets some ``rep + (x,)`` with ``rep`` a degree
    ``n - 1`` representative, since B_{n-1} moves the first ``n - 1`` coordinates.
    Candidates are merged by exploring orbits under all generators.
    """
    table = q.rows()
    inv = [list(r) for r in q.inverse_table]
    values = [1]
    reps: list[tuple[int, ...]] = [()]
    truncated = False
    for n in range(1, max_degree + 1):
        if q.size**n > budget:
            truncated = True
            break
        seen: set[tuple[int, ...]] = set()
        new_reps = []
        for rep in reps:
            for x in range(q.size):
                cand = rep + (x,)
                if cand in seen:
                    continue
                new_reps.append(cand)
                seen.add(cand)
                queue = deque([cand])
                while queue:
                    t = queue.popleft()
                    for i in range(n - 1):
                        a, b = t[i], t[i + 1]
                        for img in (
                            t[:i] + (table[a][b], a) + t[i + 2:],
                            t[:i] + (b, inv[b][a]) + t[i + 2:],
                        ):
                            if img not in seen:
                                seen.add(img)
                                queue.append(img)
        reps = new_reps
        values.append(len(reps))
    return GradedSeries(_label(q), tuple(values), truncated, max_degree)
