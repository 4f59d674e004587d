"""Expected coloring counts: exact Burnside averages, Monte Carlo estimates, and moments."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels as K
from .braid import DEFAULT_BUDGET, _powers, action_permutation, check_budget
from .errors import StateSpaceTooLarge
from .invariants import DEFAULT_GROUP_CAP, PermGroup
from .quandle import Quandle, product, trivial
from .series import graded_cardinality

__all__ = [
    "BurnsideReport",
    "MonteCarloEstimate",
    "burnside_exact",
    "monte_carlo_mean",
    "moment",
    "covariance",
    "BURNSIDE_STATE_CAP",
    "RNG_ALGORITHM",
]

BURNSIDE_STATE_CAP = 10**4
RNG_ALGORITHM = "numpy.random.Philox seeded by SeedSequence([seed, sample_index])"


@dataclass(frozen=True)
class BurnsideReport:
    group_order: int
    average_fixed_points: Fraction
    orbit_count: int

    @property
    def equal(self) -> bool:
        return self.average_fixed_points == self.orbit_count

    def to_dict(self) -> dict:
        return {
            "group_order": str(self.group_order),
            "average_fixed_points": str(self.average_fixed_points),
            "orbit_count": str(self.orbit_count),
            "equal": self.equal,
        }


def image_group(q: Quandle, n: int, state_cap: int = BURNSIDE_STATE_CAP) -> PermGroup:
    """Subgroup of Sym(Q^n) generated by the images of the braid generators."""
    size = q.size**n
    if size > state_cap:
        raise StateSpaceTooLarge(size, state_cap)
    gens = [action_permutation(q, n, i) for i in range(1, n)]
    return PermGroup(gens, degree=size)


def burnside_exact(
    q: Quandle,
    n: int,
    cap: int = DEFAULT_GROUP_CAP,
    state_cap: int = BURNSIDE_STATE_CAP,
) -> BurnsideReport:
    """Average number of fixed tuples over the finite image of B_n, against the orbit count."""
    group = image_group(q, n, state_cap)
    order = group.order(cap)
    ident = np.arange(group.degree)
    fixed = 0
    for block in group.iter_element_blocks(block_rows=max(1, 2**22 // max(group.degree, 1)), cap=cap):
        fixed += int((block == ident).sum())
    return BurnsideReport(order, Fraction(fixed, order), graded_cardinality(q, n))


@dataclass(frozen=True)
class MonteCarloEstimate:
    samples: int
    walk_length: int
    mean: Fraction
    sample_variance: Fraction
    seed: int
    strands: int
    algorithm: str = RNG_ALGORITHM

    @property
    def standard_error(self) -> float:
        if self.samples == 0:
            return math.inf
        return math.sqrt(float(self.sample_variance) / self.samples)

    def to_dict(self) -> dict:
        return {
            "samples": str(self.samples),
            "walk_length": str(self.walk_length),
            "strands": self.strands,
            "mean": str(self.mean),
            "sample_variance": str(self.sample_variance),
            "standard_error": repr(self.standard_error),
            "seed": str(self.seed),
            "rng": self.algorithm,
        }


def _lazy_walk(rng: np.random.Generator, n: int, length: int) -> tuple[np.ndarray, np.ndarray]:
    """Hold with probability 1/2, otherwise a uniform letter among the ``2(n-1)`` signed generators."""
    if n < 2 or length == 0:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    r = rng.integers(0, 4 * (n - 1), size=length)
    moves = r[r >= 2 * (n - 1)] - 2 * (n - 1)
    return (moves // 2).astype(np.int64), (moves % 2).astype(np.int64)


def monte_carlo_mean(
    q: Quandle,
    n: int,
    samples: int,
    walk_length: int,
    seed: int,
    budget: int = DEFAULT_BUDGET,
) -> MonteCarloEstimate:
    """Fixed-point counts of lazy random words, one independent stream per sample index."""
    if not 0 <= seed < 2**64:
        raise ValueError("seed must be a 64-bit unsigned integer")
    if samples < 0 or walk_length < 0:
        raise ValueError("samples and walk_length must be non-negative")
    size = check_budget(q.size, n, budget)
    powers = _powers(q.size, n)
    deltas = K.letter_deltas(q.table, q.inverse_table)
    total = 0
    total_sq = 0
    for i in range(samples):
        rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, i])))
        gens, signs = _lazy_walk(rng, n, walk_length)
        c = int(K.fixed_count(size, gens, signs, powers, deltas, q.size**2)) if size else 0
        total += c
        total_sq += c * c
    if samples == 0:
        mean, var = Fraction(0), Fraction(0)
    else:
        mean = Fraction(total, samples)
        var = (Fraction(total_sq) - samples * mean * mean) / (samples - 1) if samples > 1 else Fraction(0)
    return MonteCarloEstimate(samples, walk_length, mean, var, seed, n)


def _power(q: Quandle, k: int) -> Quandle:
    out = trivial(1)
    for _ in range(k):
        out = product(out, q)
    return out


def moment(q: Quandle, n: int, k: int, budget: int = DEFAULT_BUDGET) -> int:
    """``E[c^k]`` for the coloring count on n strands, as the orbit count of the k-fold product."""
    if k < 0:
        raise ValueError("moment order must be non-negative")
    check_budget(q.size**k, n, budget)
    return graded_cardinality(_power(q, k), n, budget)


def covariance(q: Quandle, r: Quandle, n: int, budget: int = DEFAULT_BUDGET) -> tuple[int, int]:
    """``(E[c_Q c_R], Cov(c_Q, c_R))`` through the product quandle."""
    check_budget(q.size * r.size, n, budget)
    joint = graded_cardinality(product(q, r), n, budget)
    return joint, joint - graded_cardinality(q, n, budget) * graded_cardinality(r, n, budget)
