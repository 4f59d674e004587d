"""Braid words, the action of B_n on Q^n, and coloring counts of braid closures."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels as K
from .errors import BudgetExceeded, IndexOutOfRange, InvalidTable, TooLarge
from .invariants import SUBQUANDLE_CAP, closure
from .quandle import Quandle

__all__ = [
    "BraidWord",
    "DEFAULT_BUDGET",
    "pack",
    "unpack",
    "apply_generator",
    "apply_word",
    "action_permutation",
    "coloring_count",
    "dominant_coloring_count",
    "check_budget",
]

DEFAULT_BUDGET = 1 << 24


@dataclass(frozen=True)
class BraidWord:
    """Element of B_n as a word; letter ``k > 0`` is the k-th generator, ``k < 0`` its inverse."""

    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise IndexOutOfRange(f"a braid needs at least one strand, got {self.strands}")
        letters = tuple(int(k) for k in self.letters)
        object.__setattr__(self, "letters", letters)
        for k in letters:
            if k == 0 or abs(k) > self.strands - 1:
                raise IndexOutOfRange(f"letter {k} is out of range for {self.strands} strands")

    @classmethod
    def parse(cls, text: str, strands: int) -> "BraidWord":
        """Whitespace-separated signed integers, e.g. ``"1 1 1"``."""
        try:
            letters = tuple(int(tok) for tok in text.split())
        except ValueError as exc:
            raise InvalidTable(f"cannot parse braid word {text!r}") from exc
        return cls(strands, letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return " ".join(str(k) for k in self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise IndexOutOfRange("cannot concatenate braids on different strand counts")
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-k for k in reversed(self.letters)))

    def stabilize(self, positive: bool = True) -> "BraidWord":
        """Markov stabilization: add a strand and append the new last generator."""
        n = self.strands
        return BraidWord(n + 1, self.letters + ((n if positive else -n),))

    def permutation(self) -> tuple[int, ...]:
        """Underlying strand permutation (position after applying the word, per starting position)."""
        pos = list(range(self.strands))
        for k in self.letters:
            i = abs(k) - 1
            pos[i], pos[i + 1] = pos[i + 1], pos[i]
        out = [0] * self.strands
        for p, s in enumerate(pos):
            out[s] = p
        return tuple(out)

    def _arrays(self) -> tuple[np.ndarray, np.ndarray]:
        letters = np.asarray(self.letters, dtype=np.int64)
        return np.abs(letters) - 1, (letters < 0).astype(np.int64)


def _powers(q: int, n: int) -> np.ndarray:
    return np.array([q**i for i in range(max(n, 1))], dtype=np.int64)


def check_budget(q: int, n: int, budget: int) -> int:
    states = q**n
    if states > budget:
        raise BudgetExceeded(states, budget)
    return states


def pack(q: int, coords: Sequence[int]) -> int:
    """Pack ``(x_1, ..., x_n)`` with ``x_1`` least significant."""
    t = 0
    for x in reversed(coords):
        if not 0 <= x < q:
            raise IndexOutOfRange(f"coordinate {x} outside 0..{q - 1}")
        t = t * q + int(x)
    return t


def unpack(q: int, n: int, t: int) -> tuple[int, ...]:
    if not 0 <= t < q**n:
        raise IndexOutOfRange(f"packed tuple {t} outside 0..{q**n - 1}")
    out = []
    for _ in range(n):
        t, x = divmod(t, q)
        out.append(x)
    return tuple(out)


def apply_generator(quandle: Quandle, n: int, i: int, t: int) -> int:
    """Image of the packed tuple ``t`` under the letter ``i``."""
    if i == 0 or abs(i) > n - 1:
        raise IndexOutOfRange(f"generator {i} is out of range for {n} strands")
    q = quandle.size
    x = list(unpack(q, n, t))
    j = abs(i) - 1
    a, b = x[j], x[j + 1]
    if i > 0:
        x[j], x[j + 1] = int(quandle.table[a, b]), a
    else:
        x[j], x[j + 1] = b, int(quandle.inverse_table[b, a])
    return pack(q, x)


def apply_word(quandle: Quandle, word: BraidWord, t: int) -> int:
    for k in word.letters:
        t = apply_generator(quandle, word.strands, k, t)
    return t


def action_permutation(quandle: Quandle, n: int, i: int) -> np.ndarray:
    """The letter ``i`` as a permutation array of all ``q**n`` packed tuples."""
    if i == 0 or abs(i) > n - 1:
        raise IndexOutOfRange(f"generator {i} is out of range for {n} strands")
    q = quandle.size
    t = np.arange(q**n, dtype=np.int64)
    p = q ** (abs(i) - 1)
    deltas = K.letter_deltas(quandle.table, quandle.inverse_table)
    return t + deltas[int(i < 0)][(t // p) % (q * q)] * p


def _word_setup(quandle: Quandle, word: BraidWord):
    q = quandle.size
    gens, signs = word._arrays()
    return gens, signs, _powers(q, word.strands), K.letter_deltas(quandle.table, quandle.inverse_table), q * q


def coloring_count(quandle: Quandle, word: BraidWord, budget: int = DEFAULT_BUDGET) -> int:
    """Tuples fixed by the word, which count the colorings of its closure."""
    q, n = quandle.size, word.strands
    size = check_budget(q, n, budget)
    if size == 0:
        return 0
    return int(K.fixed_count(size, *_word_setup(quandle, word)))


def fixed_mask_histogram(quandle: Quandle, word: BraidWord, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    q, n = quandle.size, word.strands
    size = check_budget(q, n, budget)
    if size == 0:
        return np.zeros(1, dtype=np.int64)
    gens, signs, powers, deltas, qq = _word_setup(quandle, word)
    return K.fixed_mask_histogram(size, n, q, gens, signs, powers, deltas, qq)


def dominant_coloring_count(quandle: Quandle, word: BraidWord, budget: int = DEFAULT_BUDGET) -> int:
    """Fixed tuples whose coordinates generate the whole quandle (surjective colorings)."""
    q = quandle.size
    if q > SUBQUANDLE_CAP:
        raise TooLarge(q, SUBQUANDLE_CAP)
    hist = fixed_mask_histogram(quandle, word, budget)
    full = (1 << q) - 1
    cache: dict[int, int] = {}
    total = 0
    for mask in np.flatnonzero(hist):
        mask = int(mask)
        if mask not in cache:
            cache[mask] = closure(quandle, mask)
        if cache[mask] == full:
            total += int(hist[mask])
    return total


def iter_fixed(quandle: Quandle, word: BraidWord) -> Iterable[tuple[int, ...]]:
    """Fixed tuples in pure Python; slow, meant for small cross-checks."""
    q, n = quandle.size, word.strands
    for t in range(q**n):
        if apply_word(quandle, word, t) == t:
            yield unpack(q, n, t)
