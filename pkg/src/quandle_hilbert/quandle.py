"""Finite quandles as operation tables, plus constructors and isomorphism search.

Elements are the integers ``0..size-1`` and ``table[x][y]`` is ``x ▷ y``, i.e.
row ``x`` is the permutation ``phi_x`` by which ``x`` acts.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    AxiomViolation,
    InvalidTable,
    NotAGroup,
    NotAMorphism,
    NotAutomorphism,
    TwistConditionViolated,
)

__all__ = [
    "Quandle",
    "QuandleMorphism",
    "validate",
    "trivial",
    "dihedral",
    "conj",
    "product",
    "disjoint_union",
    "twisted_pointed",
    "find_isomorphism",
    "is_morphism",
    "iter_morphisms",
    "load",
    "loads",
    "dumps",
]


def _as_square(table, what: str = "table") -> np.ndarray:
    arr = np.asarray(table, dtype=np.int64)
    if arr.size == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise InvalidTable(f"{what} must be a square 2-d array, got shape {arr.shape}")
    n = arr.shape[0]
    if arr.min() < 0 or arr.max() >= n:
        raise InvalidTable(f"{what} entries must lie in [0, {n})")
    return arr


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=np.int64)
    arr.setflags(write=False)
    return arr


class Quandle:
    """An immutable, validated finite quandle.

    Construct through :func:`validate` or one of the constructors; the
    initializer trusts its input.
    """

    __slots__ = ("_table", "_inverse", "name", "_hash")

    def __init__(self, table: np.ndarray, name: str | None = None):
        self._table = _freeze(table)
        inv = np.empty_like(self._table)
        n = self._table.shape[0]
        cols = np.arange(n)
        for x in range(n):
            inv[x, self._table[x]] = cols
        self._inverse = _freeze(inv)
        self.name = name
        self._hash = None

    @property
    def size(self) -> int:
        return self._table.shape[0]

    @property
    def table(self) -> np.ndarray:
        return self._table

    @property
    def inverse_table(self) -> np.ndarray:
        """``inverse_table[x][z]`` is the ``y`` with ``x ▷ y = z``."""
        return self._inverse

    def op(self, x: int, y: int) -> int:
        return int(self._table[x, y])

    def row(self, x: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self._table[x])

    def rows(self) -> list[list[int]]:
        return self._table.tolist()

    def __len__(self) -> int:
        return self.size

    def __eq__(self, other) -> bool:
        if not isinstance(other, Quandle):
            return NotImplemented
        return self._table.shape == other._table.shape and bool(np.array_equal(self._table, other._table))

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.size, self._table.tobytes()))
        return self._hash

    def __repr__(self) -> str:
        label = f"{self.name!r}, " if self.name else ""
        return f"Quandle({label}size={self.size})"

    def renamed(self, name: str | None) -> "Quandle":
        return Quandle(self._table, name=name)

    def restrict(self, elements: Sequence[int], name: str | None = None) -> "Quandle":
        """The sub-quandle on ``elements`` (assumed closed), relabelled ``0..k-1`` in the given order."""
        elements = list(elements)
        index = {x: i for i, x in enumerate(elements)}
        sub = np.empty((len(elements), len(elements)), dtype=np.int64)
        for i, x in enumerate(elements):
            for j, y in enumerate(elements):
                z = int(self._table[x, y])
                if z not in index:
                    raise InvalidTable(f"subset is not closed: {x} ▷ {y} = {z}")
                sub[i, j] = index[z]
        return Quandle(sub, name=name)

    def relabel(self, perm: Sequence[int]) -> "Quandle":
        """Transport the structure along the bijection ``x -> perm[x]``."""
        perm = np.asarray(perm, dtype=np.int64)
        n = self.size
        new = np.empty((n, n), dtype=np.int64)
        new[np.ix_(perm, perm)] = perm[self._table]
        return Quandle(new, name=self.name)

    def to_dict(self) -> dict:
        d = {"size": self.size, "table": self.rows()}
        if self.name:
            d = {"name": self.name, **d}
        return d


def validate(table, name: str | None = None) -> Quandle:
    """Check the quandle axioms and return a :class:`Quandle`.

    The lexicographically first failing witness is reported; Q1 is checked
    for every element before Q2, and Q2 before Q3.
    """
    arr = _as_square(table)
    n = arr.shape[0]
    for x in range(n):
        if arr[x, x] != x:
            raise AxiomViolation("Q1", (x,))
    for x in range(n):
        seen = np.zeros(n, dtype=bool)
        for y in range(n):
            v = arr[x, y]
            if seen[v]:
                raise AxiomViolation("Q2", (x, y))
            seen[v] = True
    if n:
        # lhs[x,y,z] = x ▷ (y ▷ z), rhs[x,y,z] = (x ▷ y) ▷ (x ▷ z)
        xs = np.arange(n)[:, None, None]
        lhs = arr[xs, arr[None, :, :]]
        rhs = arr[arr[:, :, None], arr[:, None, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            raise AxiomViolation("Q3", tuple(bad[0]))
    return Quandle(arr, name=name)


@dataclass(frozen=True)
class QuandleMorphism:
    source: Quandle
    target: Quandle
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(v) for v in self.map))
        if len(self.map) != self.source.size:
            raise InvalidTable("morphism map length must equal the source size")
        if any(not 0 <= v < self.target.size for v in self.map):
            raise InvalidTable("morphism map values must index the target")
        bad = _first_violation(self.source, self.target, self.map)
        if bad is not None:
            raise NotAMorphism(*bad)

    def __call__(self, x: int) -> int:
        return self.map[x]

    def image(self) -> frozenset[int]:
        return frozenset(self.map)

    def is_surjective(self) -> bool:
        return len(self.image()) == self.target.size


def _first_violation(source: Quandle, target: Quandle, m: Sequence[int]):
    if source.size == 0:
        return None
    m = np.asarray(m, dtype=np.int64)
    lhs = m[source.table]
    rhs = target.table[m[:, None], m[None, :]]
    bad = np.argwhere(lhs != rhs)
    return tuple(int(v) for v in bad[0]) if len(bad) else None


def is_morphism(source: Quandle, target: Quandle, m: Sequence[int]) -> bool:
    return len(m) == source.size and _first_violation(source, target, m) is None


def iter_morphisms(source: Quandle, target: Quandle) -> Iterator[tuple[int, ...]]:
    """All quandle morphisms ``source -> target`` by backtracking with propagation."""
    s, t = source.size, target.size
    if s == 0:
        yield ()
        return
    if t == 0:
        return
    S, T = source.table, target.table

    def extend(m: list[int]):
        # propagate forced values m[x▷y] = m[x]▷m[y] until stable
        changed = True
        while changed:
            changed = False
            for x in range(s):
                if m[x] < 0:
                    continue
                for y in range(s):
                    if m[y] < 0:
                        continue
                    z = S[x, y]
                    w = T[m[x], m[y]]
                    if m[z] < 0:
                        m[z] = int(w)
                        changed = True
                    elif m[z] != w:
                        return None
        return m

    def rec(m: list[int]):
        try:
            x = m.index(-1)
        except ValueError:
            yield tuple(m)
            return
        for v in range(t):
            trial = list(m)
            trial[x] = v
            if extend(trial) is not None:
                yield from rec(trial)

    yield from rec([-1] * s)


def trivial(alpha: int, name: str | None = None) -> Quandle:
    if alpha < 0:
        raise ValueError("alpha must be non-negative")
    row = np.arange(alpha, dtype=np.int64)
    return Quandle(np.tile(row, (alpha, 1)).reshape(alpha, alpha), name=name or f"T{alpha}")


def dihedral(ell: int, name: str | None = None) -> Quandle:
    """``Z/ell`` with ``x ▷ y = 2x - y``."""
    if ell < 1:
        raise ValueError("ell must be positive")
    x = np.arange(ell, dtype=np.int64)
    return Quandle((2 * x[:, None] - x[None, :]) % ell, name=name or f"D{ell}")


def _check_group(g: np.ndarray) -> tuple[int, np.ndarray]:
    n = g.shape[0]
    if n == 0:
        raise NotAGroup("non-empty")
    ids = [e for e in range(n) if np.array_equal(g[e], np.arange(n)) and np.array_equal(g[:, e], np.arange(n))]
    if not ids:
        raise NotAGroup("identity")
    e = ids[0]
    inv = np.full(n, -1, dtype=np.int64)
    for a in range(n):
        hits = np.flatnonzero((g[a] == e) & (g[:, a] == e))
        if not len(hits):
            raise NotAGroup("inverse", (a,))
        inv[a] = hits[0]
    # (ab)c == a(bc)
    left = g[g[:, :, None], np.arange(n)[None, None, :]]
    right = g[np.arange(n)[:, None, None], g[None, :, :]]
    bad = np.argwhere(left != right)
    if len(bad):
        raise NotAGroup("associativity", tuple(bad[0]))
    return e, inv


def conj(group_table, name: str | None = None) -> Quandle:
    """Conjugation quandle ``g ▷ h = g h g^-1`` of a group given by its Cayley table."""
    g = _as_square(group_table, "group table")
    _, inv = _check_group(g)
    n = g.shape[0]
    gh = g  # gh[a, b] = a*b
    table = gh[gh, inv[:, None].repeat(n, axis=1)] if n else g
    return Quandle(table, name=name)


def product(q: Quandle, r: Quandle, name: str | None = None) -> Quandle:
    """Componentwise product; the pair ``(x, y)`` is encoded as ``x * |R| + y``."""
    a, b = q.size, r.size
    qt = q.table[:, None, :, None]
    rt = r.table[None, :, None, :]
    table = (qt * b + rt).reshape(a * b, a * b) if a and b else np.zeros((0, 0), dtype=np.int64)
    if name is None and q.name and r.name:
        name = f"{q.name}x{r.name}"
    return Quandle(table, name=name)


def disjoint_union(q: Quandle, r: Quandle, name: str | None = None) -> Quandle:
    """``Q ⊔ R``: each part acts on itself as before and trivially on the other."""
    a, b = q.size, r.size
    n = a + b
    table = np.tile(np.arange(n, dtype=np.int64), (n, 1)).reshape(n, n)
    table[:a, :a] = q.table
    table[a:, a:] = r.table + a
    if name is None and q.name and r.name:
        name = f"{q.name}+{r.name}"
    return Quandle(table, name=name)


def twisted_pointed(q: Quandle, psi: Sequence[int], name: str | None = None) -> Quandle:
    """Adjoin a point ``*`` (index ``|Q|``) acting on ``Q`` by ``psi`` and fixed by everything.

    ``psi`` must be an automorphism with ``phi_{psi(x)} = phi_x`` for all ``x``.
    """
    n = q.size
    psi = np.asarray(list(psi), dtype=np.int64)
    if psi.shape != (n,) or sorted(psi.tolist()) != list(range(n)):
        raise NotAutomorphism("psi is not a permutation of the quandle")
    if not is_morphism(q, q, psi):
        raise NotAutomorphism("psi does not respect the operation")
    for x in range(n):
        if not np.array_equal(q.table[psi[x]], q.table[x]):
            raise TwistConditionViolated(x)
    table = np.empty((n + 1, n + 1), dtype=np.int64)
    table[:n, :n] = q.table
    table[:n, n] = n
    table[n, :n] = psi
    table[n, n] = n
    return Quandle(table, name=name)


def _cycle_type(perm: np.ndarray) -> tuple[int, ...]:
    seen = np.zeros(len(perm), dtype=bool)
    lengths = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        k, x = 0, start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            k += 1
        lengths.append(k)
    return tuple(sorted(lengths))


def _profiles(q: Quandle) -> list[tuple]:
    t = q.table
    row_types = [_cycle_type(t[x]) for x in range(q.size)]
    out = []
    for x in range(q.size):
        stabilizers = int(np.sum(t[:, x] == x))  # #{y : y ▷ x = x}
        out.append((row_types[x], stabilizers))
    # refine once with the profiles of the points phi_x fixes
    refined = []
    for x in range(q.size):
        fixed = np.flatnonzero(t[x] == np.arange(q.size))
        around = tuple(sorted(Counter(out[int(y)] for y in fixed).items()))
        refined.append((out[x], around))
    return refined


def find_isomorphism(q: Quandle, r: Quandle) -> tuple[int, ...] | None:
    """A bijection ``m`` with ``m[x ▷ y] = m[x] ▷ m[y]``, or ``None``.

    Exhaustive backtracking; candidates are restricted to elements with equal
    invariant profile (row cycle type, stabilizer count, profiles of fixed points)
    and every assignment is closed under the forced values it implies.
    """
    n = q.size
    if n != r.size:
        return None
    if n == 0:
        return ()
    pq, pr = _profiles(q), _profiles(r)
    if Counter(pq) != Counter(pr):
        return None
    by_profile: dict[tuple, list[int]] = {}
    for v, p in enumerate(pr):
        by_profile.setdefault(p, []).append(v)
    tq, tr = q.table, r.table

    def propagate(m: list[int], used: list[bool]) -> bool:
        stack = [x for x in range(n) if m[x] >= 0]
        assigned = list(stack)
        while stack:
            x = stack.pop()
            for y in assigned:
                for a, b in ((x, y), (y, x)):
                    z = int(tq[a, b])
                    w = int(tr[m[a], m[b]])
                    if m[z] < 0:
                        if used[w] or pq[z] != pr[w]:
                            return False
                        m[z] = w
                        used[w] = True
                        stack.append(z)
                        assigned.append(z)
                    elif m[z] != w:
                        return False
        return True

    # most constrained elements first
    order = sorted(range(n), key=lambda x: (len(by_profile[pq[x]]), x))

    def rec(m: list[int], used: list[bool]):
        x = next((x for x in order if m[x] < 0), None)
        if x is None:
            return tuple(m)
        for v in by_profile[pq[x]]:
            if used[v]:
                continue
            m2, used2 = list(m), list(used)
            m2[x] = v
            used2[v] = True
            if propagate(m2, used2):
                found = rec(m2, used2)
                if found is not None:
                    return found
        return None

    return rec([-1] * n, [False] * n)


def loads(text: str) -> Quandle:
    """Parse the JSON quandle format ``{"name"?, "size", "table"}`` and validate it."""
    data = json.loads(text)
    if not isinstance(data, dict) or "table" not in data:
        raise InvalidTable("expected an object with a 'table' field")
    table = data["table"]
    size = data.get("size", len(table))
    if size != len(table) or any(len(row) != size for row in table):
        raise InvalidTable(f"table is not {size}x{size}")
    return validate(table, name=data.get("name"))


def load(path) -> Quandle:
    with open(path) as fh:
        return loads(fh.read())


def dumps(q: Quandle) -> str:
    return json.dumps(q.to_dict())
