"""The twelve quandles of order at most 4, their published invariants, and an enumerator.

Published tables print the acting element on columns; :func:`ingest_printed`
transposes them into the row-as-actor convention used everywhere else.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import TooLarge, UnknownName
from .invariants import dim_q, pi0, subquandles
from .polyfit import FitCertificate, IntValuedPoly, RationalGenFunc, fit_hilbert, genfunc
from .quandle import (
    Quandle,
    _profiles,
    dihedral,
    disjoint_union,
    find_isomorphism,
    trivial,
    twisted_pointed,
    validate,
)
from .series import GradedSeries, dominant_series, graded_series

__all__ = [
    "NAMES",
    "Published",
    "CatalogEntry",
    "Computed",
    "Comparison",
    "PRINTED_TABLES",
    "builtin",
    "ingest_printed",
    "compute_row",
    "compare",
    "reproduce_table",
    "enumerate_quandles",
    "canonical_form",
    "identify",
    "ENUMERATION_CAP",
]

NAMES = ("empty", "T1", "T2", "T3", "T4", "J", "D3", "J_plus", "D3_plus", "J_prime", "D4", "C3")
ENUMERATION_CAP = 5

F = Fraction


@dataclass(frozen=True)
class Published:
    """One printed row, kept verbatim; ``note`` records a known misprint without correcting it."""

    poly: IntValuedPoly
    poly_dom: IntValuedPoly
    eta: RationalGenFunc
    dim: int
    eta_text: str
    note: str = ""


def _pub(p, p_dom, num, den_power, eta_text, note="") -> Published:
    poly = IntValuedPoly.from_monomial(p)
    # the table prints no dimension; it is read off the printed polynomial as deg + 1
    return Published(
        poly,
        IntValuedPoly.from_monomial(p_dom),
        RationalGenFunc(tuple(num), den_power),
        poly.degree + 1,
        eta_text,
        note,
    )


# monomial coefficients, lowest degree first; eta as (numerator, power of (1-t) in the denominator)
_PUBLISHED = {
    "empty": _pub([], [], [1], 0, "1"),
    "T1": _pub([1], [1], [1], 1, "(1-t)^{-1}"),
    "T2": _pub([1, 1], [-1, 1], [1], 2, "(1-t)^{-2}"),
    "T3": _pub([1, F(3, 2), F(1, 2)], [1, F(-3, 2), F(1, 2)], [1], 3, "(1-t)^{-3}"),
    "J": _pub([1, 2], [-1, 1], [1, 1], 2, "(1-t)^{-2} (1+t)"),
    "D3": _pub([6], [3], [1, 2, 2, 1], 1, "(1-t)^{-1}(1+2t+2t^2+t^3)"),
    "T4": _pub(
        [1, F(11, 6), 1, F(1, 6)],
        [-1, F(11, 6), -1, F(1, 6)],
        [1],
        4,
        "(1-t)^{-4}",
    ),
    "J_plus": _pub([1, 2, 1], [1, F(-3, 2), F(1, 2)], [1, 1], 3, "(1-t)^{-3} (1+t)"),
    "D3_plus": _pub(
        [-3, 6],
        [-7, 3],
        [1, 2, 2, 1],
        2,
        "(1-t)^{-2}(1+2t+2t^2+t^3)",
        "P_dom = 3x-7 is derived in print by a mixed-convention subtraction; recomputed by brute force",
    ),
    "J_prime": _pub([1, F(5, 2), F(1, 2)], [1, F(-3, 2), F(1, 2)], [1, 1, -1], 3, "(1-t)^{-3} (1+t-t^2)"),
    "D4": _pub([0, 4], [-2, 2], [1, 2, 1], 2, "(1-t)^{-2} (1+2t+t^2)"),
    "C3": _pub(
        [1, F(5, 2), F(1, 2)],
        [-1, 1],
        [1, 1, -1],
        -3,
        "(1-t)^3(1+t-t^2)",
        "eta printed with exponent +3; P and the worked example imply (1-t)^{-3}",
    ),
}

_FLAGGED = {("C3", "eta"), ("D3_plus", "P_dom")}

# (element names, printed grid with grid[y][x] = x ▷ y)
PRINTED_TABLES: dict[str, tuple[tuple[str, ...], tuple[tuple[str, ...], ...]]] = {
    "J": (
        ("a", "a'", "b"),
        (("a", "a", "a'"), ("a'", "a'", "a"), ("b", "b", "b")),
    ),
    "J_plus": (
        ("a", "a'", "b", "c"),
        (("a", "a", "a'", "a"), ("a'", "a'", "a", "a'"), ("b", "b", "b", "b"), ("c", "c", "c", "c")),
    ),
    "C3": (
        ("a", "a'", "a''", "d"),
        (("a", "a", "a", "a'"), ("a'", "a'", "a'", "a''"), ("a''", "a''", "a''", "a"), ("d", "d", "d", "d")),
    ),
    # the last printed row is labelled b but lists b' entries; it is the b' row
    "J_prime": (
        ("a", "a'", "b", "b'"),
        (("a", "a", "a'", "a'"), ("a'", "a'", "a", "a"), ("b", "b", "b", "b"), ("b'", "b'", "b'", "b'")),
    ),
}


def ingest_printed(name: str) -> Quandle:
    """Validated quandle from a printed columns-as-actor table."""
    elements, grid = PRINTED_TABLES[name]
    index = {e: i for i, e in enumerate(elements)}
    cols = np.array([[index[v] for v in row] for row in grid], dtype=np.int64)
    return validate(cols.T, name=name)


_ELEMENTS = {
    "empty": (),
    "T1": ("a",),
    "T2": ("a", "a'"),
    "T3": ("a", "a'", "a''"),
    "T4": ("a", "a'", "a''", "a'''"),
    "J": ("a", "a'", "b"),
    "D3": ("0", "1", "2"),
    "J_plus": ("a", "a'", "b", "c"),
    "D3_plus": ("0", "1", "2", "c"),
    "J_prime": ("a", "a'", "b", "b'"),
    "D4": ("0", "1", "2", "3"),
    "C3": ("a", "a'", "a''", "d"),
}


def _construct(name: str) -> Quandle:
    if name == "empty":
        return trivial(0, name=name)
    if name[0] == "T":
        return trivial(int(name[1:]), name=name)
    if name in ("D3", "D4"):
        return dihedral(int(name[1:]), name=name)
    if name == "J":
        return twisted_pointed(trivial(2), [1, 0], name=name)
    if name == "C3":
        return twisted_pointed(trivial(3), [1, 2, 0], name=name)
    if name == "J_prime":
        j = _construct("J")
        return twisted_pointed(j, list(j.row(2)), name=name)
    if name == "J_plus":
        return disjoint_union(_construct("J"), trivial(1), name=name)
    if name == "D3_plus":
        return disjoint_union(dihedral(3), trivial(1), name=name)
    raise UnknownName(f"no built-in quandle named {name!r}")


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    quandle: Quandle
    published: Published
    elements: tuple[str, ...]

    @property
    def size(self) -> int:
        return self.quandle.size


def builtin(name: str) -> CatalogEntry:
    if name not in _PUBLISHED:
        raise UnknownName(f"no built-in quandle named {name!r}; choose from {', '.join(NAMES)}")
    return CatalogEntry(name, _construct(name), _PUBLISHED[name], _ELEMENTS[name])


def default_degree(q: Quandle) -> int:
    return 10 if q.size <= 3 else 8


@dataclass(frozen=True)
class Computed:
    series: GradedSeries
    dominant: GradedSeries
    poly: IntValuedPoly
    poly_cert: FitCertificate
    poly_dom: IntValuedPoly
    poly_dom_cert: FitCertificate
    eta: RationalGenFunc
    eta_dom: RationalGenFunc
    dim: int
    components: int

    def to_dict(self) -> dict:
        return {
            "series": [str(v) for v in self.series.values],
            "dominant_series": [str(v) for v in self.dominant.values],
            "P": self.poly.to_dict(),
            "P_certificate": self.poly_cert.to_dict(),
            "P_dom": self.poly_dom.to_dict(),
            "P_dom_certificate": self.poly_dom_cert.to_dict(),
            "eta": self.eta.to_dict(),
            "eta_dom": self.eta_dom.to_dict(),
            "dim": self.dim,
            "components": self.components,
        }


def compute_row(q: Quandle, max_degree: int | None = None, budget: int | None = None) -> Computed:
    """Series, dominant series, certified fits against dim and |pi0|, and both generating functions."""
    n = default_degree(q) if max_degree is None else max_degree
    kw = {} if budget is None else {"budget": budget}
    lattice = subquandles(q)
    series = graded_series(q, n, **kw)
    dominant = dominant_series(q, n, lattice=lattice, **kw)
    dim = dim_q(q, lattice)
    comps = len(pi0(q))
    p, pc = fit_hilbert(series, dim - 1)
    pd, pdc = fit_hilbert(dominant, comps - 1)
    return Computed(
        series,
        dominant,
        p,
        pc,
        pd,
        pdc,
        genfunc(series, p, pc.threshold),
        genfunc(dominant, pd, pdc.threshold),
        dim,
        comps,
    )


@dataclass(frozen=True)
class Comparison:
    name: str
    field: str
    published: str
    computed: str
    matches: bool
    flagged: bool
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "quandle": self.name,
            "field": self.field,
            "published": self.published,
            "computed": self.computed,
            "matches": self.matches,
            "flagged": self.flagged,
            "note": self.note,
        }


def compare(entry: CatalogEntry, computed: Computed) -> list[Comparison]:
    """Field-by-field report; flagged rows are always included, whatever the outcome."""
    pub = entry.published
    pairs = {
        "P": (pub.poly, computed.poly, lambda p: p.monomial_str()),
        "P_dom": (pub.poly_dom, computed.poly_dom, lambda p: p.monomial_str()),
        "eta": (pub.eta, computed.eta, str),
        "dim": (pub.dim, computed.dim, str),
    }
    out = []
    for fld, (a, b, fmt) in pairs.items():
        flagged = (entry.name, fld) in _FLAGGED
        shown = pub.eta_text if fld == "eta" else fmt(a)
        out.append(Comparison(entry.name, fld, shown, fmt(b), a == b, flagged, pub.note if flagged else ""))
    return out


@dataclass
class TableRow:
    entry: CatalogEntry
    computed: Computed
    report: list[Comparison] = field(default_factory=list)

    @property
    def discrepancies(self) -> list[Comparison]:
        return [c for c in self.report if not c.matches or c.flagged]


def reproduce_table(names=NAMES, max_degree: int | None = None) -> list[TableRow]:
    rows = []
    for name in names:
        entry = builtin(name)
        comp = compute_row(entry.quandle, max_degree)
        rows.append(TableRow(entry, comp, compare(entry, comp)))
    return rows


def canonical_form(q: Quandle) -> tuple[tuple[int, ...], ...]:
    """Lexicographically least table over all relabellings (feasible for small orders only)."""
    n = q.size
    if n > ENUMERATION_CAP + 1:
        raise TooLarge(n, ENUMERATION_CAP + 1)
    t = q.table
    best = None
    for perm in itertools.permutations(range(n)):
        p = np.asarray(perm, dtype=np.int64)
        new = np.empty((n, n), dtype=np.int64)
        new[np.ix_(p, p)] = p[t]
        key = tuple(map(tuple, new.tolist()))
        if best is None or key < best:
            best = key
    return best if best is not None else ()


def _raw_tables(order: int):
    """Every valid table of the given order, rows chosen in turn as permutations fixing the diagonal."""
    rows: list[tuple[int, ...] | None] = [None] * order
    choices = []
    for x in range(order):
        others = [y for y in range(order) if y != x]
        opts = []
        for perm in itertools.permutations(others):
            row = list(perm)
            row.insert(x, x)
            opts.append(tuple(row))
        choices.append(opts)

    def consistent(k: int) -> bool:
        # left self-distributivity on every triple whose rows are all chosen and which involves row k
        for x in range(k + 1):
            rx = rows[x]
            for y in range(k + 1):
                ry = rows[y]
                xy = rx[y]
                if xy > k or (x < k and y < k and xy < k):
                    continue
                rxy = rows[xy]
                for z in range(order):
                    if rx[ry[z]] != rxy[rx[z]]:
                        return False
        return True

    def rec(k: int):
        if k == order:
            yield tuple(rows)
            return
        for row in choices[k]:
            rows[k] = row
            if consistent(k):
                yield from rec(k + 1)
        rows[k] = None

    yield from rec(0)


def enumerate_quandles(order: int) -> list[Quandle]:
    """One quandle per isomorphism class, each in canonical form, sorted by canonical table."""
    if order < 0:
        raise ValueError("order must be non-negative")
    if order > ENUMERATION_CAP:
        raise TooLarge(order, ENUMERATION_CAP)
    reps: dict[tuple, list[Quandle]] = {}
    for table in _raw_tables(order):
        q = Quandle(np.array(table, dtype=np.int64).reshape(order, order))
        key = tuple(sorted(Counter(_profiles(q)).items()))
        bucket = reps.setdefault(key, [])
        if not any(find_isomorphism(q, r) is not None for r in bucket):
            bucket.append(q)
    classes = [canonical_form(q) for bucket in reps.values() for q in bucket]
    return [validate(np.array(c, dtype=np.int64).reshape(order, order)) for c in sorted(classes)]


def identify(q: Quandle) -> str | None:
    """Name of the built-in quandle isomorphic to ``q``, if any."""
    for name in NAMES:
        if find_isomorphism(q, _cached(name)) is not None:
            return name
    return None


@lru_cache(maxsize=None)
def _cached(name: str) -> Quandle:
    return _construct(name)
