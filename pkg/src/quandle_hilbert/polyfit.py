"""Hilbert polynomials and rational generating functions from exact graded series.

Polynomials are kept in the basis ``b_k(x) = C(x + k - 1, k - 1)``, k >= 1, in
which integer coordinates are exactly the integer-valued polynomials. Two facts
drive the conversions: the backward difference sends ``b_{k+1}`` to ``b_k``, and
``b_k(-1)`` is 1 for ``k = 1`` and 0 otherwise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DegreeMismatch, InconsistentFit, InsufficientData, NoStablePolynomial
from .series import GradedSeries

__all__ = [
    "IntValuedPoly",
    "FitCertificate",
    "RationalGenFunc",
    "gbinom",
    "fit_hilbert",
    "genfunc",
    "pole_order",
    "threshold",
    "series_product",
    "DEFAULT_MIN_SURPLUS",
]

DEFAULT_MIN_SURPLUS = 3


def gbinom(m: int, j: int) -> int:
    """``C(m, j)`` for any integer ``m`` and ``j >= 0``."""
    if j < 0:
        return 0
    if m >= 0:
        return math.comb(m, j)
    # C(-a, j) = (-1)^j C(a + j - 1, j)
    return (-1) ** j * math.comb(-m + j - 1, j)


def _strip(coeffs: Sequence[int]) -> tuple[int, ...]:
    c = [int(v) for v in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntValuedPoly:
    """``P(x) = sum_k coeffs[k-1] * C(x + k - 1, k - 1)``; the empty tuple is the zero polynomial."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        return sum(c * gbinom(x + k, k) for k, c in enumerate(self.coeffs))

    def __add__(self, other: "IntValuedPoly") -> "IntValuedPoly":
        m = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (m - len(self.coeffs))
        b = other.coeffs + (0,) * (m - len(other.coeffs))
        return IntValuedPoly(tuple(x + y for x, y in zip(a, b)))

    def __sub__(self, other: "IntValuedPoly") -> "IntValuedPoly":
        return self + IntValuedPoly(tuple(-c for c in other.coeffs))

    @classmethod
    def from_values(cls, start: int, values: Sequence[int]) -> "IntValuedPoly":
        """The polynomial of degree < len(values) through ``(start + i, values[i])``."""
        diffs = []
        row = [int(v) for v in values]
        while row:
            diffs.append(row[0])
            row = [b - a for a, b in zip(row, row[1:])]

        def newton(x: int) -> int:
            return sum(d * gbinom(x - start, j) for j, d in enumerate(diffs))

        at = [newton(-1 - i) for i in range(len(diffs))]
        coeffs = [sum((-1) ** i * math.comb(j, i) * at[i] for i in range(j + 1)) for j in range(len(diffs))]
        return cls(tuple(coeffs))

    @classmethod
    def from_monomial(cls, coeffs: Sequence[Fraction | int | str]) -> "IntValuedPoly":
        """From ``sum coeffs[i] x^i``; raises ``ValueError`` unless the polynomial is integer-valued."""
        fr = [Fraction(c) for c in coeffs]
        values = [sum(c * x**i for i, c in enumerate(fr)) for x in range(len(fr))]
        if any(v.denominator != 1 for v in values):
            raise ValueError("polynomial is not integer-valued")
        return cls.from_values(0, [int(v) for v in values])

    def to_monomial(self) -> tuple[Fraction, ...]:
        """Coefficients of ``1, x, x^2, ...`` as exact fractions."""
        total = [Fraction(0)] * len(self.coeffs)
        basis = [Fraction(1)]  # b_1 = 1
        for k, c in enumerate(self.coeffs):
            if k > 0:
                # b_{k+1}(x) = b_k(x) * (x + k) / k
                nxt = [Fraction(0)] * (len(basis) + 1)
                for i, v in enumerate(basis):
                    nxt[i] += v * k
                    nxt[i + 1] += v
                basis = [v / k for v in nxt]
            for i, v in enumerate(basis):
                total[i] += c * v
        while total and total[-1] == 0:
            total.pop()
        return tuple(total)

    def monomial_over_denominator(self) -> tuple[tuple[int, ...], int]:
        """``(num, den)`` with ``P(x) = sum num[i] x^i / den`` and ``den`` minimal."""
        mono = self.to_monomial()
        den = math.lcm(*(c.denominator for c in mono)) if mono else 1
        return tuple(int(c * den) for c in mono), den

    def monomial_str(self, var: str = "x") -> str:
        num, den = self.monomial_over_denominator()
        terms = []
        for i in reversed(range(len(num))):
            c = num[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                pw = var if i == 1 else f"{var}^{i}"
                body = pw if mag == 1 else f"{mag}{pw}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        text = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        if den != 1:
            text = f"({text})/{den}"
        return text

    def to_dict(self) -> dict:
        num, den = self.monomial_over_denominator()
        return {
            "binomial": [str(c) for c in self.coeffs],
            "monomial_over_denominator": {"num": [str(c) for c in num], "den": str(den)},
            "degree": self.degree,
        }


@dataclass(frozen=True)
class FitCertificate:
    """Where a fitted polynomial starts to agree with the data and how much data backs it."""

    threshold: int
    surplus: int
    degree_matches_dim: bool | None
    min_surplus: int = DEFAULT_MIN_SURPLUS
    first_equality: int = 0

    @property
    def certified(self) -> bool:
        return self.surplus >= self.min_surplus and self.degree_matches_dim is not False

    def to_dict(self) -> dict:
        return {
            "n0": self.threshold,
            "surplus": self.surplus,
            "dim_check": self.degree_matches_dim,
            "first_equality": self.first_equality,
            "certified": self.certified,
        }


def _values(series: GradedSeries | Sequence[int]) -> list[int]:
    return [int(v) for v in (series.values if isinstance(series, GradedSeries) else series)]


def _scan(values: list[int], degree: int, min_surplus: int):
    """Least start ``n0`` whose degree-``degree`` interpolant matches every later value."""
    last = len(values) - 1
    for n0 in range(0, last - degree - min_surplus + 1):
        poly = IntValuedPoly.from_values(n0, values[n0:n0 + degree + 1]) if degree >= 0 else IntValuedPoly()
        if all(poly(n) == values[n] for n in range(n0 + degree + 1, last + 1)):
            return poly, n0, last - n0 - degree
    return None


def fit_hilbert(
    series: GradedSeries | Sequence[int],
    expected_degree: int | None = None,
    *,
    min_surplus: int = DEFAULT_MIN_SURPLUS,
) -> tuple[IntValuedPoly, FitCertificate]:
    """Least-degree eventually-agreeing polynomial, with the least start index for that degree.

    Degrees are tried from the zero polynomial upward; a fit of degree ``D``
    needs ``min_surplus`` checked values beyond its ``D + 1`` point window.
    """
    values = _values(series)
    if expected_degree is not None and len(values) < expected_degree + 1 + min_surplus:
        raise InsufficientData(
            f"{len(values)} values cannot certify degree {expected_degree} with surplus {min_surplus}"
        )
    if len(values) < min_surplus:
        raise InsufficientData(f"{len(values)} values are fewer than the surplus {min_surplus}")
    found = None
    for degree in range(-1, len(values) - min_surplus):
        found = _scan(values, degree, min_surplus)
        if found is not None:
            break
    if found is None:
        raise NoStablePolynomial(f"no polynomial stabilizes within {len(values)} values")
    poly, n0, surplus = found
    if expected_degree is not None and poly.degree != expected_degree:
        raise DegreeMismatch(poly.degree, expected_degree)
    first = next(n for n in range(len(values)) if poly(n) == values[n])
    cert = FitCertificate(
        threshold=n0,
        surplus=surplus,
        degree_matches_dim=None if expected_degree is None else True,
        min_surplus=min_surplus,
        first_equality=first,
    )
    return poly, cert


def _mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _one_minus_t_pow(k: int) -> list[int]:
    return [(-1) ** i * math.comb(k, i) for i in range(k + 1)]


@dataclass(frozen=True)
class RationalGenFunc:
    """``N(t) / (1 - t)^d``, always stored reduced: (1 - t) does not divide a nonzero ``N``."""

    numerator: tuple[int, ...]
    den_power: int = 0

    def __post_init__(self):
        num = list(_strip(self.numerator))
        d = int(self.den_power)
        if d < 0:
            num = list(_strip(_mul(num, _one_minus_t_pow(-d))))
            d = 0
        if not num:
            d = 0
        while d > 0 and sum(num) == 0:
            # N = (1 - t) M, where M has the partial sums of N as coefficients
            acc, quotient = 0, []
            for c in num[:-1]:
                acc += c
                quotient.append(acc)
            num = list(_strip(quotient))
            d -= 1
        object.__setattr__(self, "numerator", tuple(num))
        object.__setattr__(self, "den_power", d)

    @property
    def numerator_degree(self) -> int:
        return len(self.numerator) - 1

    def expand(self, terms: int) -> tuple[int, ...]:
        """The first ``terms`` power-series coefficients."""
        coeffs = list(self.numerator[:terms]) + [0] * max(0, terms - len(self.numerator))
        for _ in range(self.den_power):
            acc = 0
            for i in range(terms):
                acc += coeffs[i]
                coeffs[i] = acc
        return tuple(coeffs)

    def __mul__(self, other: "RationalGenFunc") -> "RationalGenFunc":
        return RationalGenFunc(tuple(_mul(self.numerator, other.numerator)), self.den_power + other.den_power)

    def __str__(self) -> str:
        num = _poly_str(self.numerator, "t")
        if self.den_power == 0:
            return num
        den = "(1 - t)" if self.den_power == 1 else f"(1 - t)^{self.den_power}"
        return f"({num})/{den}" if len(self.numerator) > 1 else f"{num}/{den}"

    def to_dict(self) -> dict:
        return {"numerator": [str(c) for c in self.numerator], "den_power": self.den_power}


def _poly_str(coeffs: Sequence[int], var: str) -> str:
    terms = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        mag = abs(c)
        pw = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        body = str(mag) if i == 0 else (pw if mag == 1 else f"{mag}{pw}")
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    text = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        text += f" {sign} {body}"
    return text


def genfunc(series: GradedSeries | Sequence[int], poly: IntValuedPoly, n0: int) -> RationalGenFunc:
    """Exact generating function of ``series``, given that it equals ``poly`` from ``n0`` on.

    ``sum_k c_k / (1 - t)^k`` generates the values of ``poly``; the finitely many
    early corrections are added as a polynomial.
    """
    values = _values(series)
    d = len(poly.coeffs)
    num = [0] * (d + 1)
    for k, c in enumerate(poly.coeffs, start=1):
        for i, v in enumerate(_one_minus_t_pow(d - k)):
            num[i] += c * v
    corrections = [values[n] - poly(n) for n in range(min(n0, len(values)))]
    extra = _mul(corrections, _one_minus_t_pow(d))
    if len(extra) > len(num):
        num += [0] * (len(extra) - len(num))
    for i, v in enumerate(extra):
        num[i] += v
    g = RationalGenFunc(tuple(num), d)
    if list(g.expand(len(values))) != values:
        raise InconsistentFit("generating function does not reproduce the series")
    return g


def pole_order(g: RationalGenFunc) -> int:
    return g.den_power


def threshold(g: RationalGenFunc) -> int:
    """``deg N - d``: coefficients agree with the Hilbert polynomial strictly beyond this degree."""
    return g.numerator_degree - g.den_power


def series_product(g1: RationalGenFunc, g2: RationalGenFunc) -> RationalGenFunc:
    return g1 * g2
