"""Exact orbit counts, Hilbert polynomials and coloring statistics for finite quandles."""
from .braid import BraidWord, apply_generator, apply_word, coloring_count, dominant_coloring_count
from .catalog import builtin, enumerate_quandles
from .errors import QuandleError, ResourceError
from .invariants import dim_q, exp_q, inn_group, pi0, subquandles
from .polyfit import IntValuedPoly, RationalGenFunc, fit_hilbert, genfunc, pole_order, series_product, threshold
from .quandle import (
    Quandle,
    conj,
    dihedral,
    disjoint_union,
    find_isomorphism,
    product,
    trivial,
    twisted_pointed,
    validate,
)
from .series import GradedSeries, dominant_series, graded_cardinality, graded_series, incremental_series
from .statistics import burnside_exact, covariance, moment, monte_carlo_mean

__all__ = [
    "BraidWord",
    "GradedSeries",
    "IntValuedPoly",
    "Quandle",
    "QuandleError",
    "RationalGenFunc",
    "ResourceError",
    "apply_generator",
    "apply_word",
    "builtin",
    "burnside_exact",
    "coloring_count",
    "conj",
    "covariance",
    "dihedral",
    "dim_q",
    "disjoint_union",
    "dominant_coloring_count",
    "dominant_series",
    "enumerate_quandles",
    "exp_q",
    "find_isomorphism",
    "fit_hilbert",
    "genfunc",
    "graded_cardinality",
    "graded_series",
    "incremental_series",
    "inn_group",
    "monte_carlo_mean",
    "moment",
    "pi0",
    "pole_order",
    "product",
    "series_product",
    "subquandles",
    "threshold",
    "trivial",
    "twisted_pointed",
    "validate",
]
