"""Chow rings of weighted Fulton-MacPherson compactifications of P^d.

Large sets are lists of 1-based point labels; weights are ints or "p/q" strings.
"""

from ._core import (
    ArgumentError,
    ChowError,
    Presentation,
    SizeCapError,
    WalkOrderError,
    all_walks,
    canonical_walk,
    check_construction,
    check_counterexample,
    check_equivalence,
    fm_presentation,
    graded_ranks,
    iterated_presentation,
    large_from_weights,
    rank_oracle,
    relations_in_ideal,
    routis_presentation,
)

__all__ = [
    "ArgumentError",
    "ChowError",
    "Presentation",
    "SizeCapError",
    "WalkOrderError",
    "all_walks",
    "canonical_walk",
    "check_construction",
    "check_counterexample",
    "check_equivalence",
    "fm_presentation",
    "graded_ranks",
    "iterated_presentation",
    "large_from_weights",
    "rank_oracle",
    "relations_in_ideal",
    "routis_presentation",
]
