from .brute import (
    DEFAULT_BUDGET,
    DiamondWitness,
    LanguageComparison,
    OracleBudget,
    count_blocks,
    entropy_estimate,
    language_equal_upto,
    point_diamond_search,
    restriction_injective_upto,
)

__all__ = [
    "DEFAULT_BUDGET",
    "DiamondWitness",
    "LanguageComparison",
    "OracleBudget",
    "count_blocks",
    "entropy_estimate",
    "language_equal_upto",
    "point_diamond_search",
    "restriction_injective_upto",
]
