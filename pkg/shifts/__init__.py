from .errors import (
    BoundTooSmallError,
    BudgetExceededError,
    ConstructionError,
    EntropyError,
    InvalidWError,
    MarkerNotAllowedError,
    NotFiniteToOneError,
    NotGapShiftError,
    NotIrreducibleError,
    ShiftError,
    SpecParseError,
)
from .formats import format_gapset, format_graph, load_graph, parse_gapset, parse_graph
from .gapshift import (
    DEFAULT_TOL,
    GapShift,
    entropy,
    mme_gap_distribution,
    mme_tail_bound,
    standard_forbidden_set,
    topological_entropy,
)
from .graph import (
    ForbiddenSft,
    LabeledGraph,
    Word,
    enumerate_blocks,
    essential,
    first_return_lengths,
    higher_block,
    is_irreducible,
    label_injective,
    passage_lengths,
    return_lengths,
    to_vertex_shift,
)
from .periodic import EventuallyPeriodicSet

__all__ = [
    "BoundTooSmallError",
    "BudgetExceededError",
    "ConstructionError",
    "EntropyError",
    "InvalidWError",
    "MarkerNotAllowedError",
    "NotFiniteToOneError",
    "NotGapShiftError",
    "NotIrreducibleError",
    "ShiftError",
    "SpecParseError",
    "format_gapset",
    "format_graph",
    "load_graph",
    "parse_gapset",
    "parse_graph",
    "DEFAULT_TOL",
    "GapShift",
    "entropy",
    "mme_gap_distribution",
    "mme_tail_bound",
    "standard_forbidden_set",
    "topological_entropy",
    "ForbiddenSft",
    "LabeledGraph",
    "Word",
    "enumerate_blocks",
    "essential",
    "first_return_lengths",
    "higher_block",
    "is_irreducible",
    "label_injective",
    "passage_lengths",
    "return_lengths",
    "to_vertex_shift",
    "EventuallyPeriodicSet",
]
