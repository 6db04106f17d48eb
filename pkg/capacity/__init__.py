from .channel import (
    MarkovMeasure,
    channel_capacity,
    output_shift,
    parry_measure,
    pushforward_gap_law,
    validate_capacity_witness,
    weight_per_symbol_check,
)
from .necessary import P3Report, P3Support, crt_common_solution, p3_necessary, prop94_check

__all__ = [
    "MarkovMeasure",
    "channel_capacity",
    "output_shift",
    "parry_measure",
    "pushforward_gap_law",
    "validate_capacity_witness",
    "weight_per_symbol_check",
    "P3Report",
    "P3Support",
    "crt_common_solution",
    "p3_necessary",
    "prop94_check",
]
