from .catalog import CATALOG, Instance, get_instance
from .conjugacy import (
    Divergence,
    EtaSpec,
    FullShiftP1,
    P1Verdict,
    apply_eta,
    check_p1,
    construct_eta,
    full_shift_p1,
)
from .factor import (
    DegreeResult,
    FullShiftFacts,
    MarkedGraph,
    UnambiguousCode,
    coordinate_vertex_sets,
    degree,
    full_shift_image_facts,
    gap_moves,
    has_graph_diamond,
    image_gap_set,
    image_of,
    preimage_count,
    recode_to_marked,
    unreadable_gaps,
)
from .formats import format_spoke_spec, load_spoke_spec, parse_spoke_spec
from .spoke import (
    HConstruction,
    P2Certificates,
    P2Result,
    Spoke,
    SpokeGraph,
    SpokeInvariants,
    certify_h,
    check_p2,
    construct_H,
    find_W,
    is_valid_W,
    realize_graph,
    spoke_invariants,
)
from .twocycle import (
    TwoCycleCertificates,
    TwoCycleGraph,
    TwoCycleH,
    certify_two_cycle,
    construct_H_two_cycle,
    realize_two_cycle,
    two_cycle_gap_set,
    two_cycle_unique_rep,
)

__all__ = [
    "CATALOG",
    "Instance",
    "get_instance",
    "Divergence",
    "EtaSpec",
    "FullShiftP1",
    "P1Verdict",
    "apply_eta",
    "check_p1",
    "construct_eta",
    "full_shift_p1",
    "DegreeResult",
    "FullShiftFacts",
    "MarkedGraph",
    "UnambiguousCode",
    "coordinate_vertex_sets",
    "degree",
    "full_shift_image_facts",
    "gap_moves",
    "has_graph_diamond",
    "image_gap_set",
    "image_of",
    "preimage_count",
    "recode_to_marked",
    "unreadable_gaps",
    "format_spoke_spec",
    "load_spoke_spec",
    "parse_spoke_spec",
    "HConstruction",
    "P2Certificates",
    "P2Result",
    "Spoke",
    "SpokeGraph",
    "SpokeInvariants",
    "certify_h",
    "check_p2",
    "construct_H",
    "find_W",
    "is_valid_W",
    "realize_graph",
    "spoke_invariants",
    "TwoCycleCertificates",
    "TwoCycleGraph",
    "TwoCycleH",
    "certify_two_cycle",
    "construct_H_two_cycle",
    "realize_two_cycle",
    "two_cycle_gap_set",
    "two_cycle_unique_rep",
]
