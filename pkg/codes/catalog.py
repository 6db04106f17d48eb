"""
Named worked instances, usable from the command line with --instance NAME.
"""
from typing import Optional

from pydantic import BaseModel, ConfigDict

from shifts.graph import ForbiddenSft, LabeledGraph

from .factor import UnambiguousCode
from .spoke import SpokeGraph
from .twocycle import TwoCycleGraph


class Instance(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    description: str
    code: Optional[UnambiguousCode] = None
    full_shift_marker: Optional[str] = None  # set when the domain is the full 2-shift
    spokes: Optional[SpokeGraph] = None
    two_cycle: Optional[TwoCycleGraph] = None


def _single_spoke_graph() -> LabeledGraph:
    """B <-> V1 <-> V2: one regular spoke with m=1 and a 2-cycle at V1."""
    return LabeledGraph.build(
        labels={0: "1", 1: "0", 2: "0"},
        edges={(0, 1), (1, 0), (1, 2), (2, 1)},
        names={0: "B", 1: "V1", 2: "V2"},
    )


CATALOG: dict[str, Instance] = {
    i.name: i
    for i in [
        Instance(
            name="golden-mean",
            description="no two adjacent 1s, marker 1; the image is the golden mean shift itself",
            code=UnambiguousCode.on_sft(ForbiddenSft(forbidden=frozenset({"11"})), "1"),
        ),
        Instance(
            name="no-111",
            description="forbidden {111}, marker 1010; the image has gaps {1} and every n >= 4",
            code=UnambiguousCode.on_sft(ForbiddenSft(forbidden=frozenset({"111"})), "1010"),
        ),
        Instance(
            name="full-shift-0000",
            description="full 2-shift, marker 0000; only the restriction to X_F maps onto",
            code=UnambiguousCode.on_full_shift("0000"),
            full_shift_marker="0000",
        ),
        Instance(
            name="three-spokes",
            description="spokes m=(1,1,4), d=(6,3,6); W={2} or W={1,3}",
            spokes=SpokeGraph.of(regular=[(1, 6), (1, 3), (4, 6)]),
        ),
        Instance(
            name="four-spokes",
            description="spokes m=(1,1,1,10), d=(2,3,4,6); W={1,4} plus one added cycle",
            spokes=SpokeGraph.of(regular=[(1, 2), (1, 3), (1, 4), (10, 6)]),
        ),
        Instance(
            name="no-cover",
            description="spokes m=(1,1,2,6), d=(2,3,6,6); no finite-to-one restriction exists",
            spokes=SpokeGraph.of(regular=[(1, 2), (1, 3), (2, 6), (6, 6)]),
        ),
        Instance(
            name="single-spoke",
            description="B <-> V1 <-> V2 marked at B; finite-to-one but never one-to-one",
            code=UnambiguousCode.on_graph(_single_spoke_graph(), ("B",)),
            spokes=SpokeGraph.of(regular=[(1, 2)]),
        ),
        Instance(
            name="two-cycle",
            description="one spoke with m=3 and cycles of lengths 4 and 3 at B'",
            two_cycle=TwoCycleGraph(m=3, d1=4, d2=3),
        ),
    ]
}


def get_instance(name: str) -> Instance:
    try:
        return CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown instance {name!r}; known: {', '.join(sorted(CATALOG))}") from None
