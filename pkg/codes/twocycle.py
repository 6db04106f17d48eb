"""
One spoke carrying two cycles C1, C2 at B'.

The gaps are S = m + {s*d1 + t*d2}. Every element of the semigroup has exactly
one representation x*d1 + y*d2 with 0 <= y < u, u = lcm(d1, d2) / d2, which is
what the finite-to-one construction unrolls.
"""
import logging
import math
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from shifts.graph import label_injective
from shifts.periodic import EventuallyPeriodicSet

from .factor import MarkedGraph, has_graph_diamond, image_gap_set, preimage_count
from .spoke import HUB, _split

logger = logging.getLogger(__name__)


class TwoCycleGraph(BaseModel):
    model_config = ConfigDict(frozen=True)

    m: int = Field(ge=1)
    d1: int = Field(ge=1)
    d2: int = Field(ge=1)

    @model_validator(mode="after")
    def _distinct_loops(self) -> "TwoCycleGraph":
        if self.d1 == 1 and self.d2 == 1:
            raise ValueError("C1 and C2 cannot both be the loop at B'")
        return self

    @property
    def u(self) -> int:
        return math.lcm(self.d1, self.d2) // self.d2

    def swapped(self) -> "TwoCycleGraph":
        return TwoCycleGraph(m=self.m, d1=self.d2, d2=self.d1)


def two_cycle_unique_rep(n: int, g: TwoCycleGraph) -> Optional[tuple[int, int]]:
    """The (x, y) with x*d1 + y*d2 = n and 0 <= y < u, or None if n is not representable."""
    if n < 0:
        return None
    for y in range(g.u):
        rest = n - y * g.d2
        if rest < 0:
            break
        if rest % g.d1 == 0:
            return rest // g.d1, y
    return None


def two_cycle_gap_set(g: TwoCycleGraph) -> EventuallyPeriodicSet:
    """S = m + {s*d1 + t*d2}; all multiples of gcd beyond d1*d2 are representable."""
    step = math.gcd(g.d1, g.d2)
    threshold = g.m + g.d1 * g.d2
    exceptions = {
        n for n in range(g.m, threshold) if two_cycle_unique_rep(n - g.m, g) is not None
    }
    return EventuallyPeriodicSet.eventual(threshold, exceptions, step, {g.m % step})


class _TwoCycleLayout(BaseModel):
    names: dict[int, str]
    up: list[int]
    tip: int
    down: list[int]
    ring1: list[int]
    ring2: list[int]  # f_2 .. f_{d2}; f_1 is the tip


def _layout(g: TwoCycleGraph) -> _TwoCycleLayout:
    names = {HUB: "B"}

    def new(name: str) -> int:
        v = len(names)
        names[v] = name
        return v

    plus, minus = _split(g.m)
    up = [new(f"g{j}") for j in range(1, plus)]
    tip = new("B'")
    down = [new(f"h{j}") for j in range(1, minus)]
    ring1 = [new(f"c{j}") for j in range(1, g.d1)]
    ring2 = [new(f"f{j}") for j in range(2, g.d2 + 1)]
    return _TwoCycleLayout(names=names, up=up, tip=tip, down=down, ring1=ring1, ring2=ring2)


def _chain(vs: list[int]) -> set[tuple[int, int]]:
    return set(zip(vs, vs[1:]))


def realize_two_cycle(g: TwoCycleGraph) -> MarkedGraph:
    lay = _layout(g)
    edges = (
        _chain([HUB] + lay.up + [lay.tip] + lay.down + [HUB])
        | _chain([lay.tip] + lay.ring1 + [lay.tip])
        | _chain([lay.tip] + lay.ring2 + [lay.tip])
    )
    return MarkedGraph.build(lay.names, edges, marked={HUB})


class TwoCycleH(BaseModel):
    graph: TwoCycleGraph  # as realized; C1 and C2 swapped when alternate
    alternate: bool
    u: int
    g: MarkedGraph
    h: MarkedGraph
    psi: dict[int, int]
    beta: Optional[tuple[int, ...]] = None


def construct_H_two_cycle(g: TwoCycleGraph, alternate: bool = False) -> TwoCycleH:
    """
    H is G without C2, plus (when u > 1) a path beta from B to B' that runs
    through u-1 unrolled copies of C2, with exits to B' after each of the
    first u-2 copies. psi folds the copies back onto gamma+ and C2.
    """
    if alternate:
        g = g.swapped()
    lay = _layout(g)
    u = g.u
    names = {v: n for v, n in lay.names.items() if v not in set(lay.ring2)}
    edges = _chain([HUB] + lay.up + [lay.tip] + lay.down + [HUB]) | _chain(
        [lay.tip] + lay.ring1 + [lay.tip]
    )
    psi = {v: v for v in names}
    beta = None
    if u > 1:
        f = [lay.tip] + lay.ring2  # f_1 .. f_{d2}
        next_id = len(lay.names)

        def new(name: str, image: int) -> int:
            nonlocal next_id
            v = next_id
            next_id += 1
            names[v] = name
            psi[v] = image
            return v

        primed = [new(f"g'{i}", lay.up[i - 1]) for i in range(1, len(lay.up) + 1)]
        copies = [[new(f"f({k}){j}", f[j - 1]) for j in range(1, g.d2 + 1)] for k in range(1, u)]
        beta = tuple([HUB] + primed + [v for copy in copies for v in copy] + [lay.tip])
        edges |= _chain(list(beta))
        for j in range(1, u - 1):
            edges.add((copies[j - 1][-1], lay.tip))
    logger.info("two-cycle H: m=%d d1=%d d2=%d u=%d", g.m, g.d1, g.d2, u)
    return TwoCycleH(
        graph=g,
        alternate=alternate,
        u=u,
        g=realize_two_cycle(g),
        h=MarkedGraph.build(names, edges, marked={HUB}),
        psi=psi,
        beta=beta,
    )


class TwoCycleCertificates(BaseModel):
    no_diamond: bool
    gap_set_equal: bool
    psi_graph_map: bool
    psi_injective: bool
    unique_gap_preimages: bool
    max_preimages: int

    @property
    def passed(self) -> bool:
        return (
            self.no_diamond
            and self.gap_set_equal
            and self.psi_graph_map
            and self.psi_injective
            and self.unique_gap_preimages
        )


def certify_two_cycle(result: TwoCycleH, max_gap: int = 40) -> TwoCycleCertificates:
    h, g, psi = result.h, result.g, result.psi
    gaps = two_cycle_gap_set(result.graph)
    counts = [preimage_count(h, "1" + "0" * k + "1") for k in gaps.upto(max_gap)]
    return TwoCycleCertificates(
        no_diamond=not has_graph_diamond(h),
        gap_set_equal=image_gap_set(h) == gaps,
        psi_graph_map=all((psi[a], psi[b]) in g.graph.edges for a, b in h.graph.edges),
        psi_injective=label_injective(h.graph, key=psi),
        unique_gap_preimages=all(c == 1 for c in counts),
        max_preimages=max(counts, default=0),
    )
