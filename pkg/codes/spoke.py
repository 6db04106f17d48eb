"""
Spoke graphs and the finite-to-one construction.

A spoke graph has a central vertex B (the only marked vertex) and spokes that
meet only at B. A regular spoke i is a path gamma+ from B to B'_i, a cycle C_i
of length d_i at B'_i and a path gamma- back to B, with
m_i = |gamma+| + |gamma-| - 1. A degenerate spoke is a cycle of length d_i
through B.
"""
import itertools
import logging
import math
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from shifts.errors import ConstructionError, InvalidWError
from shifts.graph import first_return_path, label_injective
from shifts.periodic import EventuallyPeriodicSet

from .factor import MarkedGraph, degree, has_graph_diamond, image_gap_set

logger = logging.getLogger(__name__)

HUB = 0  # vertex id of B in every realized spoke graph


class Spoke(BaseModel):
    model_config = ConfigDict(frozen=True)

    d: int = Field(ge=1)
    m: Optional[int] = Field(None, ge=1)  # None for a degenerate spoke

    @property
    def regular(self) -> bool:
        return self.m is not None


class SpokeGraph(BaseModel):
    """Spokes are indexed 1, 2, ... in the order given."""

    model_config = ConfigDict(frozen=True)

    spokes: tuple[Spoke, ...]

    @model_validator(mode="after")
    def _check_spokes(self) -> "SpokeGraph":
        if not self.spokes:
            raise ValueError("a spoke graph needs at least one spoke")
        loops_at_hub = sum(1 for s in self.spokes if not s.regular and s.d == 1)
        if loops_at_hub > 1:
            raise ValueError("at most one degenerate spoke of length 1 (the loop at B)")
        return self

    @classmethod
    def of(
        cls,
        regular: list[tuple[int, int]] = (),
        degenerate: list[int] = (),
    ) -> "SpokeGraph":
        """Regular spokes as (m, d) pairs first, then degenerate cycle lengths."""
        spokes = [Spoke(m=m, d=d) for m, d in regular] + [Spoke(d=d) for d in degenerate]
        return cls(spokes=tuple(spokes))

    def spoke(self, i: int) -> Spoke:
        return self.spokes[i - 1]

    @property
    def indices(self) -> list[int]:
        return list(range(1, len(self.spokes) + 1))

    @property
    def t1(self) -> list[int]:
        return [i for i in self.indices if self.spoke(i).regular]

    @property
    def t0(self) -> list[int]:
        return [i for i in self.indices if not self.spoke(i).regular]

    @property
    def regular(self) -> dict[int, tuple[int, int]]:
        return {i: (self.spoke(i).m, self.spoke(i).d) for i in self.t1}

    @property
    def degenerate(self) -> dict[int, int]:
        return {i: self.spoke(i).d for i in self.t0}


class SpokeInvariants(BaseModel):
    big_d: int
    a: dict[int, int]
    K: dict[int, frozenset[int]]
    S: EventuallyPeriodicSet
    per_spoke: dict[int, EventuallyPeriodicSet]

    def union_k(self, indices=None) -> frozenset[int]:
        keys = self.K if indices is None else indices
        return frozenset().union(*(self.K[i] for i in keys))


def spoke_invariants(sg: SpokeGraph) -> SpokeInvariants:
    regular = sg.regular
    big_d = math.lcm(*(d for _, d in regular.values())) if regular else 1
    a = {i: m % d for i, (m, d) in regular.items()}
    K = {
        i: frozenset((a[i] + j * d) % big_d for j in range(big_d // d))
        for i, (_, d) in regular.items()
    }
    per_spoke = {
        i: EventuallyPeriodicSet.arithmetic(m, d) for i, (m, d) in regular.items()
    }
    per_spoke.update(
        {i: EventuallyPeriodicSet.finite({d - 1}) for i, d in sg.degenerate.items()}
    )
    S = EventuallyPeriodicSet.empty()
    for s in per_spoke.values():
        S = S | s
    return SpokeInvariants(big_d=big_d, a=a, K=K, S=S, per_spoke=per_spoke)


class _Layout(BaseModel):
    names: dict[int, str]
    edges: dict[int, set[tuple[int, int]]]  # spoke index -> its edges
    vertices: dict[int, list[int]]  # spoke index -> its vertices other than B


def _split(m: int) -> tuple[int, int]:
    """|gamma+|, |gamma-| for a given m."""
    return (m + 2) // 2, (m + 1) // 2


def _layout(sg: SpokeGraph) -> _Layout:
    names = {HUB: "B"}
    edges: dict[int, set[tuple[int, int]]] = {}
    vertices: dict[int, list[int]] = {}

    def new(name: str) -> int:
        v = len(names)
        names[v] = name
        return v

    for i in sg.indices:
        sp = sg.spoke(i)
        if sp.regular:
            plus, minus = _split(sp.m)
            up = [new(f"g{i}+{j}") for j in range(1, plus)]
            tip = new(f"B'{i}")
            down = [new(f"g{i}-{j}") for j in range(1, minus)]
            ring = [new(f"c{i}.{j}") for j in range(1, sp.d)]
            chain = [HUB] + up + [tip] + down + [HUB]
            loop = [tip] + ring + [tip]
            vertices[i] = up + [tip] + down + ring
        else:
            ring = [new(f"c{i}.{j}") for j in range(1, sp.d)]
            chain = []
            loop = [HUB] + ring + [HUB]
            vertices[i] = ring
        edges[i] = set(zip(chain, chain[1:])) | set(zip(loop, loop[1:]))
    return _Layout(names=names, edges=edges, vertices=vertices)


def realize_graph(sg: SpokeGraph) -> MarkedGraph:
    """Explicit graph of a spoke graph, marked at B."""
    lay = _layout(sg)
    edges = set().union(*lay.edges.values())
    return MarkedGraph.build(lay.names, edges, marked={HUB})


def find_W(inv: SpokeInvariants) -> Optional[frozenset[int]]:
    """
    Least (by size, then lexicographically) set of regular spokes whose K
    sets are pairwise disjoint and cover the union of all K sets.
    """
    target = inv.union_k()
    reps: dict[frozenset[int], int] = {}
    for i in sorted(inv.K):
        reps.setdefault(inv.K[i], i)
    candidates = sorted(reps.values())
    logger.debug("W search over %d distinct K sets", len(candidates))
    for size in range(len(candidates) + 1):
        for combo in itertools.combinations(candidates, size):
            covered = inv.union_k(combo)
            if covered == target and sum(len(inv.K[i]) for i in combo) == len(covered):
                return frozenset(combo)
    return None


def is_valid_W(inv: SpokeInvariants, W) -> bool:
    if not set(W) <= set(inv.K):
        return False
    covered = inv.union_k(W)
    return covered == inv.union_k() and sum(len(inv.K[i]) for i in W) == len(covered)


class HConstruction(BaseModel):
    W: tuple[int, ...]
    h: MarkedGraph
    psi: dict[int, int]  # H vertex -> G vertex
    added_cycles: dict[int, tuple[int, ...]]  # r -> chosen G cycle of length r+1
    degenerate_added: dict[int, int]  # s -> spoke i(s)
    h_spokes: SpokeGraph


def construct_H(
    sg: SpokeGraph, W, inv: Optional[SpokeInvariants] = None
) -> HConstruction:
    """
    H = the spokes in W, plus a cycle C(r) of length r+1 at B for every gap r
    realized by some regular spoke but not by W, plus one degenerate spoke for
    every degenerate gap not already realized. psi is the identity on the kept
    spokes and wraps each C(r) onto a first-return cycle of G.
    """
    inv = inv or spoke_invariants(sg)
    W = tuple(sorted(W))
    if not is_valid_W(inv, W):
        raise InvalidWError(f"W={set(W)} is not a disjoint cover of the K sets")

    s0 = EventuallyPeriodicSet.empty()
    for i in W:
        s0 = s0 | inv.per_spoke[i]
    s1 = EventuallyPeriodicSet.empty()
    for i in sg.t1:
        s1 = s1 | inv.per_spoke[i]
    s2 = EventuallyPeriodicSet.finite(d - 1 for d in sg.degenerate.values())
    extra = s1 - s0
    if not extra.is_finite:
        raise ConstructionError("gaps missed by W are not finite")
    chosen_degenerate = {}
    for s in (s2 - s1).upto(s2.max() if not s2.is_empty else -1):
        chosen_degenerate[s] = min(i for i, d in sg.degenerate.items() if d == s + 1)

    lay = _layout(sg)
    g = realize_graph(sg).graph
    keep = list(W) + sorted(chosen_degenerate.values())
    names = {HUB: "B"}
    edges: set[tuple[int, int]] = set()
    for i in keep:
        names.update({v: lay.names[v] for v in lay.vertices[i]})
        edges |= lay.edges[i]
    psi = {v: v for v in names}

    added = {}
    next_id = len(lay.names)
    for r in extra.upto(extra.max() if not extra.is_empty else -1):
        cycle = first_return_path(g, HUB, HUB, r + 1, avoid={HUB})
        if cycle is None:
            raise ConstructionError(f"G has no first-return cycle of length {r + 1}")
        added[r] = cycle
        ring = []
        for j, v in enumerate(cycle[1:-1], start=1):
            names[next_id] = f"C({r}).{j}"
            psi[next_id] = v
            ring.append(next_id)
            next_id += 1
        chain = [HUB] + ring + [HUB]
        edges |= set(zip(chain, chain[1:]))
    logger.info(
        "H for W=%s: %d added cycles %s, degenerate spokes %s",
        set(W), len(added), sorted(added), sorted(chosen_degenerate.values()),
    )

    h_spokes = SpokeGraph.of(
        regular=[sg.regular[i] for i in W],
        degenerate=[r + 1 for r in sorted(added)]
        + [sg.degenerate[i] for i in sorted(chosen_degenerate.values())],
    )
    return HConstruction(
        W=W,
        h=MarkedGraph.build(names, edges, marked={HUB}),
        psi=psi,
        added_cycles=added,
        degenerate_added=chosen_degenerate,
        h_spokes=h_spokes,
    )


class P2Certificates(BaseModel):
    no_diamond: bool
    degree: Optional[int] = None
    gap_set_equal: bool
    psi_graph_map: bool
    psi_injective: bool

    @property
    def passed(self) -> bool:
        return (
            self.no_diamond
            and self.degree == 1
            and self.gap_set_equal
            and self.psi_graph_map
            and self.psi_injective
        )


def certify_h(
    construction: HConstruction, g: MarkedGraph, target: EventuallyPeriodicSet
) -> P2Certificates:
    """Exact checks that psi and the composed code behave as claimed."""
    h = construction.h
    psi = construction.psi
    no_diamond = not has_graph_diamond(h)
    deg = degree(h).degree if no_diamond else None
    graph_map = all((psi[u], psi[v]) in g.graph.edges for u, v in h.graph.edges) and all(
        (v in h.marked) == (psi[v] in g.marked) for v in h.graph.vertices
    )
    return P2Certificates(
        no_diamond=no_diamond,
        degree=deg,
        gap_set_equal=image_gap_set(h) == target,
        psi_graph_map=graph_map,
        psi_injective=label_injective(h.graph, key=psi),
    )


class P2Result(BaseModel):
    holds: bool
    invariants: SpokeInvariants
    W: Optional[tuple[int, ...]] = None
    construction: Optional[HConstruction] = None
    certificates: Optional[P2Certificates] = None


def check_p2(sg: SpokeGraph) -> P2Result:
    """P2 holds iff a disjoint cover W exists; when it does, build and certify H."""
    inv = spoke_invariants(sg)
    W = find_W(inv)
    if W is None:
        return P2Result(holds=False, invariants=inv)
    construction = construct_H(sg, W, inv)
    certs = certify_h(construction, realize_graph(sg), inv.S)
    if not certs.passed:
        logger.warning("H certificates failed for W=%s: %s", set(W), certs)
    return P2Result(
        holds=True,
        invariants=inv,
        W=construction.W,
        construction=construction,
        certificates=certs,
    )
