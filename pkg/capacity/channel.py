"""
The channel view of a factor code.

A deterministic channel that writes phi(x) for the input x has capacity
h_top(Y). An input measure nu achieves it exactly when phi pushes nu forward
to the measure of maximal entropy on Y, which for a gap shift is pinned down
by its gap law P(gap = i) = λ^(-i-1).
"""
import logging
import math
from typing import Union

import networkx as nx
import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from codes.factor import MarkedGraph, UnambiguousCode, image_gap_set, image_of
from codes.spoke import SpokeGraph, spoke_invariants
from codes.twocycle import TwoCycleGraph, two_cycle_gap_set
from shifts.errors import NotIrreducibleError
from shifts.gapshift import DEFAULT_TOL, GapShift, entropy, mme_gap_distribution, topological_entropy
from shifts.graph import LabeledGraph, is_irreducible

logger = logging.getLogger(__name__)

_CHECK_TOL = 1e-9  # slack for the row-sum and invariance checks

Source = Union[GapShift, UnambiguousCode, MarkedGraph, SpokeGraph, TwoCycleGraph]


def output_shift(source: Source) -> GapShift:
    """The gap shift Y a code (or a spoke family) writes."""
    if isinstance(source, GapShift):
        return source
    if isinstance(source, UnambiguousCode):
        return image_of(source)
    if isinstance(source, MarkedGraph):
        return GapShift(gaps=image_gap_set(source))
    if isinstance(source, SpokeGraph):
        return GapShift(gaps=spoke_invariants(source).S)
    if isinstance(source, TwoCycleGraph):
        return GapShift(gaps=two_cycle_gap_set(source))
    raise TypeError(f"cannot compute the output of {type(source).__name__}")


def channel_capacity(source: Source, tol: float = DEFAULT_TOL) -> float:
    """Cap = h_top(Y), in nats."""
    return topological_entropy(output_shift(source), tol)


class MarkovMeasure(BaseModel):
    """A first-order stationary Markov measure on the vertex shift of `graph`."""

    model_config = ConfigDict(frozen=True)

    graph: LabeledGraph
    transition: dict[tuple[int, int], float]
    stationary: dict[int, float]

    @model_validator(mode="after")
    def _check_measure(self) -> "MarkovMeasure":
        for (u, v), p in self.transition.items():
            if (u, v) not in self.graph.edges:
                raise ValueError(f"transition ({u}, {v}) is not an edge")
            if p < 0:
                raise ValueError(f"negative transition probability on ({u}, {v})")
        rows: dict[int, float] = {}
        for (u, _), p in self.transition.items():
            rows[u] = rows.get(u, 0.0) + p
        for v, mass in self.stationary.items():
            if mass < -_CHECK_TOL:
                raise ValueError(f"negative stationary mass at {v}")
            if mass > _CHECK_TOL and abs(rows.get(v, 0.0) - 1.0) > _CHECK_TOL:
                raise ValueError(f"transitions out of {v} sum to {rows.get(v, 0.0)}")
        if abs(sum(self.stationary.values()) - 1.0) > _CHECK_TOL:
            raise ValueError("stationary vector must sum to 1")
        pushed = {v: 0.0 for v in self.stationary}
        for (u, v), p in self.transition.items():
            pushed[v] = pushed.get(v, 0.0) + self.stationary.get(u, 0.0) * p
        for v, mass in self.stationary.items():
            if abs(pushed.get(v, 0.0) - mass) > _CHECK_TOL:
                raise ValueError(f"stationary vector is not invariant at vertex {v}")
        return self

    def support(self) -> nx.DiGraph:
        G = nx.DiGraph()
        G.add_nodes_from(v for v, mass in self.stationary.items() if mass > 0)
        G.add_edges_from(
            e for e, p in self.transition.items() if p > 0 and self.stationary.get(e[0], 0) > 0
        )
        return G


def _perron(matrix: np.ndarray) -> tuple[float, np.ndarray]:
    values, vectors = np.linalg.eig(matrix)
    k = int(np.argmax(values.real))
    vec = np.abs(vectors[:, k].real)
    return float(values[k].real), vec / vec.sum()


def parry_measure(g: LabeledGraph) -> MarkovMeasure:
    """The Markov measure of maximal entropy of an irreducible vertex shift."""
    if not is_irreducible(g) or len(g.vertices) == 0:
        raise NotIrreducibleError("the Parry measure needs an irreducible graph")
    index = {v: i for i, v in enumerate(g.vertices)}
    A = np.zeros((len(index), len(index)))
    for u, v in g.edges:
        A[index[u], index[v]] = 1.0
    lam, right = _perron(A)
    _, left = _perron(A.T)
    transition = {
        (u, v): float(right[index[v]] / (lam * right[index[u]])) for u, v in g.edges
    }
    weights = left * right
    weights /= weights.sum()
    stationary = {v: float(weights[index[v]]) for v in g.vertices}
    logger.debug("Parry measure: λ=%.12g on %d vertices", lam, len(index))
    return MarkovMeasure(graph=g, transition=transition, stationary=stationary)


def weight_per_symbol_check(nu: MarkovMeasure, h: float, maxlen: int, tol: float) -> bool:
    """
    Every periodic orbit of period <= maxlen in the support carries weight per
    symbol e^(-h). Closed paths factor into simple cycles, so checking the
    simple cycles covers every orbit.
    """
    target = math.exp(-h)
    for cycle in nx.simple_cycles(nu.support(), length_bound=maxlen):
        steps = list(zip(cycle, cycle[1:] + cycle[:1]))
        weight = math.prod(nu.transition[e] for e in steps) ** (1.0 / len(cycle))
        if abs(weight - target) > tol:
            logger.info("orbit %s has weight per symbol %.12g, want %.12g", cycle, weight, target)
            return False
    return True


def pushforward_gap_law(nu: MarkovMeasure, mg: MarkedGraph, L: int) -> dict[int, float]:
    """
    P(next gap = i | 1 at coordinate 0) under phi*(nu), for i <= L: the
    probability that the chain started at a marked vertex (weighted by its
    stationary mass) first returns to a marked vertex after i+1 steps.
    """
    start = {v: nu.stationary.get(v, 0.0) for v in mg.marked}
    total = sum(start.values())
    if total <= 0:
        return {}
    out: dict[int, float] = {}
    mass = {v: p / total for v, p in start.items() if p > 0}
    for step in range(1, L + 2):
        nxt: dict[int, float] = {}
        for u, p in mass.items():
            for v in mg.graph.succ(u):
                q = nu.transition.get((u, v), 0.0)
                if q > 0:
                    nxt[v] = nxt.get(v, 0.0) + p * q
        returned = sum(p for v, p in nxt.items() if v in mg.marked)
        if returned > 0:
            out[step - 1] = returned
        mass = {v: p for v, p in nxt.items() if v not in mg.marked}
    return out


def validate_capacity_witness(
    nu: MarkovMeasure, mg: MarkedGraph, y: GapShift, L: int, tol: float
) -> bool:
    """Whether phi*(nu) has the gap law of the measure of maximal entropy, for gaps <= L."""
    lam = entropy(y)
    expected = mme_gap_distribution(y, lam, L)
    law = pushforward_gap_law(nu, mg, L)
    for i in range(L + 1):
        if abs(law.get(i, 0.0) - expected.get(i, 0.0)) > tol:
            logger.info(
                "gap %d: pushforward %.12g, maximal entropy %.12g",
                i, law.get(i, 0.0), expected.get(i, 0.0),
            )
            return False
    return True
