"""
Graph presentations of shifts of finite type.

A LabeledGraph is a directed graph without multiple edges whose vertices carry
one-character symbols. Read as a vertex shift it presents a 1-step SFT, and its
labels give a 1-block code on that SFT at the same time.
"""
import itertools
import logging
from collections import deque
from typing import Collection, Hashable, Iterable, Mapping, Optional

import networkx as nx
from pydantic import BaseModel, ConfigDict, PrivateAttr, field_validator, model_validator

from .errors import BoundTooSmallError
from .periodic import EventuallyPeriodicSet

logger = logging.getLogger(__name__)

Word = str  # symbols are single characters, so a block is just a string


class LabeledGraph(BaseModel):
    model_config = ConfigDict(frozen=True)

    vertices: tuple[int, ...]
    edges: frozenset[tuple[int, int]]
    label: dict[int, str]
    names: dict[int, str] = {}  # human-readable names for output; ids are the identity

    _succ: dict[int, tuple[int, ...]] = PrivateAttr(default_factory=dict)
    _pred: dict[int, tuple[int, ...]] = PrivateAttr(default_factory=dict)

    @field_validator("vertices")
    @classmethod
    def _unique_vertices(cls, v: tuple[int, ...]) -> tuple[int, ...]:
        if len(set(v)) != len(v):
            raise ValueError("duplicate vertex ids")
        return tuple(sorted(v))

    @model_validator(mode="after")
    def _check_consistency(self) -> "LabeledGraph":
        vs = set(self.vertices)
        for u, w in self.edges:
            if u not in vs or w not in vs:
                raise ValueError(f"edge ({u}, {w}) uses an unknown vertex")
        missing = vs - set(self.label)
        if missing:
            raise ValueError(f"vertices without a label: {sorted(missing)}")
        for v, sym in self.label.items():
            if len(sym) != 1:
                raise ValueError(f"label of vertex {v} must be one character, got {sym!r}")
        shown = [self.names.get(v, str(v)) for v in self.vertices]
        if len(set(shown)) != len(shown):
            raise ValueError("vertex names must be distinct")
        return self

    def model_post_init(self, __context) -> None:
        succ: dict[int, list[int]] = {v: [] for v in self.vertices}
        pred: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, w in sorted(self.edges):
            succ[u].append(w)
            pred[w].append(u)
        self._succ = {v: tuple(ws) for v, ws in succ.items()}
        self._pred = {v: tuple(us) for v, us in pred.items()}

    @classmethod
    def build(
        cls,
        labels: dict[int, str],
        edges: Iterable[tuple[int, int]],
        names: Optional[dict[int, str]] = None,
    ) -> "LabeledGraph":
        return cls(
            vertices=tuple(labels),
            edges=frozenset(edges),
            label=dict(labels),
            names=dict(names or {}),
        )

    @classmethod
    def empty(cls) -> "LabeledGraph":
        return cls(vertices=(), edges=frozenset(), label={})

    def succ(self, v: int) -> tuple[int, ...]:
        return self._succ[v]

    def pred(self, v: int) -> tuple[int, ...]:
        return self._pred[v]

    def name(self, v: int) -> str:
        return self.names.get(v, str(v))

    def vertex_by_name(self, name: str) -> int:
        for v in self.vertices:
            if self.name(v) == name:
                return v
        raise KeyError(name)

    def word(self, path: Iterable[int]) -> Word:
        return "".join(self.label[v] for v in path)

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def alphabet(self) -> tuple[str, ...]:
        return tuple(sorted(set(self.label.values())))

    def subgraph(self, keep: Collection[int]) -> "LabeledGraph":
        keep = set(keep)
        return LabeledGraph(
            vertices=tuple(v for v in self.vertices if v in keep),
            edges=frozenset((u, w) for u, w in self.edges if u in keep and w in keep),
            label={v: s for v, s in self.label.items() if v in keep},
            names={v: n for v, n in self.names.items() if v in keep},
        )

    def to_networkx(self) -> nx.DiGraph:
        G = nx.DiGraph()
        for v in self.vertices:
            G.add_node(v, label=self.label[v], name=self.name(v))
        G.add_edges_from(self.edges)
        return G


class ForbiddenSft(BaseModel):
    """X_F over `alphabet`: all bi-infinite sequences avoiding every word of `forbidden`."""

    model_config = ConfigDict(frozen=True)

    alphabet: tuple[str, ...] = ("0", "1")
    forbidden: frozenset[str] = frozenset()

    @model_validator(mode="after")
    def _check_words(self) -> "ForbiddenSft":
        symbols = set(self.alphabet)
        if any(len(s) != 1 for s in symbols):
            raise ValueError("alphabet symbols must be single characters")
        for w in self.forbidden:
            if not w:
                raise ValueError("forbidden words must be nonempty")
            if not set(w) <= symbols:
                raise ValueError(f"forbidden word {w!r} uses symbols outside the alphabet")
        return self

    @property
    def memory(self) -> int:
        return max((len(w) for w in self.forbidden), default=1) - 1

    def allows(self, word: Word) -> bool:
        """True iff no forbidden word occurs in `word` (local admissibility only)."""
        return not any(f in word for f in self.forbidden)


# reachability helpers


def reachable(G: nx.DiGraph, seeds: Iterable, forward: bool = True) -> set:
    step = G.successors if forward else G.predecessors
    seen = set(seeds)
    queue = deque(seen)
    while queue:
        u = queue.popleft()
        for w in step(u):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def _cyclic_vertices(G: nx.DiGraph) -> set:
    out = set()
    for comp in nx.strongly_connected_components(G):
        if len(comp) > 1 or any(G.has_edge(v, v) for v in comp):
            out |= comp
    return out


def bi_infinite_core(G: nx.DiGraph) -> set:
    """Vertices lying on some bi-infinite path of G."""
    cyclic = _cyclic_vertices(G)
    return reachable(G, cyclic, forward=True) & reachable(G, cyclic, forward=False)


def essential(g: LabeledGraph) -> LabeledGraph:
    """Drop stranded vertices (those on no bi-infinite path)."""
    core = bi_infinite_core(g.to_networkx())
    if len(core) == len(g.vertices):
        return g
    return g.subgraph(core)


# shift-core operations


def to_vertex_shift(sft: ForbiddenSft, block_length: Optional[int] = None) -> LabeledGraph:
    """
    Present X_F as a vertex shift on its allowed N-blocks, N = max(1, memory).

    Vertices are the allowed blocks (ids in lexicographic order, names = the
    block), edges join overlapping blocks whose union avoids F, and each vertex
    is labeled with its first symbol. `block_length` asks for longer blocks,
    which recoding uses to make a marker word a single vertex. An empty
    language gives the empty graph.
    """
    n = max(1, sft.memory, block_length or 0)
    blocks = [
        "".join(b) for b in itertools.product(sorted(sft.alphabet), repeat=n)
        if sft.allows("".join(b))
    ]
    index = {b: i for i, b in enumerate(blocks)}
    by_prefix: dict[str, list[str]] = {}
    for b in blocks:
        by_prefix.setdefault(b[:-1], []).append(b)
    edges = set()
    for b in blocks:
        for c in by_prefix.get(b[1:], ()):
            if sft.allows(b + c[-1]):
                edges.add((index[b], index[c]))
    g = LabeledGraph.build(
        labels={index[b]: b[0] for b in blocks},
        edges=edges,
        names={index[b]: b for b in blocks},
    )
    g = essential(g)
    if g.is_empty:
        logger.info("forbidden set %s leaves the empty shift", sorted(sft.forbidden))
    return g


def is_irreducible(g: LabeledGraph) -> bool:
    core = essential(g)
    if core.is_empty:
        return False
    return nx.is_strongly_connected(core.to_networkx())


def enumerate_blocks(g: LabeledGraph, n: int) -> set[Word]:
    """Label words of all paths of n vertices in g."""
    if n < 1:
        raise ValueError("n must be positive")
    frontier: dict[int, set[str]] = {v: {g.label[v]} for v in g.vertices}
    for _ in range(n - 1):
        nxt: dict[int, set[str]] = {v: set() for v in g.vertices}
        for u, words in frontier.items():
            if not words:
                continue
            for w in g.succ(u):
                sym = g.label[w]
                nxt[w].update(s + sym for s in words)
        frontier = nxt
    return set().union(*frontier.values()) if frontier else set()


def block_paths(g: LabeledGraph, n: int) -> list[tuple[int, ...]]:
    """All paths of n vertices, sorted."""
    paths = [(v,) for v in g.vertices]
    for _ in range(n - 1):
        paths = [p + (w,) for p in paths for w in g.succ(p[-1])]
    return sorted(paths)


def graph_on_paths(g: LabeledGraph, paths: list[tuple[int, ...]]) -> LabeledGraph:
    """Overlap graph on the given equal-length paths, labeled by first vertex."""
    index = {p: i for i, p in enumerate(paths)}
    by_prefix: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for p in paths:
        by_prefix.setdefault(p[:-1], []).append(p)
    edges = {
        (index[p], index[q]) for p in paths for q in by_prefix.get(p[1:], ())
    }
    return LabeledGraph.build(
        labels={index[p]: g.label[p[0]] for p in paths},
        edges=edges,
        names={index[p]: ".".join(g.name(v) for v in p) for p in paths},
    )


def higher_block(g: LabeledGraph, N: int) -> LabeledGraph:
    """The N-th higher block presentation; vertices are paths of N vertices."""
    if N < 1:
        raise ValueError("N must be positive")
    if N == 1:
        return g
    return graph_on_paths(g, block_paths(g, N))


def default_bound(g: LabeledGraph) -> int:
    return max(2 * len(g.vertices) ** 2, 16)


def return_lengths(
    g: LabeledGraph, sources: Collection[int], bound: Optional[int] = None
) -> EventuallyPeriodicSet:
    """Lengths of paths from a source to a source with no source in the interior."""
    return passage_lengths(g, sources, sources, sources, bound)


def passage_lengths(
    g: LabeledGraph,
    starts: Collection[int],
    ends: Collection[int],
    avoid: Collection[int],
    bound: Optional[int] = None,
) -> EventuallyPeriodicSet:
    """
    Lengths of paths from `starts` to `ends` with no interior vertex in `avoid`.

    The layers R_t (vertices reached after exactly t steps through allowed
    interior vertices) evolve deterministically, so the first repeated layer
    gives the exact onset and period of the length set.
    """
    starts, ends, avoid = frozenset(starts), frozenset(ends), frozenset(avoid)
    bound = bound if bound is not None else default_bound(g)
    into_end = {u for e in ends for u in g.pred(e)}

    short = {1} if any(w in ends for s in starts for w in g.succ(s)) else set()
    layer = frozenset(w for s in starts for w in g.succ(s) if w not in avoid)
    seen: dict[frozenset[int], int] = {}
    hits: dict[int, bool] = {}
    t = 1
    while layer not in seen:
        if t > bound:
            raise BoundTooSmallError(bound)
        seen[layer] = t
        hits[t] = bool(layer & into_end)
        layer = frozenset(w for u in layer for w in g.succ(u) if w not in avoid)
        t += 1
    onset = seen[layer]
    period = t - onset
    logger.debug("return layers repeat: onset %d, period %d", onset, period)

    exceptions = short | {s + 1 for s in range(1, onset) if hits[s]}
    residues = {(s + 1) % period for s in range(onset, t) if hits[s]}
    return EventuallyPeriodicSet.eventual(onset + 1, exceptions, period, residues)


def first_return_lengths(
    g: LabeledGraph, v: int, bound: Optional[int] = None
) -> EventuallyPeriodicSet:
    if v not in g.label:
        raise KeyError(f"unknown vertex {v}")
    return return_lengths(g, {v}, bound)


def first_return_path(
    g: LabeledGraph, start: int, end: int, length: int, avoid: Collection[int]
) -> Optional[tuple[int, ...]]:
    """
    Lexicographically least path start -> end with exactly `length` edges and
    no interior vertex in `avoid`; None if there is none.
    """
    avoid = set(avoid)
    if length < 1:
        return None
    if length == 1:
        return (start, end) if end in g.succ(start) else None
    # reach[r]: interior-eligible vertices that reach `end` in exactly r steps
    reach = [set(), {u for u in g.pred(end) if u not in avoid}]
    for _ in range(2, length):
        reach.append({u for w in reach[-1] for u in g.pred(w) if u not in avoid})
    path = [start]
    for i in range(1, length):
        nxt = [w for w in g.succ(path[-1]) if w in reach[length - i]]
        if not nxt:
            return None
        path.append(min(nxt))
    path.append(end)
    return tuple(path)


def shortest_path_avoiding(
    g: LabeledGraph, start: int, end: int, avoid: Collection[int]
) -> Optional[tuple[int, ...]]:
    """Shortest, then lexicographically least, path with no interior vertex in `avoid`."""
    avoid = set(avoid)
    parent: dict[int, Optional[int]] = {start: None}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in g.succ(u):
            if w == end:
                path = [end, u]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return tuple(reversed(path))
            if w in parent or w in avoid:
                continue
            parent[w] = u
            queue.append(w)
    return None


def label_pair_graph(g: LabeledGraph, key: Optional[Mapping[int, Hashable]] = None) -> nx.DiGraph:
    """
    Pairs (u, v) with equal labels, stepping both coordinates along edges.
    `key` replaces the labels by any other vertex map.
    """
    key = g.label if key is None else key
    P = nx.DiGraph()
    by_label: dict[Hashable, list[int]] = {}
    for v in g.vertices:
        by_label.setdefault(key[v], []).append(v)
    for group in by_label.values():
        P.add_nodes_from(itertools.product(group, repeat=2))
    for u, v in list(P.nodes):
        for u2 in g.succ(u):
            for v2 in g.succ(v):
                if key[u2] == key[v2]:
                    P.add_edge((u, v), (u2, v2))
    logger.debug("label pair graph: %d pairs, %d edges", P.number_of_nodes(), P.number_of_edges())
    return P


def label_injective(g: LabeledGraph, key: Optional[Mapping[int, Hashable]] = None) -> bool:
    """
    Whether the labeling is one-to-one on bi-infinite paths: every pair of
    distinct equal-label paths would give an off-diagonal bi-infinite path in
    the label pair graph.
    """
    core = bi_infinite_core(label_pair_graph(g, key))
    return all(u == v for u, v in core)
