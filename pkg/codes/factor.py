"""
Factor codes with an unambiguous symbol.

A code is given by a domain SFT and a marker word D; it writes 1 exactly where
D starts and 0 elsewhere. After recoding the domain to a 1-step vertex shift in
which D is read off the marked vertices, the code is the 1-block labeling of a
MarkedGraph.
"""
import logging
import math
from collections import deque
from typing import Iterable, Optional, Sequence, Union

from pydantic import BaseModel, ConfigDict, model_validator

from shifts.errors import (
    MarkerNotAllowedError,
    NotFiniteToOneError,
    NotGapShiftError,
    NotIrreducibleError,
)
from shifts.gapshift import GapShift
from shifts.graph import (
    ForbiddenSft,
    LabeledGraph,
    Word,
    block_paths,
    essential,
    graph_on_paths,
    is_irreducible,
    label_pair_graph,
    passage_lengths,
    reachable,
    return_lengths,
    to_vertex_shift,
)
from shifts.periodic import EventuallyPeriodicSet

logger = logging.getLogger(__name__)


class MarkedGraph(BaseModel):
    """A LabeledGraph whose labels are 1 on `marked` and 0 elsewhere."""

    model_config = ConfigDict(frozen=True)

    graph: LabeledGraph
    marked: frozenset[int]

    @model_validator(mode="after")
    def _labels_match_marks(self) -> "MarkedGraph":
        for v in self.graph.vertices:
            expected = "1" if v in self.marked else "0"
            if self.graph.label[v] != expected:
                raise ValueError(f"vertex {self.graph.name(v)} should carry label {expected}")
        if not self.marked <= set(self.graph.vertices):
            raise ValueError("marked vertices must belong to the graph")
        return self

    @classmethod
    def mark(cls, graph: LabeledGraph, marked: Iterable[int]) -> "MarkedGraph":
        """Relabel `graph` so that exactly `marked` carries the symbol 1."""
        marked = frozenset(marked)
        relabeled = LabeledGraph(
            vertices=graph.vertices,
            edges=graph.edges,
            label={v: "1" if v in marked else "0" for v in graph.vertices},
            names=graph.names,
        )
        return cls(graph=relabeled, marked=marked)

    @classmethod
    def build(
        cls,
        names: dict[int, str],
        edges: Iterable[tuple[int, int]],
        marked: Iterable[int],
    ) -> "MarkedGraph":
        marked = frozenset(marked)
        graph = LabeledGraph.build(
            labels={v: "1" if v in marked else "0" for v in names},
            edges=edges,
            names=names,
        )
        return cls(graph=graph, marked=marked)


AnyGraph = Union[MarkedGraph, LabeledGraph]


def plain_graph(g: AnyGraph) -> LabeledGraph:
    return g.graph if isinstance(g, MarkedGraph) else g


class UnambiguousCode(BaseModel):
    """
    Domain plus marker word D. For a ForbiddenSft domain the marker entries
    are symbols; for a LabeledGraph domain the domain is its vertex shift and
    the entries are vertex names.
    """

    model_config = ConfigDict(frozen=True)

    domain: Union[ForbiddenSft, LabeledGraph]
    marker: tuple[str, ...]

    @model_validator(mode="after")
    def _nonempty_marker(self) -> "UnambiguousCode":
        if not self.marker:
            raise ValueError("marker word must have length >= 1")
        if isinstance(self.domain, ForbiddenSft):
            unknown = set(self.marker) - set(self.domain.alphabet)
            if unknown:
                raise ValueError(f"marker uses symbols outside the alphabet: {sorted(unknown)}")
        return self

    @classmethod
    def on_sft(cls, sft: ForbiddenSft, marker: Word) -> "UnambiguousCode":
        return cls(domain=sft, marker=tuple(marker))

    @classmethod
    def on_full_shift(cls, marker: Word) -> "UnambiguousCode":
        return cls(domain=ForbiddenSft(alphabet=("0", "1")), marker=tuple(marker))

    @classmethod
    def on_graph(cls, graph: LabeledGraph, marker: Sequence[str]) -> "UnambiguousCode":
        return cls(domain=graph, marker=tuple(marker))

    @property
    def k(self) -> int:
        return len(self.marker)

    @property
    def marker_word(self) -> str:
        return "".join(self.marker)


def recode_to_marked(code: UnambiguousCode) -> MarkedGraph:
    """
    Higher-block recoding of the domain to a 1-step vertex shift whose marked
    vertices are the blocks starting with D.
    """
    if isinstance(code.domain, ForbiddenSft):
        g = to_vertex_shift(code.domain, block_length=code.k)
        d = code.marker_word
        marked = {v for v in g.vertices if g.names[v].startswith(d)}
    else:
        g = essential(code.domain)
        if code.k == 1:
            marked = {v for v in g.vertices if g.name(v) == code.marker[0]}
        else:
            paths = block_paths(g, code.k)
            g = graph_on_paths(g, paths)
            marked = {
                i for i, p in enumerate(paths)
                if tuple(code.domain.name(v) for v in p) == code.marker
            }
    if not marked:
        raise MarkerNotAllowedError(f"marker {code.marker_word!r} does not occur in the domain")
    if not is_irreducible(g):
        raise NotIrreducibleError("domain is not irreducible")
    logger.debug("recoded domain: %d vertices, %d marked", len(g.vertices), len(marked))
    return MarkedGraph.mark(g, marked)


def image_gap_set(mg: MarkedGraph, bound: Optional[int] = None) -> EventuallyPeriodicSet:
    """
    Gap set S of the image: lengths of marked-to-marked first returns, minus one.

    With several marked vertices the image is the S-gap shift only if every
    sequence of gaps from S can be read in order; NotGapShiftError otherwise.
    """
    if not is_irreducible(mg.graph):
        raise NotIrreducibleError("marked graph is not irreducible")
    gaps = return_lengths(mg.graph, mg.marked, bound).shifted(-1)
    if len(mg.marked) > 1:
        blocked = unreadable_gaps(mg, gaps, bound)
        if blocked is not None:
            raise NotGapShiftError(blocked)
    return gaps


def gap_moves(
    mg: MarkedGraph, bound: Optional[int] = None
) -> dict[tuple[int, int], EventuallyPeriodicSet]:
    """Gaps s with a first return of length s + 1 from marked u to marked v, per pair (u, v)."""
    moves = {}
    for u in sorted(mg.marked):
        for v in sorted(mg.marked):
            gaps = passage_lengths(mg.graph, {u}, {v}, mg.marked, bound).shifted(-1)
            if not gaps.is_empty:
                moves[(u, v)] = gaps
    return moves


def unreadable_gaps(
    mg: MarkedGraph, gaps: EventuallyPeriodicSet, bound: Optional[int] = None
) -> Optional[tuple[int, ...]]:
    """
    Shortest sequence of gaps from `gaps` that no path reads as consecutive
    first returns, or None when every sequence is readable.

    Subset construction over the marked vertices; past the largest threshold
    every set involved repeats with the lcm of their periods, so one gap per
    residue class stands for all larger ones.
    """
    moves = gap_moves(mg, bound)
    sets = [gaps, *moves.values()]
    top = max(s.threshold for s in sets)
    step = math.lcm(*(s.period for s in sets))
    representatives = [s for s in range(top + step) if s in gaps]

    start = frozenset(mg.marked)
    found: dict[frozenset[int], tuple[int, ...]] = {start: ()}
    queue: deque[frozenset[int]] = deque([start])
    while queue:
        states = queue.popleft()
        for s in representatives:
            nxt = frozenset(v for (u, v), m in moves.items() if u in states and s in m)
            if not nxt:
                logger.info("gap %d cannot follow %s", s, list(found[states]))
                return found[states] + (s,)
            if nxt not in found:
                found[nxt] = found[states] + (s,)
                queue.append(nxt)
    return None


def image_of(code: UnambiguousCode, bound: Optional[int] = None) -> GapShift:
    return GapShift(gaps=image_gap_set(recode_to_marked(code), bound))


class FullShiftFacts(BaseModel):
    purely_periodic: bool
    k_minus_1_allowed: bool
    tail_onset: int
    root: Optional[str] = None  # u with D = u^l, l >= 2


def full_shift_image_facts(d: Word) -> FullShiftFacts:
    """Facts about the image of the full 2-shift under the code with marker d."""
    k = len(d)
    root = None
    for p in range(1, k):
        if k % p == 0 and d == d[:p] * (k // p):
            root = d[:p]
            break
    return FullShiftFacts(
        purely_periodic=root is not None,
        k_minus_1_allowed=root is None,
        tail_onset=k,
        root=root,
    )


def has_graph_diamond(mg: AnyGraph) -> bool:
    """
    Two distinct equal-label paths with common endpoints exist iff some
    off-diagonal pair in the label pair graph is reachable from the diagonal
    and reaches it.
    """
    pairs = label_pair_graph(plain_graph(mg))
    diagonal = [p for p in pairs.nodes if p[0] == p[1]]
    ahead = reachable(pairs, diagonal, forward=True)
    behind = reachable(pairs, diagonal, forward=False)
    return any(u != v for u, v in ahead & behind)


class DegreeResult(BaseModel):
    degree: int
    magic_word: str
    magic_block: str
    coordinate: int


def _subset_automaton(g: LabeledGraph, forward: bool) -> dict[frozenset[int], str]:
    """
    Reachable vertex sets with the first word found for each (breadth first,
    symbols in order). Forward sets are the possible last vertices of paths
    labeled by the word; backward sets are the possible first vertices.
    """
    by_label: dict[str, set[int]] = {}
    for v in g.vertices:
        by_label.setdefault(g.label[v], set()).add(v)
    found: dict[frozenset[int], str] = {}
    queue: deque[frozenset[int]] = deque()
    for sym in sorted(by_label):
        state = frozenset(by_label[sym])
        if state not in found:
            found[state] = sym
            queue.append(state)
    while queue:
        state = queue.popleft()
        word = found[state]
        for sym in sorted(by_label):
            if forward:
                nxt = frozenset(w for u in state for w in g.succ(u) if g.label[w] == sym)
                new_word = word + sym
            else:
                nxt = frozenset(u for w in state for u in g.pred(w) if g.label[u] == sym)
                new_word = sym + word
            if nxt and nxt not in found:
                found[nxt] = new_word
                queue.append(nxt)
    return found


def degree(mg: AnyGraph) -> DegreeResult:
    """
    Degree of a finite-to-one 1-block code on an irreducible graph.

    For a word w = u a v the vertices seen at the coordinate of a are the
    intersection of the forward set of ua with the backward set of av, so the
    degree is the least nonempty such intersection over reachable pairs.
    """
    g = plain_graph(mg)
    if has_graph_diamond(mg):
        raise NotFiniteToOneError("code has a graph diamond")
    fwd = _subset_automaton(g, forward=True)
    bwd = _subset_automaton(g, forward=False)
    logger.debug("degree search: %d forward, %d backward sets", len(fwd), len(bwd))

    best: Optional[tuple[int, int, str, int]] = None
    for fset, fword in fwd.items():
        for bset, bword in bwd.items():
            if fword[-1] != bword[0]:
                continue
            common = fset & bset
            if not common:
                continue
            word = fword + bword[1:]
            key = (len(common), len(word), word, len(fword) - 1)
            if best is None or key < best:
                best = key
    if best is None:
        raise NotIrreducibleError("graph presents the empty shift")
    count, _, word, coord = best
    return DegreeResult(degree=count, magic_word=word, magic_block=word[coord], coordinate=coord)


def preimage_count(mg: AnyGraph, w: Word) -> int:
    """Number of paths whose label sequence is w."""
    g = plain_graph(mg)
    if not w:
        return 1
    counts = {v: 1 for v in g.vertices if g.label[v] == w[0]}
    for sym in w[1:]:
        nxt: dict[int, int] = {}
        for u, c in counts.items():
            for v in g.succ(u):
                if g.label[v] == sym:
                    nxt[v] = nxt.get(v, 0) + c
        counts = nxt
    return sum(counts.values())


def coordinate_vertex_sets(mg: AnyGraph, w: Word) -> list[set[int]]:
    """For each coordinate of w, the vertices occupied there by some preimage path."""
    g = plain_graph(mg)
    fwd = [{v for v in g.vertices if g.label[v] == w[0]}]
    for sym in w[1:]:
        fwd.append({v for u in fwd[-1] for v in g.succ(u) if g.label[v] == sym})
    alive = fwd[-1]
    out = [alive]
    for i in range(len(w) - 2, -1, -1):
        alive = {u for u in fwd[i] if any(v in alive for v in g.succ(u))}
        out.append(alive)
    return out[::-1]
