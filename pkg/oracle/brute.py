"""
Finite-horizon brute force checks.

Everything here enumerates words or paths up to an explicit length and
refuses (BudgetExceededError) rather than truncating when a request is too
large. The exact algorithms elsewhere are tested against these.
"""
import logging
import math
from collections import deque
from typing import Collection, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from codes.factor import AnyGraph, plain_graph
from shifts.errors import BudgetExceededError
from shifts.gapshift import GapShift
from shifts.graph import LabeledGraph, Word, essential, label_pair_graph

logger = logging.getLogger(__name__)


class OracleBudget(BaseModel):
    model_config = ConfigDict(frozen=True)

    max_block_len: int = Field(30, ge=1)
    max_path_len: int = Field(60, ge=1)
    max_states: int = Field(2_000_000, ge=1)

    def check_block_len(self, n: int) -> None:
        if n > self.max_block_len:
            raise BudgetExceededError(f"block length {n} exceeds budget {self.max_block_len}")

    def check_path_len(self, n: int) -> None:
        if n > self.max_path_len:
            raise BudgetExceededError(f"path length {n} exceeds budget {self.max_path_len}")

    def check_states(self, n: int) -> None:
        if n > self.max_states:
            raise BudgetExceededError(f"{n} states exceed budget {self.max_states}")


DEFAULT_BUDGET = OracleBudget()


class _Language:
    """Words of a shift, grown one length at a time."""

    def __init__(self, source: Union[AnyGraph, GapShift], budget: OracleBudget):
        self.budget = budget
        self.gap_shift = source if isinstance(source, GapShift) else None
        self.graph = None if self.gap_shift else essential(plain_graph(source))
        self.frontier: dict[int, set[str]] = {}
        self.words: set[str] = set()

    def advance(self) -> set[str]:
        if self.gap_shift is not None:
            if not self.words:
                self.words = {c for c in "01" if self.gap_shift.allows(c)}
            else:
                self.words = {
                    w + c for w in self.words for c in "01" if self.gap_shift.allows(w + c)
                }
        else:
            g = self.graph
            if not self.frontier:
                self.frontier = {v: {g.label[v]} for v in g.vertices}
            else:
                nxt: dict[int, set[str]] = {v: set() for v in g.vertices}
                for u, words in self.frontier.items():
                    for w in g.succ(u):
                        nxt[w].update(s + g.label[w] for s in words)
                self.frontier = nxt
            self.words = set().union(*self.frontier.values()) if self.frontier else set()
        self.budget.check_states(len(self.words))
        return self.words


class LanguageComparison(BaseModel):
    equal: bool
    checked_upto: int
    divergent: Optional[Word] = None
    found_in: Optional[Literal["a", "b"]] = None  # the side whose language has `divergent`


def language_equal_upto(
    a: AnyGraph,
    b: Union[AnyGraph, GapShift],
    L: int,
    budget: OracleBudget = DEFAULT_BUDGET,
) -> LanguageComparison:
    """
    Compare the label languages of a and b for every length up to L. Gap
    shift words are decided by the gap grammar. The first divergent word is
    the shortest, then lexicographically least, word in one language only.
    """
    budget.check_block_len(L)
    la, lb = _Language(a, budget), _Language(b, budget)
    for n in range(1, L + 1):
        wa, wb = la.advance(), lb.advance()
        if wa != wb:
            word = min(wa ^ wb)
            side = "a" if word in wa else "b"
            logger.info("languages differ at length %d: %s only in %s", n, word, side)
            return LanguageComparison(equal=False, checked_upto=n, divergent=word, found_in=side)
    return LanguageComparison(equal=True, checked_upto=L)


class DiamondWitness(BaseModel):
    first: tuple[int, ...]
    second: tuple[int, ...]
    word: Word


def point_diamond_search(
    mg: AnyGraph, L: int, budget: OracleBudget = DEFAULT_BUDGET
) -> Optional[DiamondWitness]:
    """
    Shortest pair of distinct equal-label paths with common endpoints and at
    most L edges, found breadth first over pairs of vertices.
    """
    budget.check_path_len(L)
    g = plain_graph(mg)
    parent: dict[tuple[int, int], tuple[int, int]] = {}
    queue: deque[tuple[tuple[int, int], int]] = deque()
    for s in g.vertices:
        for u in g.succ(s):
            for v in g.succ(s):
                if u != v and g.label[u] == g.label[v] and (u, v) not in parent:
                    parent[(u, v)] = (s, s)
                    queue.append(((u, v), 1))
    while queue:
        (u, v), depth = queue.popleft()
        if depth >= L:
            continue
        for u2 in g.succ(u):
            for v2 in g.succ(v):
                if g.label[u2] != g.label[v2]:
                    continue
                if u2 == v2:
                    return _witness(g, parent, (u, v), u2)
                if (u2, v2) not in parent:
                    parent[(u2, v2)] = (u, v)
                    budget.check_states(len(parent))
                    queue.append(((u2, v2), depth + 1))
    return None


def _witness(
    g: LabeledGraph, parent: dict[tuple[int, int], tuple[int, int]], last: tuple[int, int], end: int
) -> DiamondWitness:
    pairs = [last]
    while pairs[-1][0] != pairs[-1][1]:
        pairs.append(parent[pairs[-1]])
    pairs.reverse()
    first = tuple(p[0] for p in pairs) + (end,)
    second = tuple(p[1] for p in pairs) + (end,)
    return DiamondWitness(first=first, second=second, word=g.word(first))


def count_blocks(g: AnyGraph, m: int, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    """|B_m|: the number of distinct label words of length m, counted exactly."""
    budget.check_block_len(m)
    g = essential(plain_graph(g))
    if m < 1 or g.is_empty:
        return 0
    # determinize: each state is the set of vertices some word can end at
    counts: dict[frozenset[int], int] = {}
    for sym in g.alphabet:
        counts[frozenset(v for v in g.vertices if g.label[v] == sym)] = 1
    for _ in range(m - 1):
        nxt: dict[frozenset[int], int] = {}
        for state, c in counts.items():
            for sym in g.alphabet:
                target = frozenset(w for u in state for w in g.succ(u) if g.label[w] == sym)
                if target:
                    nxt[target] = nxt.get(target, 0) + c
        counts = nxt
        budget.check_states(len(counts))
    return sum(counts.values())


def entropy_estimate(g: AnyGraph, m: int, budget: OracleBudget = DEFAULT_BUDGET) -> float:
    """(1/m) log |B_m|; never below the topological entropy."""
    n = count_blocks(g, m, budget)
    if n == 0:
        raise ValueError("the graph presents the empty shift")
    return math.log(n) / m


def restriction_injective_upto(
    mg: AnyGraph,
    sub: Optional[Collection[int]] = None,
    L: int = 20,
    budget: OracleBudget = DEFAULT_BUDGET,
) -> bool:
    """
    Whether, in the subgraph induced by `sub`, all paths of L vertices carrying
    the same label word agree at the central coordinate.
    """
    budget.check_path_len(L)
    g = plain_graph(mg)
    if sub is not None:
        g = essential(g.subgraph(sub))
    pairs = label_pair_graph(g)
    budget.check_states(pairs.number_of_nodes())
    centre = (L - 1) // 2

    def layer(steps: int, forward: bool) -> set[tuple[int, int]]:
        current = set(pairs.nodes)
        step = pairs.successors if forward else pairs.predecessors
        for _ in range(steps):
            current = {q for p in current for q in step(p)}
        return current

    ambiguous = {
        (u, v) for u, v in layer(centre, True) & layer(L - 1 - centre, False) if u != v
    }
    if ambiguous:
        logger.info("central coordinate ambiguous at pairs %s", sorted(ambiguous)[:5])
    return not ambiguous
