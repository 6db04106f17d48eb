"""
One-to-one restrictions of unambiguous-symbol codes.

check_p1 decides whether some sub-SFT Z of the domain is mapped by the code
one-to-one onto the image Y, and construct_eta builds Z as the image of an
explicit sliding block inverse eta: Y -> X.
"""
import itertools
import logging
from typing import TYPE_CHECKING, Literal, Optional

from pydantic import BaseModel, ConfigDict

from shifts.errors import (
    ConstructionError,
    MarkerNotAllowedError,
    NotGapShiftError,
    NotIrreducibleError,
)
from shifts.gapshift import GapShift, standard_forbidden_set
from shifts.graph import (
    ForbiddenSft,
    LabeledGraph,
    Word,
    first_return_path,
    shortest_path_avoiding,
)
from shifts.periodic import EventuallyPeriodicSet

from .factor import MarkedGraph, UnambiguousCode, image_gap_set, recode_to_marked

if TYPE_CHECKING:
    from oracle.brute import OracleBudget

logger = logging.getLogger(__name__)

MAX_HUB_SETS = 4096


class EtaSpec(BaseModel):
    """The choices behind eta, in vertex ids of the recoded domain graph."""

    model_config = ConfigDict(frozen=True)

    hubs: tuple[int, ...]  # marked vertices Z passes through
    departures: dict[int, int]  # gap s < onset -> hub a gap-s block leaves from
    cycles: dict[int, dict[int, tuple[int, ...]]]  # gap s < onset -> arrival hub -> first return
    large: Optional[int] = None  # hub the gaps >= onset leave from
    beta_plus: Optional[tuple[int, ...]] = None
    beta_minus: dict[int, tuple[int, ...]] = {}  # arrival hub -> path from A
    tau: Optional[int] = None  # the unmarked fixed vertex A
    onset: int  # gaps >= onset use beta_plus tau^n beta_minus
    radius: int
    psi: dict[int, int] = {}  # Z vertex -> domain vertex

    def departure(self, s: int) -> int:
        if s in self.departures:
            return self.departures[s]
        if self.large is None or s < self.onset:
            raise KeyError(s)
        return self.large

    def cycle_for(self, s: int, arrival: Optional[int] = None) -> tuple[int, ...]:
        """Domain path eta writes over a gap-s block that ends at hub `arrival`."""
        if arrival is None:
            if len(self.hubs) != 1:
                raise ValueError("several hubs: the arrival vertex must be given")
            arrival = self.hubs[0]
        if s in self.cycles:
            return self.cycles[s][arrival]
        if self.tau is None or s < self.onset:
            raise KeyError(s)
        minus = self.beta_minus[arrival]
        loops = s + 3 - len(self.beta_plus) - len(minus)
        return self.beta_plus + (self.tau,) * loops + minus[1:]


class P1Verdict(BaseModel):
    holds: bool
    witness: Optional[Literal["C1", "C2"]] = None
    vertex_a: Optional[int] = None
    gaps: EventuallyPeriodicSet
    domain_graph: MarkedGraph
    z_graph: Optional[MarkedGraph] = None
    eta_spec: Optional[EtaSpec] = None


def check_p1(code: UnambiguousCode, bound: Optional[int] = None) -> P1Verdict:
    """
    P1 holds iff the image gap set is finite (C1) or the domain has a fixed
    point other than D^inf, i.e. an unmarked vertex with a self-loop (C2).
    """
    mg = recode_to_marked(code)
    gaps = image_gap_set(mg, bound)
    g = mg.graph
    loops = sorted(v for v in g.vertices if v not in mg.marked and (v, v) in g.edges)
    if gaps.is_finite:
        verdict = P1Verdict(holds=True, witness="C1", gaps=gaps, domain_graph=mg)
    elif loops:
        verdict = P1Verdict(
            holds=True, witness="C2", vertex_a=loops[0], gaps=gaps, domain_graph=mg
        )
    else:
        return P1Verdict(holds=False, gaps=gaps, domain_graph=mg)
    logger.info("P1 holds via %s for marker %r", verdict.witness, code.marker_word)
    z_graph, spec = construct_eta(code, verdict)
    return verdict.model_copy(update={"z_graph": z_graph, "eta_spec": spec})


def _hub_sets(marked: frozenset[int]):
    ordered = sorted(marked)
    for r in range(1, len(ordered) + 1):
        yield from itertools.combinations(ordered, r)


def _plan(
    g: LabeledGraph, marked: frozenset[int], hubs: tuple[int, ...], verdict: P1Verdict
) -> Optional[EtaSpec]:
    """
    Departures and paths for one candidate hub set, or None if some gap has
    no hub with a first return of the right length to every hub.
    """
    gaps = verdict.gaps
    large = beta_plus = tau = None
    beta_minus: dict[int, tuple[int, ...]] = {}
    if verdict.witness == "C2":
        tau = verdict.vertex_a
        for h in hubs:
            beta_plus = shortest_path_avoiding(g, h, tau, avoid=marked)
            if beta_plus is not None:
                large = h
                break
        if large is None:
            return None
        for h in hubs:
            minus = shortest_path_avoiding(g, tau, h, avoid=marked)
            if minus is None:
                return None
            beta_minus[h] = minus
        onset = max(len(beta_plus) + len(m) - 3 for m in beta_minus.values())
        small = gaps.upto(onset - 1)
    else:
        onset = gaps.max() + 1
        small = gaps.upto(onset)

    departures: dict[int, int] = {}
    cycles: dict[int, dict[int, tuple[int, ...]]] = {}
    for s in small:
        for h in hubs:
            paths = {t: first_return_path(g, h, t, s + 1, avoid=marked) for t in hubs}
            if all(p is not None for p in paths.values()):
                departures[s], cycles[s] = h, paths
                break
        else:
            return None

    used = set(departures.values()) | ({large} if large is not None else set())
    return EtaSpec(
        hubs=tuple(sorted(used)),
        departures=departures,
        cycles={
            s: {t: p for t, p in arrivals.items() if t in used} for s, arrivals in cycles.items()
        },
        large=large,
        beta_plus=beta_plus,
        beta_minus={t: p for t, p in beta_minus.items() if t in used},
        tau=tau,
        onset=onset,
        # with several hubs the arrival depends on the next gap too
        radius=onset if len(used) == 1 else 2 * onset + 1,
    )


def construct_eta(code: UnambiguousCode, verdict: P1Verdict) -> tuple[MarkedGraph, EtaSpec]:
    """
    Choose a first-return path for every gap and glue them at marked hubs.

    A hub set is a set of marked vertices such that every gap below the onset
    leaves from some hub with a first return of length s + 1 to each hub; the
    least such hub is the departure of s, and eta writes a gap-s block ending
    at the departure of the next gap. Under C2 every gap s >= onset leaves
    from one hub through beta_plus tau^n beta_minus. With a single marked
    vertex the hub is that vertex, and Z is the hub, one loop per small gap
    and one lasso through A.
    """
    if not verdict.holds:
        raise ValueError("construct_eta needs a verdict for which P1 holds")
    mg = verdict.domain_graph
    g = mg.graph
    spec = None
    for hubs in itertools.islice(_hub_sets(mg.marked), MAX_HUB_SETS):
        spec = _plan(g, mg.marked, hubs, verdict)
        if spec is not None:
            break
    if spec is None:
        raise ConstructionError(
            "no set of marked vertices carries a first return for every gap of "
            f"{verdict.gaps.describe()}"
        )

    zid = {h: i for i, h in enumerate(spec.hubs)}
    names = {i: g.name(h) for h, i in zid.items()}
    psi = {i: h for h, i in zid.items()}
    edges: set[tuple[int, int]] = set()
    several = len(spec.hubs) > 1

    def add_path(interior: tuple[int, ...], tag: str) -> list[int]:
        ids = []
        for j, v in enumerate(interior):
            z = len(names)
            names[z] = f"{g.name(v)}@{tag}{j}"
            psi[z] = v
            ids.append(z)
        return ids

    for s, arrivals in spec.cycles.items():
        for t, cycle in arrivals.items():
            tag = f"{s}>{g.name(t)}." if several else f"{s}."
            chain = [zid[spec.departures[s]]] + add_path(cycle[1:-1], tag) + [zid[t]]
            edges.update(zip(chain, chain[1:]))
    if spec.tau is not None:
        plus = add_path(spec.beta_plus[1:-1], "+")
        fixed = len(names)
        names[fixed] = f"{g.name(spec.tau)}@A"
        psi[fixed] = spec.tau
        for t, minus in spec.beta_minus.items():
            tail = add_path(minus[1:-1], f"-{g.name(t)}." if several else "-")
            chain = [zid[spec.large]] + plus + [fixed] + tail + [zid[t]]
            edges.update(zip(chain, chain[1:]))
        edges.add((fixed, fixed))

    z_graph = MarkedGraph.build(names, edges, marked=set(zid.values()))
    spec = spec.model_copy(update={"psi": psi})
    logger.info(
        "eta: %d hubs, %d small gaps, onset %d, Z has %d vertices",
        len(spec.hubs), len(spec.cycles), spec.onset, len(names),
    )
    return z_graph, spec


def apply_eta(verdict: P1Verdict, y_word: Word, next_gap: Optional[int] = None) -> tuple[int, ...]:
    """
    Domain vertex sequence eta assigns to a Y-word that starts and ends with 1.
    With several hubs the last vertex depends on the gap after the word.
    """
    spec = verdict.eta_spec
    if spec is None:
        raise ValueError("verdict carries no eta")
    if not y_word.startswith("1") or not y_word.endswith("1"):
        raise ValueError("word must start and end with 1")
    ones = [i for i, c in enumerate(y_word) if c == "1"]
    gaps = [b - a - 1 for a, b in zip(ones, ones[1:])]
    if next_gap is not None:
        gaps.append(next_gap)
    for s in gaps:
        if s not in verdict.gaps:
            raise ValueError(f"gap {s} is not allowed in the image")
    if next_gap is None:
        if len(spec.hubs) != 1:
            raise ValueError("several hubs: pass the gap that follows the word")
        arrivals = [spec.departure(s) for s in gaps[1:]] + [spec.hubs[0]]
    else:
        arrivals = [spec.departure(s) for s in gaps[1:]]
    path = [spec.departure(gaps[0]) if gaps else arrivals[-1]]
    for s, t in zip(gaps, arrivals):
        path.extend(spec.cycle_for(s, t)[1:])
    return tuple(path)


class Divergence(BaseModel):
    word: Word
    found_in: Literal["image", "Y"]  # the side whose language has `word`
    checked_upto: int


class FullShiftP1(BaseModel):
    condition1: bool
    which: Literal["F", "complementF", "neither"]
    onto_F: bool
    onto_complementF: bool
    gaps: EventuallyPeriodicSet
    forbidden: list[str]
    complement_forbidden: list[str]
    divergence_F: Optional[Divergence] = None
    divergence_complementF: Optional[Divergence] = None


def _flip(word: str) -> str:
    return word.translate(str.maketrans("01", "10"))


def _restriction(
    domain: ForbiddenSft,
    d: Word,
    gaps: EventuallyPeriodicSet,
    length: int,
    budget: Optional["OracleBudget"],
) -> tuple[bool, Optional[Divergence]]:
    """Whether the code on `domain` is onto X(gaps), and if not the first word the languages differ on."""
    from oracle.brute import DEFAULT_BUDGET, language_equal_upto  # oracle.brute imports codes.factor

    try:
        mg = recode_to_marked(UnambiguousCode.on_sft(domain, d))
    except (MarkerNotAllowedError, NotIrreducibleError) as e:
        logger.info("no image for %s: %s", sorted(domain.forbidden), e)
        return False, None
    try:
        if image_gap_set(mg) == gaps:
            return True, None
    except NotGapShiftError as e:
        logger.info("image of %s: %s", sorted(domain.forbidden), e)
    comparison = language_equal_upto(mg, GapShift(gaps=gaps), length, budget or DEFAULT_BUDGET)
    if comparison.equal:
        return False, None
    return False, Divergence(
        word=comparison.divergent,
        found_in="image" if comparison.found_in == "a" else "Y",
        checked_upto=comparison.checked_upto,
    )


def full_shift_p1(
    d: Word, length: int = 12, budget: Optional["OracleBudget"] = None
) -> FullShiftP1:
    """
    Full 2-shift domain: compare the images of X_F and of its bitwise
    complement X_Fbar with Y, where F is the standard forbidden set of Y.
    A restriction that is not onto reports the first word (up to `length`)
    on which its image and Y differ.
    """
    gaps = image_gap_set(recode_to_marked(UnambiguousCode.on_full_shift(d)))
    sft = standard_forbidden_set(GapShift(gaps=gaps))
    complement = ForbiddenSft(forbidden=frozenset(_flip(w) for w in sft.forbidden))
    onto_f, div_f = _restriction(sft, d, gaps, length, budget)
    onto_fbar, div_fbar = _restriction(complement, d, gaps, length, budget)
    which = "F" if onto_f else "complementF" if onto_fbar else "neither"
    return FullShiftP1(
        condition1=d.count("0") <= 1 or d.count("1") <= 1,
        which=which,
        onto_F=onto_f,
        onto_complementF=onto_fbar,
        gaps=gaps,
        forbidden=sorted(sft.forbidden, key=lambda w: (len(w), w)),
        complement_forbidden=sorted(complement.forbidden, key=lambda w: (len(w), w)),
        divergence_F=div_f,
        divergence_complementF=div_fbar,
    )
