"""
Command-line interface.

    python main.py entropy "eventual:T=1;exc={};D=1;res={0}"
    python main.py p1 --full-shift 0000
    python main.py p2 --instance three-spokes --json
    python main.py runs list
"""
import argparse
import asyncio
import logging
import math
import os
import sys
from pathlib import Path
from typing import Literal, Optional, Union

from pydantic import BaseModel, Field, ValidationError

from capacity.necessary import P3Support, p3_necessary
from codes.catalog import CATALOG, Instance, get_instance
from codes.conjugacy import FullShiftP1, check_p1, full_shift_p1
from codes.factor import (
    FullShiftFacts,
    MarkedGraph,
    UnambiguousCode,
    degree,
    full_shift_image_facts,
    has_graph_diamond,
    image_gap_set,
    recode_to_marked,
)
from codes.formats import load_spoke_spec
from codes.spoke import P2Certificates, SpokeGraph, check_p2, realize_graph, spoke_invariants
from codes.twocycle import (
    TwoCycleCertificates,
    TwoCycleGraph,
    certify_two_cycle,
    construct_H_two_cycle,
    realize_two_cycle,
)
from oracle.brute import (
    DiamondWitness,
    LanguageComparison,
    OracleBudget,
    language_equal_upto,
    point_diamond_search,
)
from shifts.errors import (
    BoundTooSmallError,
    BudgetExceededError,
    ConstructionError,
    EntropyError,
    ShiftError,
    SpecParseError,
)
from shifts.formats import format_gapset, format_graph, load_graph, parse_gapset
from shifts.gapshift import DEFAULT_TOL, GapShift, entropy, standard_forbidden_set
from shifts.graph import ForbiddenSft, LabeledGraph, label_injective
from shifts.periodic import EventuallyPeriodicSet

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT = 2
EXIT_NUMERIC = 3
EXIT_BUDGET = 4

DEFAULT_LENGTH = 20  # oracle horizon for the language and injectivity checks


def _env_float(name: str, default: float) -> float:
    raw = os.environ.get(name)
    return float(raw) if raw else default


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    return int(raw) if raw else default


class RunConfig(BaseModel):
    """Resolved settings for one invocation; flags override the environment."""

    command: str
    source: str = ""  # what the run was computed from, used for the archive key
    tol: float = Field(DEFAULT_TOL, gt=0)
    budget_blocks: int = Field(30, ge=1)
    length: int = Field(DEFAULT_LENGTH, ge=1)
    output: Literal["text", "json"] = "text"
    save: bool = False
    alternate: bool = False

    @property
    def budget(self) -> OracleBudget:
        return OracleBudget(max_block_len=self.budget_blocks)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        tol = args.tol if args.tol is not None else _env_float("SHIFT_CODES_TOL", DEFAULT_TOL)
        budget = (
            args.budget_blocks
            if args.budget_blocks is not None
            else _env_int("SHIFT_CODES_BUDGET_BLOCKS", 30)
        )
        return cls(
            command=args.command,
            tol=tol,
            budget_blocks=budget,
            length=getattr(args, "length", None) or DEFAULT_LENGTH,
            output="json" if args.json else "text",
            save=args.save,
            alternate=getattr(args, "alternate", False),
        )


# input resolution


def _source_text(path: Optional[str]) -> str:
    if path is None:
        return ""
    p = Path(path)
    return p.read_text(encoding="utf-8") if p.is_file() else path


def _split_marker(marker: str) -> tuple[str, ...]:
    """Vertex names separated by commas; a bare word is one name."""
    return tuple(m.strip() for m in marker.split(",") if m.strip())


def _code_of_marked(mg: MarkedGraph) -> UnambiguousCode:
    names = tuple(mg.graph.name(v) for v in sorted(mg.marked))
    if len(names) != 1:
        raise SpecParseError("a spoke graph must have exactly one central vertex")
    return UnambiguousCode.on_graph(mg.graph, names)


def _instance_code(inst: Instance) -> UnambiguousCode:
    if inst.code is not None:
        return inst.code
    if inst.spokes is not None:
        return _code_of_marked(realize_graph(inst.spokes))
    return _code_of_marked(realize_two_cycle(inst.two_cycle))


def _load_code(args: argparse.Namespace, cfg: RunConfig) -> UnambiguousCode:
    if args.instance:
        inst = get_instance(args.instance)
        cfg.source = f"instance:{inst.name}"
        return _instance_code(inst)
    if args.full_shift:
        cfg.source = f"full-shift:{args.full_shift}"
        return UnambiguousCode.on_full_shift(args.full_shift)
    if args.spokes:
        cfg.source = _source_text(args.spokes)
        family = load_spoke_spec(args.spokes)
        mg = realize_graph(family) if isinstance(family, SpokeGraph) else realize_two_cycle(family)
        return _code_of_marked(mg)
    if not args.marker:
        raise SpecParseError("--marker is required with a graph file or --forbidden")
    if args.forbidden is not None:
        words = frozenset(w.strip() for w in args.forbidden.split(",") if w.strip())
        cfg.source = f"forbidden:{sorted(words)};marker:{args.marker}"
        return UnambiguousCode.on_sft(ForbiddenSft(forbidden=words), args.marker)
    if args.graph:
        cfg.source = _source_text(args.graph) + f"\nmarker:{args.marker}"
        return UnambiguousCode.on_graph(load_graph(args.graph), _split_marker(args.marker))
    raise SpecParseError("no input: give a graph file, --forbidden, --full-shift, --spokes or --instance")


def _load_family(args: argparse.Namespace, cfg: RunConfig) -> Union[SpokeGraph, TwoCycleGraph]:
    if args.instance:
        inst = get_instance(args.instance)
        cfg.source = f"instance:{inst.name}"
        family = inst.spokes or inst.two_cycle
        if family is None:
            raise SpecParseError(f"instance {inst.name} is not a spoke graph")
        return family
    if not args.spec:
        raise SpecParseError("no input: give a spoke spec file or --instance")
    cfg.source = _source_text(args.spec)
    return load_spoke_spec(args.spec)


def _load_gaps(args: argparse.Namespace, cfg: RunConfig) -> EventuallyPeriodicSet:
    if getattr(args, "instance", None):
        inst = get_instance(args.instance)
        cfg.source = f"instance:{inst.name}"
        if inst.spokes is not None:
            return _family_gaps(inst.spokes)
        if inst.two_cycle is not None:
            return _family_gaps(inst.two_cycle)
        return image_gap_set(recode_to_marked(inst.code))
    if not args.spec:
        raise SpecParseError("no gap set given")
    cfg.source = args.spec
    return parse_gapset(args.spec)


def _family_gaps(family: Union[SpokeGraph, TwoCycleGraph]) -> EventuallyPeriodicSet:
    mg = realize_graph(family) if isinstance(family, SpokeGraph) else realize_two_cycle(family)
    return image_gap_set(mg)


def _named(g: LabeledGraph, path) -> list[str]:
    return [g.name(v) for v in path]


# reports


class EntropyReport(BaseModel):
    gaps: str
    description: str
    lam: float
    h_top: float

    def text(self) -> str:
        return f"S = {self.description}\nλ = {self.lam:.12f}\nh_top = {self.h_top:.12f}"


class GapSetReport(BaseModel):
    canonical: str
    description: str
    first: list[int]
    finite: bool
    cofinite: bool

    def text(self) -> str:
        kind = "finite" if self.finite else "cofinite" if self.cofinite else "infinite, co-infinite"
        shown = ", ".join(str(n) for n in self.first)
        return f"{self.canonical}\nS = {self.description} ({kind})\nfirst elements: {shown}"


class ImageReport(BaseModel):
    gaps: str
    description: str
    standard_forbidden: Optional[list[str]] = None
    lam: float
    h_top: float
    degree: Optional[int] = None
    magic_word: Optional[str] = None
    full_shift: Optional[FullShiftFacts] = None

    def text(self) -> str:
        lines = [f"S = {self.description}", f"gap set: {self.gaps}"]
        if self.standard_forbidden is None:
            lines.append("Y is not an SFT")
        else:
            lines.append("standard forbidden set: {" + ", ".join(self.standard_forbidden) + "}")
        lines.append(f"λ = {self.lam:.12f}, h_top = {self.h_top:.12f}")
        if self.degree is None:
            lines.append("code has a graph diamond (not finite-to-one)")
        else:
            lines.append(f"degree {self.degree} (magic word {self.magic_word})")
        if self.full_shift is not None:
            lines.append(f"full shift: {self.full_shift.model_dump()}")
        return "\n".join(lines)


class P1Report(BaseModel):
    holds: bool
    witness: Optional[str] = None
    vertex_a: Optional[str] = None
    gaps: str
    description: str
    cycles: dict[int, dict[str, list[str]]] = {}  # gap -> arrival hub -> path
    z_graph: Optional[str] = None
    z_injective: Optional[bool] = None
    z_language: Optional[LanguageComparison] = None
    full_shift: Optional[FullShiftP1] = None

    @property
    def verified(self) -> bool:
        if self.z_graph is None:
            return True
        return bool(self.z_injective) and self.z_language is not None and self.z_language.equal

    def text(self) -> str:
        lines = [f"S = {self.description}"]
        if self.holds:
            lines.append(f"P1 HOLDS via {self.witness}")
            if self.vertex_a:
                lines.append(f"fixed vertex A = {self.vertex_a}")
            for s, arrivals in sorted(self.cycles.items()):
                for hub, cycle in arrivals.items():
                    into = "" if len(arrivals) == 1 else f" to {hub}"
                    lines.append(f"  gap {s}{into}: {' '.join(cycle)}")
            lines.append(
                f"Z one-to-one: {self.z_injective}; language equal: {self.z_language.equal}"
            )
        else:
            lines.append("P1 FAILS")
        if self.full_shift is not None:
            f = self.full_shift
            lines.append(
                f"X_F {'works' if f.onto_F else 'fails'}; X_Fbar {'works' if f.onto_complementF else 'fails'}"
            )
            for side, div in (("X_F", f.divergence_F), ("X_Fbar", f.divergence_complementF)):
                if div is not None:
                    where, other = ("the image", "Y") if div.found_in == "image" else ("Y", "the image")
                    lines.append(f"{side}: {div.word} is in {where} but not in {other}")
            lines.append("F = {" + ", ".join(f.forbidden) + "}")
        return "\n".join(lines)


class P2Report(BaseModel):
    holds: bool
    big_d: int
    K: dict[int, list[int]]
    gaps: str
    description: str
    W: Optional[list[int]] = None
    added_cycles: dict[int, list[str]] = {}
    degenerate_added: dict[int, int] = {}
    certificates: Optional[P2Certificates] = None
    h_language: Optional[LanguageComparison] = None
    h_graph: Optional[str] = None

    @property
    def verified(self) -> bool:
        if not self.holds:
            return True
        return self.certificates.passed and self.h_language.equal

    def text(self) -> str:
        lines = [f"S = {self.description}", f"D = {self.big_d}"]
        lines.extend(f"  K_{i} = {{{', '.join(map(str, k))}}}" for i, k in sorted(self.K.items()))
        if not self.holds:
            lines.append("P2 FAILS: no W with disjoint K sets covering every residue")
            return "\n".join(lines)
        lines.append(f"P2 HOLDS with W = {{{', '.join(map(str, self.W))}}}")
        for r, cycle in sorted(self.added_cycles.items()):
            lines.append(f"  added C({r}) onto {' '.join(cycle)}")
        for s, i in sorted(self.degenerate_added.items()):
            lines.append(f"  degenerate gap {s} from spoke {i}")
        lines.append(f"certificates: {self.certificates.model_dump()}")
        lines.append(f"language equal up to {self.h_language.checked_upto}: {self.h_language.equal}")
        return "\n".join(lines)


class TwoCycleReport(BaseModel):
    m: int
    d1: int
    d2: int
    u: int
    alternate: bool
    beta: Optional[list[str]] = None
    gaps: str
    description: str
    certificates: TwoCycleCertificates
    h_language: LanguageComparison
    h_graph: str

    @property
    def verified(self) -> bool:
        return self.certificates.passed and self.h_language.equal

    def text(self) -> str:
        lines = [
            f"two-cycle spoke m={self.m} |C1|={self.d1} |C2|={self.d2}, u={self.u}",
            f"S = {self.description}",
        ]
        if self.beta:
            lines.append(f"beta: {' '.join(self.beta)}")
        lines.append(f"certificates: {self.certificates.model_dump()}")
        lines.append(f"language equal up to {self.h_language.checked_upto}: {self.h_language.equal}")
        return "\n".join(lines)


class P3CliReport(BaseModel):
    Q: float
    checked: int
    feasible: list[P3Support]
    w_found: bool
    prop94_consistent: bool

    @property
    def verified(self) -> bool:
        return self.prop94_consistent

    def text(self) -> str:
        lines = [f"Q = e^h_top = {self.Q:.12f}", f"{self.checked} candidate supports checked"]
        if not self.feasible:
            lines.append("necessary conditions infeasible")
        for s in self.feasible:
            flags = ",".join(s.prop94) or "-"
            lines.append(f"  P = {{{', '.join(map(str, s.support))}}} weights {s.weights} sufficient: {flags}")
        lines.append(f"W exists: {self.w_found}")
        return "\n".join(lines)


class ConstructionReport(BaseModel):
    kind: Literal["Z", "H"]
    graph: Optional[str] = None
    reason: Optional[str] = None

    @property
    def verified(self) -> bool:
        return self.graph is not None

    def text(self) -> str:
        return self.graph if self.graph is not None else f"no {self.kind}: {self.reason}"


class VerifyReport(BaseModel):
    passed: bool
    language: LanguageComparison
    diamond: Optional[DiamondWitness] = None
    injective: bool

    @property
    def verified(self) -> bool:
        return self.passed

    def text(self) -> str:
        if self.passed:
            return f"PASS (languages equal up to {self.language.checked_upto}, no diamond)"
        lines = ["FAIL"]
        if not self.language.equal:
            lines.append(f"  first divergent word {self.language.divergent} (only in {self.language.found_in})")
        if self.diamond is not None:
            lines.append(f"  graph diamond over {self.diamond.word}")
        return "\n".join(lines)


# commands


def cmd_entropy(args: argparse.Namespace, cfg: RunConfig) -> EntropyReport:
    gaps = _load_gaps(args, cfg)
    lam = entropy(GapShift(gaps=gaps), cfg.tol)
    return EntropyReport(
        gaps=format_gapset(gaps), description=gaps.describe(), lam=lam, h_top=math.log(lam)
    )


def cmd_gapset(args: argparse.Namespace, cfg: RunConfig) -> GapSetReport:
    gaps = _load_gaps(args, cfg)
    return GapSetReport(
        canonical=format_gapset(gaps),
        description=gaps.describe(),
        first=gaps.upto(max(gaps.threshold + 2 * gaps.period, 10)),
        finite=gaps.is_finite,
        cofinite=gaps.is_cofinite,
    )


def cmd_image(args: argparse.Namespace, cfg: RunConfig) -> ImageReport:
    code = _load_code(args, cfg)
    mg = recode_to_marked(code)
    gaps = image_gap_set(mg)
    y = GapShift(gaps=gaps)
    lam = entropy(y, cfg.tol)
    sft = standard_forbidden_set(y)
    deg = None if has_graph_diamond(mg) else degree(mg)
    full = None
    if isinstance(code.domain, ForbiddenSft) and not code.domain.forbidden:
        full = full_shift_image_facts(code.marker_word)
    return ImageReport(
        gaps=format_gapset(gaps),
        description=gaps.describe(),
        standard_forbidden=None if sft is None else sorted(sft.forbidden, key=lambda w: (len(w), w)),
        lam=lam,
        h_top=math.log(lam),
        degree=None if deg is None else deg.degree,
        magic_word=None if deg is None else deg.magic_word,
        full_shift=full,
    )


def _full_shift_marker(args: argparse.Namespace) -> Optional[str]:
    if args.full_shift:
        return args.full_shift
    if args.instance:
        return get_instance(args.instance).full_shift_marker
    return None


def cmd_p1(args: argparse.Namespace, cfg: RunConfig) -> P1Report:
    code = _load_code(args, cfg)
    verdict = check_p1(code)
    g = verdict.domain_graph.graph
    report = P1Report(
        holds=verdict.holds,
        witness=verdict.witness,
        vertex_a=None if verdict.vertex_a is None else g.name(verdict.vertex_a),
        gaps=format_gapset(verdict.gaps),
        description=verdict.gaps.describe(),
    )
    if verdict.z_graph is not None:
        z = verdict.z_graph
        report.cycles = {
            s: {g.name(t): _named(g, c) for t, c in arrivals.items()}
            for s, arrivals in verdict.eta_spec.cycles.items()
        }
        report.z_graph = format_graph(z.graph)
        report.z_injective = label_injective(z.graph)
        report.z_language = language_equal_upto(
            z, GapShift(gaps=verdict.gaps), cfg.length, cfg.budget
        )
        _write_out(args, report.z_graph)
    marker = _full_shift_marker(args)
    if marker is not None:
        report.full_shift = full_shift_p1(marker, cfg.length, cfg.budget)
    return report


def _p2_report(sg: SpokeGraph, args: argparse.Namespace, cfg: RunConfig) -> P2Report:
    result = check_p2(sg)
    inv = result.invariants
    report = P2Report(
        holds=result.holds,
        big_d=inv.big_d,
        K={i: sorted(k) for i, k in inv.K.items()},
        gaps=format_gapset(inv.S),
        description=inv.S.describe(),
    )
    if result.holds:
        c = result.construction
        g = realize_graph(sg).graph
        report.W = list(c.W)
        report.added_cycles = {r: _named(g, cycle) for r, cycle in c.added_cycles.items()}
        report.degenerate_added = c.degenerate_added
        report.certificates = result.certificates
        report.h_language = language_equal_upto(c.h, GapShift(gaps=inv.S), cfg.length, cfg.budget)
        report.h_graph = format_graph(c.h.graph)
        _write_out(args, report.h_graph)
    return report


def _two_cycle_report(tc: TwoCycleGraph, args: argparse.Namespace, cfg: RunConfig) -> TwoCycleReport:
    result = construct_H_two_cycle(tc, alternate=cfg.alternate)
    gaps = image_gap_set(result.g)
    h_graph = format_graph(result.h.graph)
    _write_out(args, h_graph)
    return TwoCycleReport(
        m=tc.m,
        d1=tc.d1,
        d2=tc.d2,
        u=result.u,
        alternate=cfg.alternate,
        beta=None if result.beta is None else _named(result.h.graph, result.beta),
        gaps=format_gapset(gaps),
        description=gaps.describe(),
        certificates=certify_two_cycle(result),
        h_language=language_equal_upto(result.h, GapShift(gaps=gaps), cfg.length, cfg.budget),
        h_graph=h_graph,
    )


def cmd_p2(args: argparse.Namespace, cfg: RunConfig) -> Union[P2Report, TwoCycleReport]:
    family = _load_family(args, cfg)
    if isinstance(family, TwoCycleGraph):
        return _two_cycle_report(family, args, cfg)
    return _p2_report(family, args, cfg)


def cmd_p3(args: argparse.Namespace, cfg: RunConfig) -> P3CliReport:
    family = _load_family(args, cfg)
    if not isinstance(family, SpokeGraph):
        raise SpecParseError("p3-necessary needs a spoke spec")
    inv = spoke_invariants(family)
    report = p3_necessary(inv)
    return P3CliReport(**report.model_dump())


def cmd_construct(args: argparse.Namespace, cfg: RunConfig) -> ConstructionReport:
    if args.spec or (args.instance and get_instance(args.instance).code is None):
        family = _load_family(args, cfg)
        if isinstance(family, TwoCycleGraph):
            h = construct_H_two_cycle(family, alternate=cfg.alternate).h
            text = format_graph(h.graph)
        else:
            result = check_p2(family)
            if not result.holds:
                return ConstructionReport(kind="H", reason="no valid W")
            text = format_graph(result.construction.h.graph)
        _write_out(args, text)
        return ConstructionReport(kind="H", graph=text)
    verdict = check_p1(_load_code(args, cfg))
    if verdict.z_graph is None:
        return ConstructionReport(kind="Z", reason="P1 fails")
    text = format_graph(verdict.z_graph.graph)
    _write_out(args, text)
    return ConstructionReport(kind="Z", graph=text)


def cmd_verify(args: argparse.Namespace, cfg: RunConfig) -> VerifyReport:
    graph = load_graph(args.artifact)
    if args.gaps:
        gaps = parse_gapset(args.gaps)
    elif args.instance or args.spec:
        family = _load_family(args, cfg)
        gaps = _family_gaps(family)
    else:
        raise SpecParseError("verify needs a target: --gaps, a spoke spec or --instance")
    cfg.source = _source_text(args.artifact) + f"\ntarget:{format_gapset(gaps)}"
    language = language_equal_upto(graph, GapShift(gaps=gaps), cfg.length, cfg.budget)
    diamond = point_diamond_search(graph, min(2 * cfg.length, cfg.budget.max_path_len), cfg.budget)
    injective = label_injective(graph)
    return VerifyReport(
        passed=language.equal and diamond is None,
        language=language,
        diamond=diamond,
        injective=injective,
    )


def _write_out(args: argparse.Namespace, text: str) -> None:
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(text, encoding="utf-8")
        logger.info("wrote %s", out)


COMMANDS = {
    "entropy": cmd_entropy,
    "gapset": cmd_gapset,
    "image": cmd_image,
    "p1": cmd_p1,
    "p2": cmd_p2,
    "p3-necessary": cmd_p3,
    "construct-z": cmd_construct,
    "verify": cmd_verify,
}


# run archive


async def _archive(cfg: RunConfig, report: BaseModel) -> str:
    from database.connection import close_db, get_db, init_db
    from database.runs import save_run

    await init_db()
    try:
        async with get_db() as session:
            return await save_run(session, cfg.command, cfg.source, report.model_dump_json())
    finally:
        await close_db()


async def _runs(args: argparse.Namespace) -> int:
    from database.connection import close_db, get_db, init_db
    from database.runs import get_run, list_runs

    await init_db()
    try:
        async with get_db() as session:
            if args.action == "list":
                runs = await list_runs(session)
            else:
                run = await get_run(session, args.identifier)
    finally:
        await close_db()
    if args.action == "list":
        for r in runs:
            print(f"{r.identifier}\t{r.command}\t{r.created_at:%Y-%m-%d %H:%M:%S}")
        return EXIT_OK
    if run is None:
        print(f"run {args.identifier} not found", file=sys.stderr)
        return EXIT_INPUT
    print(run.report_data)
    return EXIT_OK


# parser


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    p.add_argument("--tol", type=float, default=None, help="entropy root tolerance")
    p.add_argument("--budget-blocks", type=int, default=None, help="longest block the oracle enumerates")
    p.add_argument("--save", action="store_true", help="store the report in the run archive")
    return p


def _code_inputs(p: argparse.ArgumentParser) -> None:
    p.add_argument("graph", nargs="?", help="graph file (vertex/edge lines)")
    p.add_argument("--marker", help="marker word D; vertex names separated by commas for a graph file")
    p.add_argument("--forbidden", help="domain X_F over {0,1}: forbidden words separated by commas")
    p.add_argument("--full-shift", metavar="D", help="full 2-shift domain with marker D")
    p.add_argument("--spokes", help="spoke spec file, code marked at B")
    p.add_argument("--instance", choices=sorted(CATALOG), help="named worked instance")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="shift-codes",
        description="Factor codes with an unambiguous symbol onto S-gap shifts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in [("entropy", "entropy of X(S)"), ("gapset", "canonical form of a gap set")]:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("spec", nargs="?", help="gap set, e.g. finite:{0} or eventual:T=1;exc={};D=1;res={0}")
        p.add_argument("--instance", choices=sorted(CATALOG))

    p = sub.add_parser("image", parents=[common], help="image gap set, forbidden set and degree of a code")
    _code_inputs(p)

    p = sub.add_parser("p1", parents=[common], help="one-to-one restriction onto the image")
    _code_inputs(p)
    p.add_argument("--length", type=int, default=None, help="oracle horizon")
    p.add_argument("--out", help="write the Z graph here")

    for name, help_text in [("p2", "finite-to-one restriction of a spoke graph"), ("p3-necessary", "necessary conditions for a capacity-achieving Markov input")]:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("spec", nargs="?", help="spoke spec file")
        p.add_argument("--instance", choices=sorted(CATALOG))
        p.add_argument("--length", type=int, default=None)
        p.add_argument("--alternate", action="store_true", help="two-cycle: swap the roles of C1 and C2")
        p.add_argument("--out", help="write the H graph here")

    p = sub.add_parser("construct-z", parents=[common], help="emit Z (P1) or H (P2) as a graph file")
    _code_inputs(p)
    p.add_argument("--spec", help="spoke spec file")
    p.add_argument("--alternate", action="store_true")
    p.add_argument("--out")

    p = sub.add_parser("verify", parents=[common], help="check a constructed graph against Y")
    p.add_argument("artifact", help="graph file labeled over {0,1}")
    p.add_argument("--gaps", help="target gap set")
    p.add_argument("--spec", help="target spoke spec file")
    p.add_argument("--instance", choices=sorted(CATALOG))
    p.add_argument("--length", type=int, default=None)

    p = sub.add_parser("runs", parents=[common], help="the run archive")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("identifier", nargs="?")
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def _exit_code(exc: Exception) -> int:
    if isinstance(exc, BudgetExceededError):
        return EXIT_BUDGET
    if isinstance(exc, (EntropyError, BoundTooSmallError)):
        return EXIT_NUMERIC
    if isinstance(exc, ConstructionError):
        return EXIT_VERIFY_FAILED
    return EXIT_INPUT


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)

    if args.command == "runs":
        if args.action == "show" and not args.identifier:
            parser.error("runs show needs an identifier")
        return asyncio.run(_runs(args))

    try:
        cfg = RunConfig.from_args(args)
        report = COMMANDS[args.command](args, cfg)
    except (ShiftError, ValidationError, KeyError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return _exit_code(e)

    if cfg.output == "json":
        print(report.model_dump_json(indent=2))
    else:
        print(report.text())
    if cfg.save:
        identifier = asyncio.run(_archive(cfg, report))
        print(f"saved run {identifier}", file=sys.stderr)
    verified = getattr(report, "verified", True)
    return EXIT_OK if verified else EXIT_VERIFY_FAILED


if __name__ == "__main__":
    sys.exit(main())
