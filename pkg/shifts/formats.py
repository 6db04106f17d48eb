"""
Text formats.

Gap sets:   `finite:{1,4,5}` or `eventual:T=4;exc={1};D=3;res={1}`
Graphs:     one declaration per line, order-insensitive, `#` starts a comment
            vertex <id> label=<symbol> [name=<name>]
            edge <id> <id>
"""
import re
from pathlib import Path
from typing import Union

from .errors import SpecParseError
from .graph import LabeledGraph
from .periodic import EventuallyPeriodicSet

_INT_SET = r"\{\s*([0-9,\s]*)\}"
_FINITE_RE = re.compile(rf"^finite:\s*{_INT_SET}$")
_EVENTUAL_RE = re.compile(
    rf"^eventual:\s*T=(\d+);\s*exc={_INT_SET};\s*D=(\d+);\s*res={_INT_SET}$"
)
_VERTEX_RE = re.compile(r"^vertex\s+(-?\d+)\s+label=(\S)(?:\s+name=(\S+))?$")
_EDGE_RE = re.compile(r"^edge\s+(-?\d+)\s+(-?\d+)$")


def _ints(body: str) -> set[int]:
    return {int(p) for p in body.replace(" ", "").split(",") if p}


def parse_gapset(text: str) -> EventuallyPeriodicSet:
    spec = text.strip()
    try:
        if m := _FINITE_RE.match(spec):
            return EventuallyPeriodicSet.finite(_ints(m.group(1)))
        if m := _EVENTUAL_RE.match(spec):
            return EventuallyPeriodicSet.eventual(
                int(m.group(1)), _ints(m.group(2)), int(m.group(3)), _ints(m.group(4))
            )
    except ValueError as e:
        raise SpecParseError(f"invalid gap set {text!r}: {e}") from e
    raise SpecParseError(f"unrecognized gap set {text!r}")


def _fmt(values) -> str:
    return "{" + ",".join(str(v) for v in sorted(values)) + "}"


def format_gapset(s: EventuallyPeriodicSet) -> str:
    if s.is_finite:
        return f"finite:{_fmt(s.exceptions)}"
    return f"eventual:T={s.threshold};exc={_fmt(s.exceptions)};D={s.period};res={_fmt(s.residues)}"


def parse_graph(text: str) -> LabeledGraph:
    labels: dict[int, str] = {}
    names: dict[int, str] = {}
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if m := _VERTEX_RE.match(line):
            v = int(m.group(1))
            if v in labels:
                raise SpecParseError(f"line {lineno}: vertex {v} declared twice")
            labels[v] = m.group(2)
            if m.group(3):
                names[v] = m.group(3)
        elif m := _EDGE_RE.match(line):
            edges.add((int(m.group(1)), int(m.group(2))))
        else:
            raise SpecParseError(f"line {lineno}: cannot parse {raw.strip()!r}")
    if not labels:
        raise SpecParseError("graph declares no vertices")
    try:
        return LabeledGraph.build(labels, edges, names)
    except ValueError as e:
        raise SpecParseError(str(e)) from e


def format_graph(g: LabeledGraph) -> str:
    lines = []
    for v in g.vertices:
        name = f" name={g.names[v]}" if v in g.names else ""
        lines.append(f"vertex {v} label={g.label[v]}{name}")
    lines.extend(f"edge {u} {w}" for u, w in sorted(g.edges))
    return "\n".join(lines) + "\n"


def load_graph(path: Union[str, Path]) -> LabeledGraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))
