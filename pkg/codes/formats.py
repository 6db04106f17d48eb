"""
Spoke and two-cycle spec files.

    # Example: three regular spokes
    regular m=1 d=6
    regular m=1 d=3
    regular m=4 d=6
    degenerate d=2

A two-cycle spec is a single line `twocycle m=<int> d1=<int> d2=<int>`.
"""
import re
from pathlib import Path
from typing import Union

from pydantic import ValidationError

from shifts.errors import SpecParseError

from .spoke import Spoke, SpokeGraph
from .twocycle import TwoCycleGraph

_REGULAR_RE = re.compile(r"^regular\s+m=(\d+)\s+d=(\d+)$")
_DEGENERATE_RE = re.compile(r"^degenerate\s+d=(\d+)$")
_TWOCYCLE_RE = re.compile(r"^twocycle\s+m=(\d+)\s+d1=(\d+)\s+d2=(\d+)$")


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_spoke_spec(text: str) -> Union[SpokeGraph, TwoCycleGraph]:
    spokes: list[Spoke] = []
    two_cycle = None
    try:
        for lineno, line in _lines(text):
            if m := _REGULAR_RE.match(line):
                spokes.append(Spoke(m=int(m.group(1)), d=int(m.group(2))))
            elif m := _DEGENERATE_RE.match(line):
                spokes.append(Spoke(d=int(m.group(1))))
            elif m := _TWOCYCLE_RE.match(line):
                if two_cycle is not None:
                    raise SpecParseError(f"line {lineno}: only one twocycle line is allowed")
                two_cycle = TwoCycleGraph(
                    m=int(m.group(1)), d1=int(m.group(2)), d2=int(m.group(3))
                )
            else:
                raise SpecParseError(f"line {lineno}: cannot parse {line!r}")
        if two_cycle is not None:
            if spokes:
                raise SpecParseError("a twocycle spec cannot also list spokes")
            return two_cycle
        return SpokeGraph(spokes=tuple(spokes))
    except ValidationError as e:
        raise SpecParseError(f"invalid spoke spec: {e.errors()[0]['msg']}") from e


def format_spoke_spec(g: Union[SpokeGraph, TwoCycleGraph]) -> str:
    if isinstance(g, TwoCycleGraph):
        return f"twocycle m={g.m} d1={g.d1} d2={g.d2}\n"
    lines = [
        f"regular m={s.m} d={s.d}" if s.regular else f"degenerate d={s.d}" for s in g.spokes
    ]
    return "\n".join(lines) + "\n"


def load_spoke_spec(path: Union[str, Path]) -> Union[SpokeGraph, TwoCycleGraph]:
    return parse_spoke_spec(Path(path).read_text(encoding="utf-8"))
