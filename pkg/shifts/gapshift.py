"""
S-gap shifts X(S): binary sequences built from blocks 10^s with s in S.
"""
import logging
import math
from typing import Optional

from pydantic import BaseModel, ConfigDict, field_validator
from scipy.optimize import bisect

from .errors import EntropyError
from .graph import ForbiddenSft, Word
from .periodic import EventuallyPeriodicSet

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-12


class GapShift(BaseModel):
    model_config = ConfigDict(frozen=True)

    gaps: EventuallyPeriodicSet

    @field_validator("gaps")
    @classmethod
    def _nonempty(cls, v: EventuallyPeriodicSet) -> EventuallyPeriodicSet:
        if v.is_empty:
            raise ValueError("gap set must be nonempty")
        return v

    def has_gap_at_least(self, n: int) -> bool:
        if not self.gaps.is_finite:
            return True
        return self.gaps.max() >= n

    def allows(self, word: Word) -> bool:
        """Membership of a finite binary word in the language of X(S)."""
        if set(word) - {"0", "1"}:
            return False
        ones = [i for i, c in enumerate(word) if c == "1"]
        if not ones:
            return self.has_gap_at_least(len(word))
        for a, b in zip(ones, ones[1:]):
            if (b - a - 1) not in self.gaps:
                return False
        return self.has_gap_at_least(ones[0]) and self.has_gap_at_least(len(word) - 1 - ones[-1])


def standard_forbidden_set(y: GapShift) -> Optional[ForbiddenSft]:
    """
    The standard forbidden set of X(S), or None when X(S) is not an SFT
    (S neither finite nor cofinite).
    """
    s = y.gaps
    if s.is_finite:
        top = s.max()
        words = {"1" + "0" * m + "1" for m in range(top + 1) if m not in s}
        words.add("0" * (top + 1))
    elif s.is_cofinite:
        words = {"1" + "0" * m + "1" for m in range(s.threshold) if m not in s}
    else:
        return None
    return ForbiddenSft(alphabet=("0", "1"), forbidden=frozenset(words))


def gap_series(s: EventuallyPeriodicSet, x: float) -> float:
    """Sum of x^(-m-1) over m in s, in closed form (x > 1 when s is infinite)."""
    total = math.fsum(x ** (-e - 1) for e in s.exceptions)
    if s.residues:
        ratio = 1.0 - x ** (-s.period)
        for r in s.residues:
            first = s.threshold + (r - s.threshold) % s.period
            total += x ** (-first - 1) / ratio
    return total


def entropy(y: GapShift, tol: float = DEFAULT_TOL) -> float:
    """
    The root λ >= 1 of sum_{m in S} x^(-m-1) = 1; h_top(X(S)) = log λ.

    The left side is strictly decreasing on (1, inf) and equals at most 1 at
    x = 2, so the root is bracketed in [1, 2].
    """
    if not tol > 0:
        raise EntropyError(f"tol must be positive, got {tol}")
    s = y.gaps
    if s.is_finite and len(s.exceptions) == 1:
        return 1.0

    def f(x: float) -> float:
        return gap_series(s, x) - 1.0

    hi = 2.0
    if f(hi) == 0.0:
        return hi
    if s.is_finite:
        lo = 1.0
    else:
        lo = None
        for k in range(1, 60):
            x = 1.0 + 2.0 ** -k
            if f(x) > 0:
                lo = x
                break
        if lo is None:
            raise EntropyError(f"could not bracket the entropy root for {s}")
    try:
        root = bisect(f, lo, hi, xtol=tol, maxiter=400)
    except (ValueError, RuntimeError) as e:
        raise EntropyError(f"bisection failed for {s}: {e}") from e
    logger.debug("entropy root for %s: %.15g", s, root)
    return root


def topological_entropy(y: GapShift, tol: float = DEFAULT_TOL) -> float:
    return math.log(entropy(y, tol))


def mme_gap_distribution(y: GapShift, lam: float, imax: int) -> dict[int, float]:
    """P(next gap = i | symbol 1 at 0) = λ^(-i-1) for the measure of maximal entropy."""
    if imax < 0:
        raise ValueError("imax must be nonnegative")
    return {i: lam ** (-i - 1) for i in y.gaps.upto(imax)}


def mme_tail_bound(y: GapShift, lam: float, imax: int) -> float:
    """Exact mass of gaps beyond imax under the measure of maximal entropy."""
    tail = y.gaps - EventuallyPeriodicSet.finite(range(imax + 1))
    if tail.is_empty:
        return 0.0
    if not tail.is_finite and lam <= 1.0:
        return math.inf
    return gap_series(tail, lam)
