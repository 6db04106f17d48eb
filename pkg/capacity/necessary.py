"""
Necessary conditions for a Markov input measure whose output is the measure
of maximal entropy on a spoke graph's gap shift.

For a candidate support P (the regular spokes the measure actually uses) the
measure must satisfy, for every residue j in the union of the K sets:

  (a) sum over i in R_j ∩ P of c_i takes one common value, for some c_i > 0
  (b) the K sets outside P are covered by the K sets inside P
  (c) R_j' ∩ P is never a proper subset of R_j ∩ P

with R_j = {i : j in K_i}. Each c_i stands for Π_i Q^(m_i+1) (1 - Q^(-d_i)), so
(a) is a homogeneous linear system and does not depend on Q or the order of
the measure.
"""
import itertools
import logging
import math
from fractions import Fraction
from typing import Iterable, Optional

import networkx as nx
import numpy as np
from pydantic import BaseModel
from scipy.optimize import linprog
from sympy import Rational, linsolve, symbols
from sympy.ntheory.modular import solve_congruence

from codes.spoke import SpokeInvariants, find_W
from shifts.errors import BudgetExceededError, ConstructionError
from shifts.gapshift import GapShift, entropy

logger = logging.getLogger(__name__)

MAX_SUPPORT_SPOKES = 16
_DENOMINATOR_LIMIT = 10**6
_ACTIVE_TOL = 1e-7


def crt_common_solution(congruences: Iterable[tuple[int, int]]) -> Optional[int]:
    """
    Least x >= 0 with x ≡ a (mod d) for every (a, d), or None. Pairwise
    solvability (gcd(d_i, d_j) divides a_i - a_j) is enough for a common solution.
    """
    pairs = [(a, d) for a, d in congruences]
    if any(d < 1 for _, d in pairs):
        raise ValueError("moduli must be positive")
    if not pairs:
        return 0
    for (a1, d1), (a2, d2) in itertools.combinations(pairs, 2):
        if (a1 - a2) % math.gcd(d1, d2):
            return None
    solved = solve_congruence(*pairs)
    if solved is None:
        return None
    x, modulus = solved
    return int(x) % int(modulus)


class P3Support(BaseModel):
    support: tuple[int, ...]
    weights: dict[int, int]  # an integer solution c_i >= 1 of the equal-sums system
    prop94: tuple[str, ...] = ()  # which of the sufficient conditions a-d hold


class P3Report(BaseModel):
    Q: float
    checked: int
    feasible: list[P3Support]
    w_found: bool
    prop94_consistent: bool  # no support meets a sufficient condition while W is missing

    @property
    def feasible_supports(self) -> list[tuple[int, ...]]:
        return [s.support for s in self.feasible]

    @property
    def prop94(self) -> dict[tuple[int, ...], set[str]]:
        return {s.support: set(s.prop94) for s in self.feasible}


def _residue_rows(inv: SpokeInvariants, P: frozenset[int]) -> dict[int, frozenset[int]]:
    """R_j ∩ P for every residue j in the union of the K sets."""
    return {
        j: frozenset(i for i in P if j in inv.K[i]) for j in sorted(inv.union_k())
    }


def _covers(inv: SpokeInvariants, P: frozenset[int]) -> bool:
    outside = [i for i in inv.K if i not in P]
    return inv.union_k(outside) <= inv.union_k(P)


def _no_proper_nesting(rows: dict[int, frozenset[int]]) -> bool:
    distinct = set(rows.values())
    return not any(a < b for a in distinct for b in distinct)


def _equal_sums_weights(P: frozenset[int], rows: dict[int, frozenset[int]]) -> Optional[dict[int, int]]:
    """
    Solve c_i >= 1 with every row sum equal, then certify an integer solution
    exactly; None if the system is infeasible.
    """
    order = sorted(P)
    distinct = sorted({r for r in rows.values()}, key=sorted)
    if len(distinct) <= 1:
        return {i: 1 for i in order}
    first = distinct[0]
    A = np.array(
        [[(i in r) - (i in first) for i in order] for r in distinct[1:]], dtype=float
    )
    res = linprog(
        c=np.zeros(len(order)),
        A_eq=A,
        b_eq=np.zeros(len(distinct) - 1),
        bounds=[(1, None)] * len(order),
        method="highs",
    )
    if res.status != 0:
        logger.debug("support %s: equal-sums system infeasible (%s)", order, res.message)
        return None
    fracs = [max(Fraction(x).limit_denominator(_DENOMINATOR_LIMIT), Fraction(1)) for x in res.x]
    scale = math.lcm(*(f.denominator for f in fracs))
    weights = {i: int(f * scale) for i, f in zip(order, fracs)}
    sums = {sum(weights[i] for i in r) for r in distinct}
    if len(sums) != 1:
        logger.info("support %s: rounded LP solution is not exact, solving over the rationals", order)
        weights = _exact_weights(order, A, res.x)
        if weights is None:
            raise ConstructionError(f"could not certify the LP solution for support {order} exactly")
    return weights


def _exact_weights(order: list[int], A: np.ndarray, x: np.ndarray) -> Optional[dict[int, int]]:
    """
    Exact rational solution of A c = 0 with the LP's active bounds held at 1
    and every free parameter at its LP value, rescaled so the least c_i is 1.
    """
    cs = symbols(f"c0:{len(order)}")
    system = [sum(int(a) * c for a, c in zip(row, cs)) for row in A]
    system += [c - 1 for c, v in zip(cs, x) if abs(v - 1) < _ACTIVE_TOL]
    solutions = linsolve(system, *cs)
    if not solutions:
        return None
    (general,) = solutions
    at_lp = {}
    for c in set().union(*(v.free_symbols for v in general)):
        f = Fraction(float(x[cs.index(c)])).limit_denominator(_DENOMINATOR_LIMIT)
        at_lp[c] = Rational(f.numerator, f.denominator)
    values = [Rational(v.subs(at_lp)) for v in general]
    least = min(values)
    if least <= 0:
        return None
    scale = math.lcm(*(int((v / least).q) for v in values))
    return {i: int(v / least * scale) for i, v in zip(order, values)}


def prop94_check(inv: SpokeInvariants, P: Iterable[int]) -> set[str]:
    """
    Which sufficient conditions hold for P: (a) the K sets share a residue,
    (b) they meet pairwise, (c) two pairwise-disjoint subfamilies cover every
    K set, (d) |P| <= 5.
    """
    P = sorted(set(P))
    if not P:
        raise ValueError("P must be nonempty")
    out = set()
    if frozenset.intersection(*(inv.K[i] for i in P)):
        out.add("a")
    if all(inv.K[i] & inv.K[j] for i, j in itertools.combinations(P, 2)):
        out.add("b")
    # maximal pairwise-disjoint subfamilies are the maximal cliques of the disjointness graph
    disjoint = nx.Graph()
    disjoint.add_nodes_from(P)
    disjoint.add_edges_from(
        (i, j) for i, j in itertools.combinations(P, 2) if not inv.K[i] & inv.K[j]
    )
    unions = [inv.union_k(clique) for clique in nx.find_cliques(disjoint)]
    target = inv.union_k()
    if any(u1 | u2 == target for u1 in unions for u2 in unions):
        out.add("c")
    if len(P) <= 5:
        out.add("d")
    return out


def p3_necessary(inv: SpokeInvariants, Q: Optional[float] = None) -> P3Report:
    """Every nonempty support P of regular spokes that passes (a), (b) and (c)."""
    t1 = sorted(inv.K)
    if len(t1) > MAX_SUPPORT_SPOKES:
        raise BudgetExceededError(
            f"{len(t1)} regular spokes; support enumeration is limited to {MAX_SUPPORT_SPOKES}"
        )
    if Q is None:
        Q = entropy(GapShift(gaps=inv.S))
    feasible: list[P3Support] = []
    checked = 0
    for size in range(1, len(t1) + 1):
        for combo in itertools.combinations(t1, size):
            checked += 1
            P = frozenset(combo)
            if not _covers(inv, P):
                continue
            rows = _residue_rows(inv, P)
            if not _no_proper_nesting(rows):
                continue
            weights = _equal_sums_weights(P, rows)
            if weights is None:
                continue
            feasible.append(
                P3Support(support=combo, weights=weights, prop94=tuple(sorted(prop94_check(inv, P))))
            )
    w_found = find_W(inv) is not None
    consistent = w_found or not any(s.prop94 for s in feasible)
    if not consistent:
        logger.warning("a feasible support meets a sufficient condition but no W exists")
    logger.debug("p3: %d supports checked, %d feasible", checked, len(feasible))
    return P3Report(
        Q=Q, checked=checked, feasible=feasible, w_found=w_found, prop94_consistent=consistent
    )
