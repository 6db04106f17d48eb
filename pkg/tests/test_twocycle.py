"""
Test spokes with two cycles at B': unique representations, the gap set and
the unrolled construction of H.
Run: python -m pytest tests/test_twocycle.py -v
   or: python tests/test_twocycle.py
"""
import pytest
from hypothesis import given
from hypothesis import strategies as st
from pydantic import ValidationError

from codes.catalog import get_instance
from codes.factor import has_graph_diamond, image_gap_set
from codes.twocycle import (
    TwoCycleGraph,
    certify_two_cycle,
    construct_H_two_cycle,
    realize_two_cycle,
    two_cycle_gap_set,
    two_cycle_unique_rep,
)
from oracle.brute import language_equal_upto
from shifts.gapshift import GapShift

TWO_CYCLE = TwoCycleGraph(m=3, d1=4, d2=3)


def test_both_loops_rejected():
    """C1 and C2 cannot both be loops."""
    with pytest.raises(ValidationError):
        TwoCycleGraph(m=1, d1=1, d2=1)


def test_u():
    """u = lcm(d1, d2) / d2."""
    assert TWO_CYCLE.u == 4
    assert TWO_CYCLE.swapped().u == 3
    assert TwoCycleGraph(m=1, d1=2, d2=4).u == 1


def test_unique_rep_examples():
    """10 = 1*4 + 2*3; 5 has no representation; 0 = 0*4 + 0*3."""
    g = TwoCycleGraph(m=1, d1=4, d2=3)
    assert two_cycle_unique_rep(10, g) == (1, 2)
    assert two_cycle_unique_rep(5, g) is None
    assert two_cycle_unique_rep(0, g) == (0, 0)
    assert two_cycle_unique_rep(-1, g) is None


@given(st.integers(1, 12), st.integers(1, 12), st.integers(0, 200))
def test_unique_rep_matches_brute_force(d1, d2, n):
    """The representation exists iff n is in the semigroup, and y is the only one below u."""
    if d1 == 1 and d2 == 1:
        return
    g = TwoCycleGraph(m=1, d1=d1, d2=d2)
    reps = [(x, y) for y in range(n // d2 + 1) for x in [(n - y * d2) // d1] if x * d1 + y * d2 == n]
    rep = two_cycle_unique_rep(n, g)
    if not reps:
        assert rep is None
        return
    assert rep is not None
    x, y = rep
    assert x * d1 + y * d2 == n and 0 <= y < g.u
    assert sum(1 for _, yy in reps if yy < g.u) == 1


def test_gap_set_two_cycle():
    """S = 3 + <3, 4> = {3, 6, 7} ∪ {n ≥ 9}."""
    s = two_cycle_gap_set(TWO_CYCLE)
    assert s.upto(12) == [3, 6, 7, 9, 10, 11, 12], s.upto(12)


def test_gap_set_matches_realized_graph():
    """The closed form agrees with first returns in the realized graph."""
    for g in [TWO_CYCLE, TwoCycleGraph(m=2, d1=2, d2=4), TwoCycleGraph(m=1, d1=1, d2=3)]:
        assert image_gap_set(realize_two_cycle(g)) == two_cycle_gap_set(g), g


def test_realized_graph_has_a_diamond():
    """C1^3 and C2^4 are equal-length loops at B'."""
    assert has_graph_diamond(realize_two_cycle(TWO_CYCLE))


def test_construct_two_cycle():
    """beta runs gamma+ and three unrolled copies of C2."""
    result = construct_H_two_cycle(get_instance("two-cycle").two_cycle)
    assert result.u == 4
    assert len(result.beta) - 1 == 2 + 9
    names = [result.h.graph.name(v) for v in result.beta]
    assert names[0] == "B" and names[-1] == "B'"
    assert names[1] == "g'1" and names[2] == "f(1)1"


def test_certificates_two_cycle():
    """H is finite-to-one, psi is an injective graph map, and each gap has one preimage."""
    certs = certify_two_cycle(construct_H_two_cycle(TWO_CYCLE))
    assert certs.passed, certs
    assert certs.max_preimages == 1


def test_alternate_construction():
    """Unrolling C1 instead of C2 also works."""
    result = construct_H_two_cycle(TWO_CYCLE, alternate=True)
    assert result.u == 3 and result.alternate
    assert certify_two_cycle(result).passed


def test_divisible_cycles_need_no_beta():
    """When d1 divides d2, u = 1 and H is G without C2."""
    result = construct_H_two_cycle(TwoCycleGraph(m=1, d1=2, d2=2))
    assert result.u == 1 and result.beta is None
    assert len(result.h.graph.vertices) == 3
    assert certify_two_cycle(result).passed


def test_h_language_two_cycle():
    """H presents exactly the words of Y."""
    result = construct_H_two_cycle(TWO_CYCLE)
    y = GapShift(gaps=two_cycle_gap_set(TWO_CYCLE))
    comparison = language_equal_upto(result.h, y, 30)
    assert comparison.equal, f"diverges at {comparison.divergent}"


@pytest.mark.slow
def test_small_two_cycle_sweep():
    """Every small two-cycle spoke certifies in both orientations."""
    for m in range(1, 5):
        for d1 in range(1, 6):
            for d2 in range(1, 6):
                if d1 == 1 and d2 == 1:
                    continue
                g = TwoCycleGraph(m=m, d1=d1, d2=d2)
                for alternate in (False, True):
                    certs = certify_two_cycle(construct_H_two_cycle(g, alternate=alternate))
                    assert certs.passed, (g, alternate, certs)


if __name__ == "__main__":
    import subprocess
    subprocess.run(["python", "-m", "pytest", __file__, "-v"])
