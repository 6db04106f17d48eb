"""
Test the brute-force oracles and check the exact algorithms against them.
Run: python -m pytest tests/test_oracle.py -v
   or: python tests/test_oracle.py
"""
import math
import random

import pytest

from codes.catalog import get_instance
from codes.factor import MarkedGraph, image_gap_set, recode_to_marked
from codes.spoke import SpokeGraph, realize_graph, spoke_invariants
from oracle.brute import (
    OracleBudget,
    count_blocks,
    entropy_estimate,
    language_equal_upto,
    point_diamond_search,
    restriction_injective_upto,
)
from shifts.errors import BudgetExceededError
from shifts.gapshift import GapShift, standard_forbidden_set, topological_entropy
from shifts.graph import ForbiddenSft, enumerate_blocks, to_vertex_shift
from shifts.periodic import EventuallyPeriodicSet

GOLDEN_RATIO = (1 + math.sqrt(5)) / 2


def test_language_of_a_graph_equals_itself():
    """A graph has its own language."""
    g = to_vertex_shift(ForbiddenSft(forbidden=frozenset({"11"})))
    result = language_equal_upto(g, g, 10)
    assert result.equal and result.checked_upto == 10


def test_language_of_golden_mean_graph_is_its_gap_shift():
    """The no-11 vertex shift and X({n ≥ 1}) agree."""
    mg = recode_to_marked(get_instance("golden-mean").code)
    y = GapShift(gaps=image_gap_set(mg))
    assert language_equal_upto(mg, y, 16).equal


def test_divergent_word_is_shortest():
    """Odd gaps against all gaps first differ at 1001."""
    single_spoke = recode_to_marked(get_instance("single-spoke").code)
    y = GapShift(gaps=image_gap_set(recode_to_marked(get_instance("golden-mean").code)))
    result = language_equal_upto(single_spoke, y, 10)
    assert not result.equal
    assert result.divergent == "1001" and result.found_in == "b", result


def test_gap_set_from_words():
    """s is a gap of the image iff 1 0^s 1 is an image word."""
    mg = recode_to_marked(get_instance("no-111").code)
    gaps = image_gap_set(mg)
    for s in range(12):
        word = "1" + "0" * s + "1"
        assert (word in enumerate_blocks(mg.graph, s + 2)) == (s in gaps), s


def test_no_diamond_in_single_spoke():
    """B <-> V1 <-> V2 has no point diamond."""
    assert point_diamond_search(recode_to_marked(get_instance("single-spoke").code), 20) is None


def test_diamond_between_identical_spokes():
    """Two copies of a spoke give a diamond over 101."""
    mg = realize_graph(SpokeGraph.of(regular=[(1, 2), (1, 2)]))
    witness = point_diamond_search(mg, 10)
    assert witness is not None
    assert witness.first != witness.second
    assert witness.first[0] == witness.second[0] and witness.first[-1] == witness.second[-1]
    assert mg.graph.word(witness.first) == mg.graph.word(witness.second) == witness.word
    assert len(witness.first) - 1 == 2, witness


def test_no_diamond_on_a_single_cycle():
    """A lone cycle has one path per word."""
    mg = realize_graph(SpokeGraph.of(degenerate=[4]))
    assert point_diamond_search(mg, 20) is None


def test_count_blocks_golden_mean():
    """Block counts are Fibonacci numbers."""
    g = to_vertex_shift(ForbiddenSft(forbidden=frozenset({"11"})))
    assert [count_blocks(g, m) for m in range(1, 7)] == [2, 3, 5, 8, 13, 21]


def test_count_blocks_single_cycle():
    """A cycle of length 5 has five words of each length >= 5."""
    mg = realize_graph(SpokeGraph.of(degenerate=[5]))
    assert count_blocks(mg, 12) == 5


def test_entropy_estimate_golden_mean():
    """log|B_24| / 24 is within 0.01 of log φ."""
    g = to_vertex_shift(ForbiddenSft(forbidden=frozenset({"11"})))
    estimate = entropy_estimate(g, 24)
    assert math.log(GOLDEN_RATIO) <= estimate < math.log(GOLDEN_RATIO) + 0.01, estimate


def test_entropy_estimate_full_shift():
    """Every word of the full shift occurs."""
    g = to_vertex_shift(ForbiddenSft())
    assert entropy_estimate(g, 10) == pytest.approx(math.log(2))


@pytest.mark.parametrize("name", ["three-spokes", "four-spokes", "no-cover"])
def test_entropy_estimates_bound_the_exact_value(name):
    """h <= est(24) <= est(12) for the realized spoke graphs."""
    sg = get_instance(name).spokes
    mg = realize_graph(sg)
    h = topological_entropy(GapShift(gaps=spoke_invariants(sg).S))
    e12, e24 = entropy_estimate(mg, 12), entropy_estimate(mg, 24)
    assert h - 1e-9 <= e24 <= e12 + 1e-12, (h, e24, e12)


def test_entropy_estimates_bound_random_gap_sets():
    """h <= est(24) <= est(12) on twenty random spoke realizations."""
    rng = random.Random(2026)
    for _ in range(20):
        regular = [(rng.randint(2, 6), rng.randint(1, 5)) for _ in range(rng.randint(1, 3))]
        degenerate = [rng.randint(3, 7)] if rng.random() < 0.5 else []
        sg = SpokeGraph.of(regular=regular, degenerate=degenerate)
        h = topological_entropy(GapShift(gaps=spoke_invariants(sg).S))
        mg = realize_graph(sg)
        e12, e24 = entropy_estimate(mg, 12), entropy_estimate(mg, 24)
        assert h - 1e-9 <= e24 <= e12 + 1e-12, (regular, degenerate, h, e24, e12)


def test_entropy_window_is_loose_for_long_gaps():
    """For S = {n >= 8} the 24-block estimate is still more than 0.01 above h."""
    y = GapShift(gaps=EventuallyPeriodicSet.naturals(8))
    g = to_vertex_shift(standard_forbidden_set(y))
    h, e24 = topological_entropy(y), entropy_estimate(g, 24)
    assert count_blocks(g, 24) == 201
    assert h + 0.01 < e24, (h, e24)


def test_restriction_injective():
    """A lone cycle is injective at the centre; two identical spokes are not."""
    assert restriction_injective_upto(realize_graph(SpokeGraph.of(degenerate=[4])))
    twins = realize_graph(SpokeGraph.of(regular=[(1, 2), (1, 2)]))
    assert not restriction_injective_upto(twins, L=20)


def test_restriction_to_a_subgraph():
    """Keeping one of two identical spokes restores injectivity."""
    twins = realize_graph(SpokeGraph.of(regular=[(1, 2), (1, 2)]))
    keep = [twins.graph.vertex_by_name(n) for n in ["B", "B'1", "c1.1"]]
    assert restriction_injective_upto(twins, sub=keep, L=20)


def test_budget_is_enforced():
    """Requests beyond the budget are refused, not truncated."""
    g = to_vertex_shift(ForbiddenSft())
    with pytest.raises(BudgetExceededError):
        language_equal_upto(g, g, 31)
    with pytest.raises(BudgetExceededError):
        count_blocks(g, 12, OracleBudget(max_block_len=10))
    with pytest.raises(BudgetExceededError):
        point_diamond_search(g, 61)
    with pytest.raises(BudgetExceededError):
        language_equal_upto(g, g, 20, OracleBudget(max_states=1000))


def test_empty_graph_has_no_entropy_estimate():
    """The empty shift has no words."""
    g = MarkedGraph.build({0: "B", 1: "x"}, {(0, 1)}, marked={0})
    assert count_blocks(g, 3) == 0
    with pytest.raises(ValueError):
        entropy_estimate(g, 3)


if __name__ == "__main__":
    import subprocess
    subprocess.run(["python", "-m", "pytest", __file__, "-v"])
