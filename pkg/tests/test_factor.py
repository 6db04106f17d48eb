"""
Test factor codes with an unambiguous symbol: recoding, image gap sets,
graph diamonds and degree.
Run: python -m pytest tests/test_factor.py -v
   or: python tests/test_factor.py
"""
import pytest

from codes.catalog import get_instance
from codes.factor import (
    MarkedGraph,
    UnambiguousCode,
    coordinate_vertex_sets,
    degree,
    full_shift_image_facts,
    gap_moves,
    has_graph_diamond,
    image_gap_set,
    image_of,
    preimage_count,
    recode_to_marked,
    unreadable_gaps,
)
from codes.spoke import SpokeGraph, realize_graph
from shifts.errors import (
    MarkerNotAllowedError,
    NotFiniteToOneError,
    NotGapShiftError,
    NotIrreducibleError,
)
from shifts.graph import ForbiddenSft, LabeledGraph
from shifts.periodic import EventuallyPeriodicSet


def single_spoke() -> MarkedGraph:
    return recode_to_marked(get_instance("single-spoke").code)


def test_golden_mean_maps_onto_itself():
    """Marker 1 on the golden mean shift is the identity code."""
    code = UnambiguousCode.on_sft(ForbiddenSft(forbidden=frozenset({"11"})), "1")
    assert image_gap_set(recode_to_marked(code)) == EventuallyPeriodicSet.naturals(1)


def test_image_gap_set_no_111():
    """{111} with marker 1010 writes gaps {1} ∪ {n ≥ 4}."""
    gaps = image_gap_set(recode_to_marked(get_instance("no-111").code))
    assert gaps == EventuallyPeriodicSet.eventual(4, {1}, 1, {0}), gaps.describe()


def test_image_gap_set_full_shift_0000():
    """The full shift with marker 0000 writes gaps {0} ∪ {n ≥ 4}."""
    gaps = image_of(UnambiguousCode.on_full_shift("0000")).gaps
    assert gaps == EventuallyPeriodicSet.eventual(4, {0}, 1, {0}), gaps.describe()


def test_recoded_marker_is_one_vertex():
    """Recoding reads the marker off the single block that starts with it."""
    mg = recode_to_marked(get_instance("no-111").code)
    assert [mg.graph.name(v) for v in mg.marked] == ["1010"]


def test_short_marker_is_read_off_several_blocks():
    """Marker 0 on {111} marks the 2-blocks 00 and 01, which leave on different gaps."""
    code = UnambiguousCode.on_sft(ForbiddenSft(forbidden=frozenset({"111"})), "0")
    mg = recode_to_marked(code)
    g = mg.graph
    assert sorted(g.name(v) for v in mg.marked) == ["00", "01"]
    moves = {(g.name(u), g.name(v)): m for (u, v), m in gap_moves(mg).items()}
    assert moves[("00", "00")] == EventuallyPeriodicSet.finite({0})
    assert moves[("01", "00")] == EventuallyPeriodicSet.finite({1, 2})
    gaps = image_gap_set(mg)
    assert gaps == EventuallyPeriodicSet.finite({0, 1, 2})
    assert unreadable_gaps(mg, gaps) is None


def test_short_marker_with_blocked_gaps():
    """Marker 1 on {111}: two gaps 0 in a row would write 111."""
    code = UnambiguousCode.on_sft(ForbiddenSft(forbidden=frozenset({"111"})), "1")
    mg = recode_to_marked(code)
    gaps = EventuallyPeriodicSet.naturals()
    assert unreadable_gaps(mg, gaps) == (0, 0)
    with pytest.raises(NotGapShiftError):
        image_gap_set(mg)


def test_marker_not_allowed():
    """A marker that never occurs is an error."""
    code = UnambiguousCode.on_sft(ForbiddenSft(forbidden=frozenset({"11"})), "11")
    with pytest.raises(MarkerNotAllowedError):
        recode_to_marked(code)


def test_marker_outside_alphabet():
    """Marker symbols come from the domain alphabet."""
    with pytest.raises(ValueError):
        UnambiguousCode.on_full_shift("012")


def test_reducible_domain():
    """A graph domain with two separate loops is rejected."""
    g = LabeledGraph.build(labels={0: "a", 1: "b"}, edges={(0, 0), (1, 1)}, names={0: "a", 1: "b"})
    with pytest.raises(NotIrreducibleError):
        recode_to_marked(UnambiguousCode.on_graph(g, ("a",)))


def test_graph_domain_with_longer_marker():
    """A two-vertex marker on a graph domain recodes through its 2-block graph."""
    code = UnambiguousCode.on_graph(get_instance("single-spoke").code.domain, ("B", "V1"))
    assert image_gap_set(recode_to_marked(code)) == EventuallyPeriodicSet.arithmetic(1, 2)


def test_single_spoke_has_no_diamond_and_degree_one():
    """B <-> V1 <-> V2 is finite-to-one of degree 1 with magic word 1."""
    mg = single_spoke()
    assert not has_graph_diamond(mg)
    result = degree(mg)
    assert result.degree == 1, result
    assert result.magic_word == "1", result


def test_single_spoke_odd_gaps():
    """Only odd gaps are written."""
    assert image_gap_set(single_spoke()) == EventuallyPeriodicSet.arithmetic(1, 2)


def test_preimage_counts():
    """Words 101 and 10001 have one preimage; 1001 has none."""
    mg = single_spoke()
    assert preimage_count(mg, "101") == 1
    assert preimage_count(mg, "10001") == 1
    assert preimage_count(mg, "1001") == 0


def test_coordinate_vertex_sets():
    """Each coordinate of 101 is pinned to one vertex."""
    mg = single_spoke()
    g = mg.graph
    sets = coordinate_vertex_sets(mg, "101")
    assert sets == [{g.vertex_by_name("B")}, {g.vertex_by_name("V1")}, {g.vertex_by_name("B")}]


def test_two_identical_spokes_have_a_diamond():
    """Two copies of the same spoke give a graph diamond and no degree."""
    mg = realize_graph(SpokeGraph.of(regular=[(1, 2), (1, 2)]))
    assert has_graph_diamond(mg)
    with pytest.raises(NotFiniteToOneError):
        degree(mg)


def test_full_shift_image_facts():
    """0000 is a power of 0; 0001 is primitive."""
    periodic = full_shift_image_facts("0000")
    assert periodic.purely_periodic and periodic.root == "0"
    assert not periodic.k_minus_1_allowed
    primitive = full_shift_image_facts("0001")
    assert not primitive.purely_periodic and primitive.root is None
    assert primitive.tail_onset == 4


if __name__ == "__main__":
    import subprocess
    subprocess.run(["python", "-m", "pytest", __file__, "-v"])
