"""
Test one-to-one restrictions: the P1 decision, the eta construction and the
full-shift comparison of X_F against its complement.
Run: python -m pytest tests/test_conjugacy.py -v
   or: python tests/test_conjugacy.py
"""
from itertools import product

import pytest

from codes.catalog import get_instance
from codes.conjugacy import apply_eta, check_p1, full_shift_p1
from codes.factor import UnambiguousCode, image_gap_set, recode_to_marked
from codes.spoke import HUB, SpokeGraph, realize_graph
from oracle.brute import language_equal_upto, restriction_injective_upto
from shifts.errors import NotGapShiftError
from shifts.gapshift import GapShift
from shifts.graph import ForbiddenSft, label_injective
from shifts.periodic import EventuallyPeriodicSet


def spoke_code(*regular):
    mg = realize_graph(SpokeGraph.of(regular=list(regular)))
    return UnambiguousCode.on_graph(mg.graph, (mg.graph.name(HUB),))


def test_no_111_holds_via_fixed_point():
    """{111} with marker 1010 has the unmarked fixed point 0^inf."""
    verdict = check_p1(get_instance("no-111").code)
    assert verdict.holds and verdict.witness == "C2", verdict.witness
    g = verdict.domain_graph.graph
    assert g.name(verdict.vertex_a) == "0000"


def test_no_111_z_is_one_to_one_onto_y():
    """Z is labeled injectively and has the language of Y."""
    verdict = check_p1(get_instance("no-111").code)
    z = verdict.z_graph
    assert label_injective(z.graph)
    assert image_gap_set(z) == verdict.gaps
    result = language_equal_upto(z, GapShift(gaps=verdict.gaps), 24)
    assert result.equal, f"diverges at {result.divergent}"
    assert restriction_injective_upto(z, L=20)


def test_no_111_eta_blocks():
    """eta sends 101 to the first-return cycle of length 2."""
    verdict = check_p1(get_instance("no-111").code)
    g = verdict.domain_graph.graph
    path = apply_eta(verdict, "101")
    assert g.word(path) == "101"
    assert [g.name(v) for v in path] == ["1010", "0101", "1010"]
    long_path = apply_eta(verdict, "1" + "0" * 9 + "1")
    assert g.word(long_path) == "1" + "0" * 9 + "1"


def test_eta_rejects_gaps_outside_s():
    """Gap 2 is not written by the code."""
    verdict = check_p1(get_instance("no-111").code)
    with pytest.raises(ValueError):
        apply_eta(verdict, "1001")
    with pytest.raises(ValueError):
        apply_eta(verdict, "0101")


def test_finite_gap_set_holds_via_c1():
    """A single spoke cycle with no zero fixed point writes finitely many gaps."""
    code = UnambiguousCode.on_graph(
        realize_graph(SpokeGraph.of(degenerate=[3, 5])).graph, ("B",)
    )
    verdict = check_p1(code)
    assert verdict.holds and verdict.witness == "C1"
    assert verdict.gaps == EventuallyPeriodicSet.finite({2, 4})
    assert label_injective(verdict.z_graph.graph)
    assert image_gap_set(verdict.z_graph) == verdict.gaps


def test_spoke_graph_with_cycles_fails():
    """Regular spokes with d >= 2 have infinite S and no unmarked fixed point."""
    verdict = check_p1(spoke_code((1, 2)))
    assert not verdict.holds
    assert verdict.z_graph is None


def test_loop_at_a_spoke_tip_holds():
    """A d = 1 spoke puts a fixed point at B'."""
    verdict = check_p1(spoke_code((2, 1), (1, 3)))
    assert verdict.holds and verdict.witness == "C2"
    assert verdict.domain_graph.graph.name(verdict.vertex_a) == "B'1"
    assert label_injective(verdict.z_graph.graph)


NO_111 = ForbiddenSft(forbidden=frozenset({"111"}))
NO_000 = ForbiddenSft(forbidden=frozenset({"000"}))


@pytest.mark.parametrize("sft, marker", [(NO_111, "0"), (NO_000, "1")])
def test_marker_shorter_than_memory_holds_via_c1(sft, marker):
    """A one-symbol marker on a 2-step domain is read off two blocks and still gets a Z."""
    verdict = check_p1(UnambiguousCode.on_sft(sft, marker))
    assert verdict.holds and verdict.witness == "C1", verdict.witness
    assert verdict.gaps == EventuallyPeriodicSet.finite({0, 1, 2}), verdict.gaps.describe()
    assert len(verdict.eta_spec.hubs) == 2
    z = verdict.z_graph
    assert label_injective(z.graph)
    assert image_gap_set(z) == verdict.gaps
    result = language_equal_upto(z, GapShift(gaps=verdict.gaps), 16)
    assert result.equal, f"diverges at {result.divergent}"
    assert restriction_injective_upto(z, L=16)


def test_two_hub_eta_ends_where_the_next_gap_leaves():
    """The block written for a gap ends at the hub the following gap departs from."""
    verdict = check_p1(UnambiguousCode.on_sft(NO_111, "0"))
    mg = verdict.domain_graph
    g = mg.graph
    assert {s: g.name(h) for s, h in verdict.eta_spec.departures.items()} == {
        0: "00", 1: "01", 2: "01"
    }
    path = apply_eta(verdict, "1001", next_gap=0)
    assert [g.name(v) for v in path] == ["01", "11", "10", "00"]
    assert "".join("1" if v in mg.marked else "0" for v in path) == "1001"
    path = apply_eta(verdict, "1001", next_gap=1)
    assert [g.name(v) for v in path] == ["01", "11", "10", "01"]
    with pytest.raises(ValueError):
        apply_eta(verdict, "1001")


@pytest.mark.parametrize("sft, marker", [(NO_111, "1"), (NO_000, "0")])
def test_marker_shorter_than_memory_without_a_gap_shift_image(sft, marker):
    """The image is X_{111} or its flip, where gap 0 cannot follow gap 0."""
    with pytest.raises(NotGapShiftError) as info:
        check_p1(UnambiguousCode.on_sft(sft, marker))
    assert info.value.gaps == (0, 0)


@pytest.mark.parametrize("marker", ["00", "01", "10", "11"])
def test_marker_as_long_as_memory_uses_one_hub(marker):
    """Two-symbol markers on {111} are single blocks."""
    verdict = check_p1(UnambiguousCode.on_sft(NO_111, marker))
    if verdict.holds:
        assert len(verdict.eta_spec.hubs) == 1
        assert label_injective(verdict.z_graph.graph)
        assert image_gap_set(verdict.z_graph) == verdict.gaps


def test_full_shift_0000_only_x_f_works():
    """For D = 0000, X_F maps onto Y and X_Fbar does not."""
    result = full_shift_p1("0000")
    assert result.condition1
    assert result.onto_F and not result.onto_complementF
    assert result.which == "F"
    assert result.forbidden == ["101", "1001", "10001"], result.forbidden
    assert result.complement_forbidden == ["010", "0110", "01110"]
    assert result.divergence_F is None
    div = result.divergence_complementF
    assert div.word == "100001" and div.found_in == "Y", div


def test_full_shift_0000_complement_diverges_at_100001():
    """The image of X_Fbar misses the word 100001 of Y."""
    result = full_shift_p1("0000")
    complement = ForbiddenSft(forbidden=frozenset(result.complement_forbidden))
    image = recode_to_marked(UnambiguousCode.on_sft(complement, "0000"))
    comparison = language_equal_upto(image, GapShift(gaps=result.gaps), 10)
    assert not comparison.equal
    assert comparison.divergent == "100001" and comparison.found_in == "b", comparison


def test_full_shift_0110_neither_restriction():
    """D = 0110 has two of each symbol; neither X_F nor X_Fbar maps onto Y."""
    result = full_shift_p1("0110")
    assert not result.condition1
    assert result.which == "neither"
    assert not result.onto_F and not result.onto_complementF


def test_full_shift_010_condition():
    """D = 010 has a single 1."""
    result = full_shift_p1("010")
    assert result.condition1
    assert result.onto_F or result.onto_complementF


@pytest.mark.slow
def test_full_shift_condition_matches_construction():
    """For every marker of length <= 6, one symbol occurring at most once decides P1 via X_F or X_Fbar."""
    for k in range(1, 7):
        for bits in product("01", repeat=k):
            d = "".join(bits)
            result = full_shift_p1(d)
            assert result.condition1 == (result.onto_F or result.onto_complementF), (
                f"D={d}: condition {result.condition1}, F {result.onto_F}, Fbar {result.onto_complementF}"
            )


if __name__ == "__main__":
    import subprocess
    subprocess.run(["python", "-m", "pytest", __file__, "-v"])
