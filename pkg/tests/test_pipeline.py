import pytest
from hypothesis import assume, given, settings

from conftest import weighted_graphs
from oracles import mwis_value
from mwistruct.graph import WeightedGraph, build_graph, complement
from mwistruct.lab.generators import gen_weighted, hole
from mwistruct.patterns import PIPELINE_CLASSES, in_class
from mwistruct.pipeline import (
    AUTO_ORDER,
    ClassViolation,
    nearly_reduce,
    select_class,
    solve,
)
from mwistruct.solvers import mwis_bipartite, mwis_oracle

DART = build_graph(5, [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3), (3, 4)])

# MWIS of gen_weighted(spec, 14, 0.5, seed), computed by networkx max-weight clique
FROZEN = {
    ("odd-hole-dart-free", 1): 254,
    ("odd-hole-dart-free", 2): 181,
    ("odd-hole-dart-free", 3): 564,
    ("hole-dart-free", 1): 254,
    ("hole-dart-free", 2): 224,
    ("hole-dart-free", 3): 494,
    ("odd-hole-bull-free", 1): 187,
    ("odd-hole-bull-free", 2): 160,
    ("odd-hole-bull-free", 3): 314,
    ("hole-bull-free", 1): 187,
    ("hole-bull-free", 2): 160,
    ("hole-bull-free", 3): 314,
    ("p5-bull-free", 1): 192,
    ("p5-bull-free", 2): 179,
    ("p5-bull-free", 3): 217,
}


def test_nearly_reduce_examples():
    assert nearly_reduce(WeightedGraph.unit(hole(5)), mwis_oracle).value == 2
    assert nearly_reduce(WeightedGraph(build_graph(1, []), (7,)), mwis_oracle).value == 7


@given(weighted_graphs(min_n=1, max_n=9))
def test_nearly_reduce_with_exact_base(wg):
    assert nearly_reduce(wg, mwis_oracle).value == mwis_oracle(wg).value


@pytest.mark.parametrize("spec, seed", sorted(FROZEN))
def test_frozen_instances(spec, seed):
    wg = gen_weighted(spec, 14, 0.5, seed)
    rep = solve(wg, spec)
    assert rep.solution.value == FROZEN[spec, seed]
    assert rep.solution.audit(wg)
    assert rep.fallback_count == 0


@pytest.mark.parametrize("spec", PIPELINE_CLASSES)
def test_clique_gives_max_weight(spec):
    wg = WeightedGraph(complement(build_graph(6, [])), (4, 8, 1, 8, 3, 2))
    assert solve(wg, spec).solution.value == 8


def test_chordal_bipartite_input_needs_no_fallback():
    g = build_graph(6, [(0, 3), (0, 4), (1, 4), (1, 5), (2, 5), (2, 3), (0, 5)])
    wg = WeightedGraph(g, (5, 1, 4, 2, 6, 3))
    rep = solve(wg, "hole-dart-free")
    assert rep.solution.value == mwis_bipartite(wg).value
    assert rep.fallback_count == 0


def test_class_violation_carries_witness():
    with pytest.raises(ClassViolation) as err:
        solve(WeightedGraph.unit(DART), "hole-dart-free")
    w = err.value.witness
    assert w.kind == "dart" and w.audit(DART)


def test_auto_prefers_most_structured_class():
    assert AUTO_ORDER[0] == "p5-bull-free"
    assert select_class(hole(5)) == "p5-bull-free"
    assert solve(WeightedGraph.unit(hole(5))).class_used == "p5-bull-free"
    # C6 has P5 and a hole but no odd hole, dart or bull
    assert select_class(hole(6)) == "odd-hole-dart-free"
    with pytest.raises(ClassViolation):
        select_class(hole(7))


def test_auto_without_class_raises():
    # a dart and a bull sharing nothing, plus a C5 hole: no pipeline class applies
    g = build_graph(
        15,
        [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3), (3, 4)]
        + [(5, 6), (6, 7), (7, 8), (6, 9), (7, 9)]
        + [(10, 11), (11, 12), (12, 13), (13, 14), (10, 14)],
    )
    with pytest.raises(ClassViolation):
        solve(WeightedGraph.unit(g))


def test_negative_weights_are_ignored():
    wg = WeightedGraph(hole(5), (-5, 3, -1, 3, 2))
    rep = solve(wg, "p5-bull-free")
    assert rep.solution.value == 6 and rep.solution.vertices == {1, 3}


@pytest.mark.parametrize("spec", PIPELINE_CLASSES)
@settings(max_examples=40)
@given(wg=weighted_graphs(min_n=1, max_n=10))
def test_pipeline_matches_networkx(spec, wg):
    assume(in_class(wg.graph, spec))
    rep = solve(wg, spec)
    assert rep.solution.value == mwis_value(wg.graph, wg.weights)
    assert rep.solution.audit(wg)


def test_report_fields():
    d = solve(gen_weighted("hole-dart-free", 14, 0.5, 2), "hole-dart-free").to_dict()
    assert set(d) == {
        "value", "set", "class_used", "md_stats", "atom_stats",
        "reduction_stats", "structure_checks", "fallback_count",
    }
    assert all(c["passed"] for c in d["structure_checks"].values())
