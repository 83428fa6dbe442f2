from itertools import product

import pytest

from mwistruct.cliquesep import has_clique_cutset_exhaustive
from mwistruct.graph import build_graph, complement, disjoint_union
from mwistruct.lab.exhaustive import dart_free_odd_antihole_search, extensions
from mwistruct.lab.generators import (
    GenerationFailed,
    PlantRecipe,
    antihole,
    gen_in_class,
    gen_random,
    glue_blocks,
    hole,
    modular_blowup,
    plant,
)
from mwistruct.lab.lemmas import (
    check_antihole_alternation,
    check_bull_growth,
    check_nearly,
    check_prop1,
    growth_sequence,
)
from mwistruct.lab.suites import SUITES, config_for, load_config, run_suite
from mwistruct.modular import is_module
from mwistruct.patterns import in_class, is_weakly_chordal

DART = build_graph(5, [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3), (3, 4)])


# -- generators ------------------------------------------------------------------


def test_dense_random_graph_is_complete():
    for seed in range(5):
        assert gen_random(5, 1.0, seed).m == 10


@pytest.mark.parametrize("method", ["grow", "rejection"])
def test_in_class_generation_is_audited_and_seeded(method):
    for seed in range(10):
        g = gen_in_class("dart-free", 10, 0.3, seed, method=method)
        assert in_class(g, "dart-free") and g.n == 10
        assert g == gen_in_class("dart-free", 10, 0.3, seed, method=method)


def test_generation_failure_is_reported():
    with pytest.raises(GenerationFailed):
        gen_in_class("P3-free", 6, 0.9, 0, max_tries=3, method="rejection")


def test_planted_cocycle6_is_not_an_atom():
    recipe = PlantRecipe("co-C6", "hole-dart-free", contacts=1, anchors=1, extras=2)
    for seed in range(10):
        g = plant(recipe, seed)
        assert in_class(g, "hole-dart-free")
        assert has_clique_cutset_exhaustive(g) is not None
        assert g == plant(recipe, seed)


def test_large_instances_stay_in_class():
    g = glue_blocks("hole-dart-free", 60, 1)
    assert g.n == 60 and in_class(g, "hole-dart-free")
    h = modular_blowup("hole-bull-free", 60, 1)
    assert h.n == 60 and in_class(h, "hole-bull-free")


# -- lemma checks -----------------------------------------------------------------


def test_prop1_skips_dart_with_witness():
    rep = check_prop1(DART, [0, 1, 2])
    assert rep.checked == 0 and rep.skipped == 1
    assert rep.skips[0]["witness"]["kind"] == "dart"


def test_prop1_vacuous_without_p3():
    g = hole(6)
    rep = check_prop1(g, [0])
    assert rep.passed and rep.checked == 1


def test_alternation_on_planted_cocycle8():
    recipe = PlantRecipe("co-C8", "dart-free", contacts=2, anchors=1, extras=1)
    for seed in range(5):
        g = plant(recipe, seed)
        rep = check_antihole_alternation(g, range(8))
        assert rep.passed and rep.checked == 1 and rep.notes["contacts"] >= 1


def test_alternation_vacuous_without_contacts():
    rep = check_antihole_alternation(antihole(8), range(8))
    assert rep.passed and rep.notes.get("vacuous") == 1


def test_isolated_vertex_with_cocycle7():
    # K1 + co-C7: dart-free, A(v) contains co-C7, but there are no contacts
    g = disjoint_union(antihole(7), build_graph(1, []))
    assert in_class(g, "dart-free")
    assert check_antihole_alternation(g, range(7)).notes.get("vacuous") == 1


def test_nearly_with_universal_vertex():
    g = complement(build_graph(4, []))
    assert check_nearly(g, is_weakly_chordal) is None
    star = build_graph(5, [(0, i) for i in range(1, 5)])
    assert check_nearly(star, is_weakly_chordal) is None


def test_nearly_reports_least_vertex():
    g = disjoint_union(hole(5), build_graph(1, []))
    v, w = check_nearly(g, is_weakly_chordal)
    assert v == 5 and w.audit(g)


def test_growth_ends_in_module():
    recipe = PlantRecipe("co-C6", "bull-free", contacts=1, anchors=1, extras=2)
    for seed in range(10):
        g = plant(recipe, seed)
        rep = check_bull_growth(g, range(6))
        assert rep.passed, rep.violations
        seq = growth_sequence(g, range(6))
        assert is_module(g, [v for v in range(g.n) if seq.final >> v & 1])[0]


def test_growth_vacuous_when_h0_dominates():
    g = antihole(6)
    rep = check_bull_growth(g, range(6))
    assert rep.passed and rep.notes.get("stages_with_contacts", 0) == 0


# -- exhaustive enumeration -----------------------------------------------------------


def _relabel(g, perm):
    """Graph with vertex ``v`` renamed ``perm[v]``."""
    return build_graph(g.n, [(perm[u], perm[v]) for u, v in g.edges()])


def test_extensions_count_matches_orbits():
    core = build_graph(3, [(0, 1), (1, 2)])
    got = list(extensions(core, 2))
    # 1 core + 8 single extras + (8*8*2 + 8*2)/2 unordered pairs
    assert len(got) == 1 + 8 + 72
    assert len({g.adj for g in got}) == len(got)


def test_extensions_cover_every_labelled_graph():
    core = build_graph(2, [(0, 1)])
    got = {g.adj for g in extensions(core, 2)}
    for c1, c2, inner in product(range(4), range(4), range(2)):
        edges = [(0, 1)] + [(i, 2) for i in range(2) if c1 >> i & 1] + [(i, 3) for i in range(2) if c2 >> i & 1]
        g = build_graph(4, edges + ([(2, 3)] if inner else []))
        assert g.adj in got or _relabel(g, [0, 1, 3, 2]).adj in got


def test_small_dart_search_has_no_connected_hit():
    every, connected = dart_free_odd_antihole_search(k=7, max_n=9)
    assert every.examined > 0 and connected.hits == 0


# -- suites ----------------------------------------------------------------------


@pytest.mark.parametrize("name", [s for s in SUITES if SUITES[s].run_one])
def test_sampled_suites_pass_small(name):
    rep = run_suite(name, config_for(name, size=8, seed=7))
    assert rep.passed, rep.violations


def test_suite_results_ignore_thread_count():
    one = run_suite("bull-growth", config_for("bull-growth", size=12, threads=1)).to_dict()
    four = run_suite("bull-growth", config_for("bull-growth", size=12, threads=4)).to_dict()
    assert one == four


def test_load_config(tmp_path):
    path = tmp_path / "suites.ini"
    path.write_text("[bull-growth]\nsize = 20\nseed = 3\np = 0.3, 0.6\n")
    cfg = load_config(str(path))["bull-growth"]
    assert (cfg.size, cfg.seed, cfg.p) == (20, 3, (0.3, 0.6))
    path.write_text("[bull-growth]\ncolour = red\n")
    with pytest.raises(ValueError):
        load_config(str(path))
