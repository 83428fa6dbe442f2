"""Named verification suites: a corpus recipe plus the check run on each instance.

Instance ``i`` of a suite draws everything from ``Random(seed * 1_000_003 + i)``,
so results do not depend on the number of worker threads.
"""

from __future__ import annotations

import configparser
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields, replace
from typing import Callable

from ..cliquesep import decompose, has_clique_cutset_exhaustive
from ..graph import (
    Graph,
    WeightedGraph,
    anti_neighborhood_mask,
    induced_by_mask,
    iter_bits,
    mask_of,
)
from ..modular import audit_tree, is_prime, modular_decomposition
from ..patterns import (
    is_chordal_bipartite,
    is_clique_graph,
    is_perfect_desk,
    is_weakly_chordal,
)
from ..pipeline import solve
from . import exhaustive
from .generators import GenerationFailed, PlantRecipe, gen_in_class, plant, random_weights
from .lemmas import (
    LemmaReport,
    chain_or_cochain,
    check_antihole_alternation,
    check_bull_growth,
    check_cocycle6_contacts,
    check_nearly,
    check_prop1,
    random_chooser,
)

THREADS_ENV = "MWIS_THREADS"


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def ordered_map(fn: Callable, items, threads: int = 1) -> list:
    """``map`` with up to ``threads`` workers; results keep input order."""
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


@dataclass(frozen=True)
class SuiteConfig:
    size: int = 300
    seed: int = 1
    n_min: int = 6
    n_max: int = 16
    p: tuple[float, ...] = (0.2, 0.35, 0.5)
    threads: int = 1

    def rng(self, i: int) -> random.Random:
        return random.Random(self.seed * 1_000_003 + i)

    def describe(self, generator: str) -> dict:
        return {
            "generator": generator,
            "size": self.size,
            "seed": self.seed,
            "n": [self.n_min, self.n_max],
            "p": list(self.p),
        }


@dataclass(frozen=True)
class Suite:
    name: str
    summary: str
    generator: str
    run_one: Callable[[SuiteConfig, int], LemmaReport] | None = None
    run_all: Callable[[SuiteConfig], LemmaReport] | None = None
    defaults: dict = field(default_factory=dict)


def _grown(cfg: SuiteConfig, i: int, spec: str) -> tuple[Graph, random.Random]:
    rng = cfg.rng(i)
    n = rng.randint(cfg.n_min, cfg.n_max)
    g = gen_in_class(spec, n, rng.choice(cfg.p), rng.getrandbits(32))
    return g, rng


def _planted(cfg: SuiteConfig, i: int, structures, spec: str) -> tuple[Graph | None, str, random.Random]:
    rng = cfg.rng(i)
    for _ in range(200):
        structure = rng.choice(structures)
        recipe = PlantRecipe(
            structure,
            spec,
            contacts=rng.randint(1, 2),
            anchors=rng.randint(1, 2),
            extras=rng.randint(0, max(0, cfg.n_max - 13)),
            p=rng.choice(cfg.p),
        )
        try:
            return plant(recipe, rng.getrandbits(32), max_tries=20), structure, rng
        except GenerationFailed:
            continue
    return None, "", rng


# -- per-instance checks -------------------------------------------------------------


def _prop1(cfg, i):
    g, rng = _grown(cfg, i, "dart-free")
    report = LemmaReport("prop1")
    for _ in range(3):
        u = [v for v in range(g.n) if rng.random() < 0.4] or [rng.randrange(g.n)]
        report.merge(check_prop1(g, u))
    return report


def _alternation(cfg, i):
    g, structure, _ = _planted(cfg, i, ["co-C8"], "dart-free")
    if g is None:
        r = LemmaReport("antihole-alternation")
        r.skip("generation failed")
        return r
    return check_antihole_alternation(g, range(8))


COC6_LABELS = (0, 2, 4, 3, 5, 1)  # left, right and matching of co-C6 on 0..5


def _cocycle6(cfg, i):
    g, _, _ = _planted(cfg, i, ["co-C6"], "hole-dart-free")
    report = LemmaReport("co-c6-contacts")
    if g is None:
        report.skip("generation failed")
        return report
    for v in iter_bits(anti_neighborhood_mask(g, mask_of(range(6)))):
        report.merge(check_cocycle6_contacts(g, COC6_LABELS, v))
    return report


def _hole_dart_atoms(cfg, i):
    """Atoms are nearly weakly chordal; prime atoms are nearly a clique or nearly chordal bipartite."""
    g, rng = _grown(cfg, i, "hole-dart-free")
    report = LemmaReport("hole-dart-atoms")
    for atom in decompose(g).atoms():
        h, labels = induced_by_mask(g, mask_of(atom))
        report.checked += 1
        report.notes["atoms"] = report.notes.get("atoms", 0) + 1
        bad = check_nearly(h, is_weakly_chordal)
        if bad is not None:
            v, w = bad
            report.violate(claim="nearly-weakly-chordal", atom=sorted(atom), vertex=labels[v], witness=_w(w, labels))
        if h.n < 3 or not is_prime(h):
            continue
        report.notes["prime_atoms"] = report.notes.get("prime_atoms", 0) + 1
        all_clique = check_nearly(h, is_clique_graph) is None
        all_cb = check_nearly(h, is_chordal_bipartite) is None
        kind = "nearly_clique" if all_clique else "nearly_chordal_bipartite" if all_cb else "neither"
        report.notes[kind] = report.notes.get(kind, 0) + 1
        if not (all_clique or all_cb):
            report.violate(claim="nearly-clique-or-chordal-bipartite", atom=sorted(atom))
        wg = WeightedGraph(h, random_weights(h.n, rng.getrandbits(32)))
        sr = solve(wg, "hole-dart-free")
        if sr.fallback_count:
            report.violate(claim="dispatch-fallback", atom=sorted(atom), fallbacks=sr.fallback_count)
    return report


def _w(w, labels):
    return None if w is None else {"kind": w.kind, "vertices": [labels[x] for x in w.vertices]}


def _bull_growth(cfg, i):
    g, structure, rng = _planted(cfg, i, ["co-C6", "co-C7"], "bull-free")
    report = LemmaReport("bull-growth")
    if g is None:
        report.skip("generation failed")
        return report
    k = int(structure[4:])
    report.merge(check_bull_growth(g, range(k)))
    # the statement does not depend on which distinguisher is added
    report.merge(check_bull_growth(g, range(k), chooser=random_chooser(rng)))
    return report


def _p5_bull_growth(cfg, i):
    g, structure, rng = _planted(cfg, i, ["C5", "house"], "p5-bull-free")
    report = LemmaReport("p5-bull-growth")
    if g is None:
        report.skip("generation failed")
        return report
    report.merge(check_bull_growth(g, range(5), base=structure))
    return report


def _prime_sample(cfg, i, spec) -> tuple[Graph, random.Random]:
    rng = cfg.rng(i)
    while True:
        n = rng.randint(max(cfg.n_min, 4), cfg.n_max)
        g = gen_in_class(spec, n, rng.choice(cfg.p), rng.getrandbits(32))
        if is_prime(g):
            return g, rng


def _p5_bull_chain(cfg, i):
    g, rng = _prime_sample(cfg, i, "p5-bull-free")
    report = LemmaReport("p5-bull-chain")
    report.checked += 1
    bad = check_nearly(g, chain_or_cochain)
    if bad is not None:
        report.violate(vertex=bad[0], witness=_w(bad[1], list(range(g.n))), edges=[list(e) for e in g.edges()])
    sr = solve(WeightedGraph(g, random_weights(g.n, rng.getrandbits(32))), "p5-bull-free")
    if sr.fallback_count:
        report.violate(claim="dispatch-fallback", fallbacks=sr.fallback_count)
    return report


def _nearly_perfect_dart(cfg, i):
    g, _ = _grown(cfg, i, "odd-hole-dart-free")
    report = LemmaReport("odd-hole-dart-nearly-perfect")
    report.checked += 1
    bad = check_nearly(g, is_perfect_desk)
    if bad is not None:
        report.violate(vertex=bad[0], witness=_w(bad[1], list(range(g.n))))
    return report


def _prime_bull_nearly(cfg, i):
    report = LemmaReport("prime-bull-nearly")
    for spec, pred, name in (
        ("odd-hole-bull-free", is_perfect_desk, "perfect"),
        ("hole-bull-free", is_weakly_chordal, "weakly-chordal"),
    ):
        g, _ = _prime_sample(cfg, i, spec)
        report.checked += 1
        bad = check_nearly(g, pred)
        if bad is not None:
            report.violate(claim=f"{spec} nearly {name}", vertex=bad[0], witness=_w(bad[1], list(range(g.n))))
    return report


DECOMP_SPECS = ("hole-dart-free", "hole-bull-free", "odd-hole-dart-free", "odd-hole-bull-free", "p5-bull-free")


def _decomposition(cfg, i):
    spec = DECOMP_SPECS[i % len(DECOMP_SPECS)]
    g, _ = _grown(cfg, i, spec)
    report = LemmaReport("decomposition")
    report.checked += 1
    for atom in decompose(g).atoms():
        report.notes["atoms"] = report.notes.get("atoms", 0) + 1
        cut = has_clique_cutset_exhaustive(g, mask_of(atom))
        if cut is not None:
            report.violate(claim="atom has clique cutset", atom=sorted(atom), cutset=sorted(cut))
    problems = audit_tree(g, modular_decomposition(g))
    if problems:
        report.violate(claim="modular decomposition audit", problems=problems)
    return report


# -- exhaustive suites ----------------------------------------------------------------


def _dart_exhaustive(cfg: SuiteConfig) -> LemmaReport:
    report = LemmaReport("dart-odd-antihole-exhaustive", cfg.describe("extensions of co-C_k + v"))
    for k in (7, 9):
        every, connected = exhaustive.dart_free_odd_antihole_search(k, cfg.n_max)
        report.checked += every.examined
        report.notes[f"coC{k}_graphs"] = every.examined
        report.notes[f"coC{k}_connected_hits"] = connected.hits
        if connected.hits:
            report.violate(claim=f"connected dart-free graph with co-C{k} in A(v)", examples=connected.examples)
        report.notes[f"coC{k}_disconnected_hits"] = every.hits - connected.hits
    return report


def _bull_exhaustive(cfg: SuiteConfig) -> LemmaReport:
    report = LemmaReport("prime-bull-antihole-exhaustive", cfg.describe("extensions of co-C6 + v"))
    result = exhaustive.prime_bull_free_antihole_search(6, cfg.n_max)
    report.checked += result.examined
    report.notes["graphs"] = result.examined
    report.notes["prime_hits"] = result.hits
    if result.hits:
        report.violate(claim="prime bull-free graph with co-C6 in A(v)", examples=result.examples)
    return report


SUITES: dict[str, Suite] = {
    s.name: s
    for s in (
        Suite("prop1", "contacts see no full P3 of U (dart-free)", "grow dart-free", _prop1, defaults={"size": 300, "n_min": 5, "n_max": 14}),
        Suite("antihole-alternation", "contacts of co-C8 alternate (dart-free)", "plant co-C8 dart-free", _alternation, defaults={"size": 200, "n_max": 14, "p": (0.3, 0.5, 0.7)}),
        Suite("co-c6-contacts", "co-C6 contact claims and separator (hole,dart)-free", "plant co-C6 hole-dart-free", _cocycle6, defaults={"size": 200, "n_max": 16, "p": (0.3, 0.5)}),
        Suite("hole-dart-atoms", "(hole,dart)-free atoms nearly weakly chordal; prime atoms nearly clique or chordal bipartite", "grow hole-dart-free", _hole_dart_atoms, defaults={"size": 300, "p": (0.35, 0.5, 0.65, 0.8)}),
        Suite("bull-growth", "growth from co-C6/co-C7: contacts join every stage; terminal stage is a module", "plant co-C6/co-C7 bull-free", _bull_growth, defaults={"size": 300, "n_max": 16, "p": (0.3, 0.5, 0.7)}),
        Suite("p5-bull-growth", "growth from C5/house in (P5,bull)-free graphs", "plant C5/house p5-bull-free", _p5_bull_growth, defaults={"size": 200, "n_max": 14, "p": (0.3, 0.5, 0.7)}),
        Suite("p5-bull-chain", "prime (P5,bull)-free graphs nearly chain or co-chain", "grow p5-bull-free, keep prime", _p5_bull_chain, defaults={"size": 300, "p": (0.3, 0.5, 0.7)}),
        Suite("odd-hole-dart-perfect", "connected (odd-hole,dart)-free graphs nearly perfect", "grow odd-hole-dart-free", _nearly_perfect_dart, defaults={"size": 200, "n_max": 14}),
        Suite("prime-bull-nearly", "prime (odd-hole,bull)-free nearly perfect; prime (hole,bull)-free nearly weakly chordal", "grow, keep prime", _prime_bull_nearly, defaults={"size": 150, "n_max": 14, "p": (0.3, 0.5, 0.7)}),
        Suite("decomposition", "atoms have no clique cutset; modular trees audit clean", "grow all pipeline classes", _decomposition, defaults={"size": 300, "p": (0.2, 0.35, 0.5, 0.65, 0.8)}),
        Suite("dart-odd-antihole-exhaustive", "no connected dart-free graph has co-C7/co-C9 in some A(v)", "exhaustive", run_all=_dart_exhaustive, defaults={"n_max": 11}),
        Suite("prime-bull-antihole-exhaustive", "no prime bull-free graph has co-C6 in some A(v)", "exhaustive", run_all=_bull_exhaustive, defaults={"n_max": 10}),
    )
}


def config_for(name: str, **overrides) -> SuiteConfig:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    base = replace(SuiteConfig(), **SUITES[name].defaults)
    return replace(base, **{k: v for k, v in overrides.items() if v is not None})


def run_suite(name: str, cfg: SuiteConfig | None = None) -> LemmaReport:
    suite = SUITES[name]
    cfg = cfg or config_for(name)
    if suite.run_all is not None:
        report = suite.run_all(cfg)
        report.lemma = name
        return report
    report = LemmaReport(name, cfg.describe(suite.generator))
    for part in ordered_map(lambda i: suite.run_one(cfg, i), range(cfg.size), cfg.threads):
        report.merge(part)
    report.notes["instances"] = cfg.size
    return report


_FIELD_TYPES = {f.name: f.type for f in fields(SuiteConfig)}


def load_config(path: str) -> dict[str, SuiteConfig]:
    """Read ``[suite-name]`` sections of ``key = value`` lines into configs.

    Keys are the :class:`SuiteConfig` fields; ``p`` is a comma-separated list.
    """
    parser = configparser.ConfigParser()
    with open(path) as fh:
        parser.read_file(fh)
    out = {}
    for section in parser.sections():
        overrides = {}
        for key, raw in parser[section].items():
            if key not in _FIELD_TYPES:
                raise ValueError(f"[{section}] unknown key {key!r}")
            if key == "p":
                overrides[key] = tuple(float(x) for x in raw.split(","))
            else:
                overrides[key] = int(raw)
        out[section] = config_for(section, **overrides)
    return out


__all__ = [
    "SUITES",
    "Suite",
    "SuiteConfig",
    "config_for",
    "default_threads",
    "load_config",
    "ordered_map",
    "run_suite",
]

