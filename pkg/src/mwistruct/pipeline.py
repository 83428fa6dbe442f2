"""Class-specific MWIS drivers.

Each driver splits into components, walks the modular decomposition tree,
and solves prime quotients by the anti-neighborhood reduction

    alpha_w(G) = max over v of  w(v) + alpha_w(G[A(v)])

with a base solver chosen from the structure the class guarantees for
``G[A(v)]``. The (hole, dart)-free driver additionally splits prime quotients
by clique separators and applies the reduction to atoms only. Whenever the
predicted structure is missing the oracle takes over and the event is
counted in ``fallback_count``.
"""

from __future__ import annotations

import logging
import sys
from dataclasses import dataclass, field
from typing import Callable

from .cliquesep import _scan
from .graph import (
    Graph,
    WeightedGraph,
    anti_neighborhood_mask,
    bits,
    component_masks,
    induced_by_mask,
    iter_bits,
    mask_of,
    popcount,
)
from .modular import LEAF, PARALLEL, PRIME, SERIES, MDNode, modular_decomposition
from .patterns import (
    PIPELINE_CLASSES,
    PatternWitness,
    Verdict,
    in_class,
    is_bipartite,
    is_bipartite_chain,
    is_clique_graph,
    is_cobipartite_chain,
    is_perfect_desk,
    is_weakly_chordal,
)
from .solvers import (
    DEFAULT_ORACLE_BUDGET,
    BudgetExhausted,
    Solution,
    mwis_bipartite,
    mwis_bipartite_chain,
    mwis_clique,
    mwis_cobipartite_chain,
    oracle_mask,
)

log = logging.getLogger(__name__)

CLASS_TAGS = tuple(PIPELINE_CLASSES) + ("auto",)
AUTO_ORDER = ("p5-bull-free", "hole-dart-free", "hole-bull-free", "odd-hole-dart-free", "odd-hole-bull-free")

# structure-check ids recorded in reports
CHECK_ATOM_WC = "hole-dart-atoms-nearly-weakly-chordal"
CHECK_ATOM_CLIQUE_CB = "hole-dart-prime-atoms-nearly-clique-or-chordal-bipartite"
CHECK_PRIME_WC = "hole-bull-prime-nearly-weakly-chordal"
CHECK_PERFECT_DART = "odd-hole-dart-nearly-perfect"
CHECK_PERFECT_BULL = "odd-hole-bull-prime-nearly-perfect"
CHECK_CHAIN = "p5-bull-prime-nearly-chain-or-cochain"

MAX_WITNESSES = 5


class ClassViolation(ValueError):
    """The input is not in the requested class."""

    def __init__(self, spec: str, witness: PatternWitness | None):
        super().__init__(f"input is not {spec}" + (f": {witness.kind} {list(witness.vertices)}" if witness else ""))
        self.spec = spec
        self.witness = witness


@dataclass
class StructureCheck:
    checked: int = 0
    violations: int = 0
    witnesses: list = field(default_factory=list)

    def record(self, ok: bool, witness: dict | None = None):
        self.checked += 1
        if not ok:
            self.violations += 1
            if witness is not None and len(self.witnesses) < MAX_WITNESSES:
                self.witnesses.append(witness)

    def to_dict(self) -> dict:
        return {
            "checked": self.checked,
            "violations": self.violations,
            "passed": self.violations == 0,
            "witnesses": self.witnesses,
        }


@dataclass
class SolveReport:
    solution: Solution
    class_used: str
    md_stats: dict
    atom_stats: dict
    reduction_stats: dict
    structure_checks: dict
    fallback_count: int

    def to_dict(self) -> dict:
        return {
            "value": self.solution.value,
            "set": sorted(self.solution.vertices),
            "class_used": self.class_used,
            "md_stats": self.md_stats,
            "atom_stats": self.atom_stats,
            "reduction_stats": self.reduction_stats,
            "structure_checks": self.structure_checks,
            "fallback_count": self.fallback_count,
        }


def nearly_reduce(wg: WeightedGraph, base: Callable[[WeightedGraph], Solution]) -> Solution:
    """Branch on every vertex: ``w(v)`` plus the base solver on ``G[A(v)]``.

    Ties go to the least vertex. Errors raised by ``base`` get the branching
    vertex attached as ``branch_vertex``.
    """
    g = wg.graph
    if g.n == 0:
        raise ValueError("nearly_reduce needs a nonempty graph")
    best: Solution | None = None
    for v in range(g.n):
        if wg.weights[v] <= 0:
            continue
        anti = bits(anti_neighborhood_mask(g, 1 << v))
        sub, labels = wg.induced(anti)
        try:
            inner = base(sub)
        except Exception as exc:
            if getattr(exc, "branch_vertex", None) is None:
                exc.branch_vertex = v
            raise
        value = wg.weights[v] + inner.value
        if best is None or value > best.value:
            best = Solution(value, frozenset({v} | {labels[i] for i in inner.vertices}))
    return best if best is not None else Solution(0, frozenset())


class _Engine:
    """One solve run: holds the class, budget, statistics and memo."""

    def __init__(self, spec: str, budget: int):
        self.spec = spec
        self.budget = budget
        self.memo: dict[tuple, tuple[int, int]] = {}
        self.md = {LEAF: 0, PARALLEL: 0, SERIES: 0, PRIME: 0, "max_prime_quotient": 0}
        self.atoms = {"atoms": 0, "separators": 0, "max_atom_size": 0}
        self.branches = 0
        self.base_calls: dict[str, int] = {}
        self.max_base_size = 0
        self.fallbacks = 0
        self.checks: dict[str, StructureCheck] = {}

    # -- bookkeeping ----------------------------------------------------------

    def check(self, name: str) -> StructureCheck:
        return self.checks.setdefault(name, StructureCheck())

    def _base_call(self, kind: str, size: int):
        self.base_calls[kind] = self.base_calls.get(kind, 0) + 1
        self.max_base_size = max(self.max_base_size, size)

    def _oracle(self, g: Graph, w, scope: int) -> tuple[int, int]:
        return oracle_mask(g, w, scope, self.budget)

    # -- recursion ------------------------------------------------------------

    def solve(self, g: Graph, w: list[int], rep: list[int]) -> tuple[int, int]:
        """MWIS of ``(g, w)``; ``rep[i]`` is an original vertex standing for ``i``."""
        key = (g.adj, tuple(w))
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        value, chosen = 0, 0
        for comp in component_masks(g):
            h, labels = induced_by_mask(g, comp)
            hv, hm = self._connected(h, [w[i] for i in labels], [rep[i] for i in labels])
            value += hv
            chosen |= _lift(hm, labels)
        self.memo[key] = (value, chosen)
        return value, chosen

    def _sub(self, g: Graph, w, rep, mask: int) -> tuple[int, int]:
        h, labels = induced_by_mask(g, mask)
        hv, hm = self.solve(h, [w[i] for i in labels], [rep[i] for i in labels])
        return hv, _lift(hm, labels)

    def _connected(self, g: Graph, w, rep) -> tuple[int, int]:
        if g.n == 1:
            return (w[0], 1) if w[0] > 0 else (0, 0)
        if self.spec == "odd-hole-dart-free":
            return self._nearly(g, w, rep, self._base_perfect_dart)
        root = modular_decomposition(g)
        return self._evaluate(g, w, rep, root)

    def _evaluate(self, g: Graph, w, rep, node: MDNode) -> tuple[int, int]:
        self.md[node.kind] += 1
        if node.kind == LEAF:
            (v,) = node.vertices
            return (w[v], 1 << v) if w[v] > 0 else (0, 0)
        results = [self._evaluate(g, w, rep, c) for c in node.children]
        if node.kind == PARALLEL:
            chosen = 0
            for _, m in results:
                chosen |= m
            return sum(r[0] for r in results), chosen
        if node.kind == SERIES:
            i = max(range(len(results)), key=lambda j: (results[j][0], -j))
            return results[i]
        q = node.quotient
        self.md["max_prime_quotient"] = max(self.md["max_prime_quotient"], q.n)
        qw = [r[0] for r in results]
        qrep = [rep[min(c.vertices)] for c in node.children]
        value, qmask = self._prime(q, qw, qrep)
        chosen = 0
        for i in iter_bits(qmask):
            chosen |= results[i][1]
        return value, chosen

    def _prime(self, q: Graph, w, rep) -> tuple[int, int]:
        if self.spec == "hole-dart-free":
            return self._by_atoms(q, w, rep)
        base = {
            "hole-bull-free": self._base_weakly_chordal,
            "odd-hole-bull-free": self._base_perfect_bull,
            "p5-bull-free": self._base_chain,
        }[self.spec]
        return self._nearly(q, w, rep, base)

    def _by_atoms(self, g: Graph, w, rep) -> tuple[int, int]:
        """Clique-separator recombination along one scan of a minimal ordering.

        The atom side of each split answers the separator queries; the
        remaining graph carries adjusted separator weights. Adjusted weights
        are clipped at zero instead of deleting vertices, so the remaining
        splits of the same scan stay valid.
        """
        splits = _scan(g, g.full)
        last = splits[-1][2] if splits else g.full
        self.atoms["separators"] += len(splits)
        self.atoms["atoms"] += len(splits) + 1
        sizes = [popcount(near) for _, near, _ in splits] + [popcount(last)]
        self.atoms["max_atom_size"] = max(self.atoms["max_atom_size"], *sizes)
        w = list(w)
        undo = []
        for sep, near, _far in splits:
            beta, beta_mask = self._sub(g, w, rep, near & ~sep)
            extra = {}
            for s in iter_bits(sep):
                inside = near & ~g.adj[s] & ~sep
                sv, sm = self._sub(g, w, rep, inside)
                extra[s] = (w[s] + sv - beta, sm)
            for s, (adjusted, _) in extra.items():
                w[s] = max(adjusted, 0)
            undo.append((sep, beta, beta_mask, extra))
        value, chosen = self._atom(g, w, rep, last)
        for sep, beta, beta_mask, extra in reversed(undo):
            picked = [s for s in iter_bits(sep & chosen) if extra[s][0] > 0]
            # zero-weight separator vertices contribute nothing; drop them
            chosen &= ~sep | mask_of(picked)
            if picked:
                (s,) = picked
                chosen |= extra[s][1]
            else:
                chosen |= beta_mask
            value += beta
        return value, chosen

    def _atom(self, g: Graph, w, rep, mask: int) -> tuple[int, int]:
        h, labels = induced_by_mask(g, mask)
        hv, hm = self._nearly(h, [w[i] for i in labels], [rep[i] for i in labels], self._base_atom)
        return hv, _lift(hm, labels)

    def _nearly(self, g: Graph, w, rep, base) -> tuple[int, int]:
        best_v, best_m = 0, 0
        for v in range(g.n):
            if w[v] <= 0:
                continue
            self.branches += 1
            anti = anti_neighborhood_mask(g, 1 << v)
            h, labels = induced_by_mask(g, anti)
            try:
                hv, hm = base(h, [w[i] for i in labels], [rep[i] for i in labels])
            except BudgetExhausted as exc:
                if exc.branch_vertex is None:
                    exc.branch_vertex = rep[v]
                raise
            if w[v] + hv > best_v:
                best_v, best_m = w[v] + hv, _lift(hm, labels) | 1 << v
        return best_v, best_m

    # -- base dispatch ---------------------------------------------------------

    def _witness(self, v: Verdict, rep) -> dict | None:
        if v.witness is None:
            return None
        return {"kind": v.witness.kind, "vertices": [rep[i] for i in v.witness.vertices]}

    def _base_atom(self, h: Graph, w, rep) -> tuple[int, int]:
        """Anti-neighborhood of an atom: clique / bipartite, else weakly chordal, else oracle."""
        if h.n == 0:
            return 0, 0
        wc = is_weakly_chordal(h)
        self.check(CHECK_ATOM_WC).record(wc.ok, self._witness(wc, rep))
        value, chosen = 0, 0
        predicted = True
        for comp in component_masks(h):
            c, labels = induced_by_mask(h, comp)
            cw = WeightedGraph(c, tuple(w[i] for i in labels))
            if is_clique_graph(c):
                self._base_call("clique", c.n)
                sol = mwis_clique(cw, check=False)
            elif is_bipartite(c):
                self._base_call("bipartite", c.n)
                sol = mwis_bipartite(cw, check=False)
            elif wc.ok:
                predicted = False
                self._base_call("weakly-chordal", c.n)
                sol = Solution.from_mask(*oracle_mask(c, cw.weights, c.full, self.budget))
            else:
                predicted = False
                self._base_call("oracle-fallback", c.n)
                self.fallbacks += 1
                sol = Solution.from_mask(*oracle_mask(c, cw.weights, c.full, self.budget))
            value += sol.value
            chosen |= _lift(mask_of(sol.vertices), labels)
        self.check(CHECK_ATOM_CLIQUE_CB).record(predicted)
        return value, chosen

    def _base_weakly_chordal(self, h: Graph, w, rep) -> tuple[int, int]:
        if h.n == 0:
            return 0, 0
        wc = is_weakly_chordal(h)
        self.check(CHECK_PRIME_WC).record(wc.ok, self._witness(wc, rep))
        if wc.ok:
            self._base_call("weakly-chordal", h.n)
        else:
            self._base_call("oracle-fallback", h.n)
            self.fallbacks += 1
        return self._oracle(h, w, h.full)

    def _base_perfect(self, h: Graph, w, rep, check_name: str) -> tuple[int, int]:
        if h.n == 0:
            return 0, 0
        perfect = is_perfect_desk(h)
        self.check(check_name).record(perfect.ok, self._witness(perfect, rep))
        if perfect.ok:
            self._base_call("perfect-oracle", h.n)
        else:
            log.error("anti-neighborhood is not perfect (%s); the structure theorem predicts it is",
                      perfect.witness.kind)
            self._base_call("oracle-fallback", h.n)
            self.fallbacks += 1
        return self._oracle(h, w, h.full)

    def _base_perfect_dart(self, h, w, rep):
        return self._base_perfect(h, w, rep, CHECK_PERFECT_DART)

    def _base_perfect_bull(self, h, w, rep):
        return self._base_perfect(h, w, rep, CHECK_PERFECT_BULL)

    def _base_chain(self, h: Graph, w, rep) -> tuple[int, int]:
        if h.n == 0:
            return 0, 0
        hw = WeightedGraph(h, tuple(w))
        chain = is_bipartite_chain(h)
        if chain:
            self.check(CHECK_CHAIN).record(True)
            self._base_call("bipartite-chain", h.n)
            return _as_mask(mwis_bipartite_chain(hw, check=False))
        cochain = is_cobipartite_chain(h)
        if cochain:
            self.check(CHECK_CHAIN).record(True)
            self._base_call("cobipartite-chain", h.n)
            return _as_mask(mwis_cobipartite_chain(hw, check=False))
        self.check(CHECK_CHAIN).record(False, self._witness(chain, rep))
        self._base_call("oracle-fallback", h.n)
        self.fallbacks += 1
        return self._oracle(h, w, h.full)

    # -- report -------------------------------------------------------------------

    def stats(self) -> tuple[dict, dict, dict, dict]:
        md = dict(self.md)
        reduction = {
            "branches": self.branches,
            "base_calls": dict(sorted(self.base_calls.items())),
            "max_base_size": self.max_base_size,
        }
        checks = {k: v.to_dict() for k, v in sorted(self.checks.items())}
        return md, dict(self.atoms), reduction, checks


def _lift(mask: int, labels: list[int]) -> int:
    out = 0
    for i in iter_bits(mask):
        out |= 1 << labels[i]
    return out


def _as_mask(sol: Solution) -> tuple[int, int]:
    return sol.value, mask_of(sol.vertices)


def select_class(g: Graph, budget: int | None = None) -> str:
    """Most structured pipeline class containing ``g``."""
    first_witness = None
    for spec in AUTO_ORDER:
        v = in_class(g, spec, budget=budget)
        if v:
            return spec
        first_witness = first_witness or v.witness
    raise ClassViolation("in any supported class", first_witness)


def solve(
    wg: WeightedGraph,
    spec: str = "auto",
    budget: int = DEFAULT_ORACLE_BUDGET,
    check_class: bool = True,
) -> SolveReport:
    """Exact MWIS with a full report.

    Negative-weight vertices are removed first. With ``spec='auto'`` the most
    structured applicable class is chosen; otherwise membership is verified
    (unless ``check_class`` is false) and violations raise :class:`ClassViolation`.
    """
    if spec not in CLASS_TAGS:
        raise ValueError(f"unknown class {spec!r}; expected one of {CLASS_TAGS}")
    kept, labels = wg.without_negative()
    g = kept.graph
    if spec == "auto":
        spec = select_class(g)
    elif check_class:
        verdict = in_class(g, spec)
        if not verdict:
            w = verdict.witness
            raise ClassViolation(spec, PatternWitness(w.kind, tuple(labels[i] for i in w.vertices)))
    engine = _Engine(spec, budget)
    need = 4 * g.n + 200
    if sys.getrecursionlimit() < need:
        sys.setrecursionlimit(need)
    rep = list(labels)
    value, chosen = engine.solve(g, list(kept.weights), rep)
    solution = Solution(value, frozenset(labels[i] for i in iter_bits(chosen)))
    if not solution.audit(wg):
        raise AssertionError("pipeline produced an invalid solution")
    md, atoms, reduction, checks = engine.stats()
    return SolveReport(solution, spec, md, atoms, reduction, checks, engine.fallbacks)


def solve_hole_dart_free(wg: WeightedGraph, **kw) -> SolveReport:
    return solve(wg, "hole-dart-free", **kw)


def solve_hole_bull_free(wg: WeightedGraph, **kw) -> SolveReport:
    return solve(wg, "hole-bull-free", **kw)


def solve_odd_hole_dart_free(wg: WeightedGraph, **kw) -> SolveReport:
    return solve(wg, "odd-hole-dart-free", **kw)


def solve_odd_hole_bull_free(wg: WeightedGraph, **kw) -> SolveReport:
    return solve(wg, "odd-hole-bull-free", **kw)


def solve_p5_bull_free(wg: WeightedGraph, **kw) -> SolveReport:
    return solve(wg, "p5-bull-free", **kw)
