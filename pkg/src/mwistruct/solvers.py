"""Exact MWIS solvers for the terminal classes, plus the reference oracle.

All solvers ignore vertices of non-positive weight (they never improve an
independent set), audit their own answer before returning, and raise
:class:`ClassCheckFailed` with evidence when the input is outside their
class.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

import networkx as nx

from .graph import (
    Graph,
    WeightedGraph,
    bits,
    component_masks,
    is_clique_mask,
    is_independent_mask,
    iter_bits,
    lowest,
    mask_of,
    popcount,
)
from .patterns import (
    PatternWitness,
    Verdict,
    is_bipartite,
    is_bipartite_chain,
    is_chordal,
    is_clique_graph,
    is_cobipartite_chain,
    is_weakly_chordal,
)

DEFAULT_ORACLE_BUDGET = 2_000_000


class BudgetExhausted(RuntimeError):
    """The oracle expanded more search nodes than its budget allows."""

    def __init__(self, message: str, branch_vertex: int | None = None):
        super().__init__(message)
        self.branch_vertex = branch_vertex


class ClassCheckFailed(ValueError):
    def __init__(self, solver: str, witness: PatternWitness | None):
        kind = witness.kind if witness else "unknown"
        super().__init__(f"{solver}: input outside the solver's class ({kind} found)")
        self.solver = solver
        self.witness = witness


@dataclass(frozen=True)
class Solution:
    value: int
    vertices: frozenset[int]

    @classmethod
    def from_mask(cls, value: int, mask: int) -> "Solution":
        return cls(value, frozenset(iter_bits(mask)))

    def audit(self, wg: WeightedGraph) -> bool:
        m = mask_of(self.vertices)
        return is_independent_mask(wg.graph, m) and wg.weight_of(self.vertices) == self.value


def _checked(wg: WeightedGraph, value: int, mask: int, name: str) -> Solution:
    sol = Solution.from_mask(value, mask)
    if not sol.audit(wg):
        raise AssertionError(f"{name} produced an invalid solution {sorted(sol.vertices)}")
    return sol


def _positive(wg: WeightedGraph) -> int:
    return mask_of(v for v, w in enumerate(wg.weights) if w > 0)


# -- oracle ------------------------------------------------------------------------


def oracle_mask(g: Graph, weights, scope: int, budget: int = DEFAULT_ORACLE_BUDGET) -> tuple[int, int]:
    """Branch and bound with memoised component splitting on ``G[scope]``.

    Returns ``(value, chosen mask)``; only positive-weight vertices are used.
    """
    adj = g.adj
    w = weights
    scope &= mask_of(v for v in iter_bits(scope) if w[v] > 0)
    memo: dict[int, tuple[int, int]] = {}
    calls = 0
    need = 2 * popcount(scope) + 100
    if sys.getrecursionlimit() < need:
        sys.setrecursionlimit(need)

    def weight_sum(m: int) -> int:
        return sum(w[v] for v in iter_bits(m))

    def best(mask: int) -> tuple[int, int]:
        nonlocal calls
        if not mask:
            return 0, 0
        hit = memo.get(mask)
        if hit is not None:
            return hit
        calls += 1
        if calls > budget:
            raise BudgetExhausted(f"oracle budget of {budget} search nodes exhausted")
        comps = component_masks(g, mask)
        if len(comps) > 1:
            val, chosen = 0, 0
            for c in comps:
                cv, cm = best(c)
                val += cv
                chosen |= cm
            res = (val, chosen)
        elif not mask & (mask - 1):
            res = (w[lowest(mask)], mask)
        elif is_clique_mask(g, mask):
            v = max(iter_bits(mask), key=lambda x: (w[x], -x))
            res = (w[v], 1 << v)
        else:
            res = None
            # a simplicial vertex at least as heavy as its neighbors is always safe to take
            for v in iter_bits(mask):
                nb = adj[v] & mask
                if is_clique_mask(g, nb) and all(w[u] <= w[v] for u in iter_bits(nb)):
                    sv, sm = best(mask & ~nb & ~(1 << v))
                    res = (sv + w[v], sm | 1 << v)
                    break
            if res is None:
                v = max(iter_bits(mask), key=lambda x: (popcount(adj[x] & mask), -x))
                iv, im = best(mask & ~adj[v] & ~(1 << v))
                inc = (iv + w[v], im | 1 << v)
                if inc[0] >= weight_sum(mask) - w[v]:
                    res = inc
                else:
                    exc = best(mask & ~(1 << v))
                    res = inc if inc[0] >= exc[0] else exc
        memo[mask] = res
        return res

    return best(scope)


def mwis_oracle(wg: WeightedGraph, budget: int = DEFAULT_ORACLE_BUDGET) -> Solution:
    value, mask = oracle_mask(wg.graph, wg.weights, wg.graph.full, budget)
    return _checked(wg, value, mask, "mwis_oracle")


def brute_force(wg: WeightedGraph) -> Solution:
    """Enumerate every vertex subset; for tiny graphs and tests only."""
    g = wg.graph
    best_v, best_m = 0, 0
    for m in range(1 << g.n):
        if is_independent_mask(g, m):
            val = sum(wg.weights[v] for v in iter_bits(m))
            if val > best_v:
                best_v, best_m = val, m
    return Solution.from_mask(best_v, best_m)


# -- class-specific solvers ------------------------------------------------------


def _require(v: Verdict, name: str) -> Verdict:
    if not v:
        raise ClassCheckFailed(name, v.witness)
    return v


def mwis_clique(wg: WeightedGraph, check: bool = True) -> Solution:
    if check:
        _require(is_clique_graph(wg.graph), "mwis_clique")
    pos = _positive(wg)
    if not pos:
        return Solution(0, frozenset())
    v = max(iter_bits(pos), key=lambda x: (wg.weights[x], -x))
    return _checked(wg, wg.weights[v], 1 << v, "mwis_clique")


def mwis_chordal(wg: WeightedGraph, check: bool = True) -> Solution:
    """Frank's two-phase greedy along a perfect elimination ordering."""
    verdict = is_chordal(wg.graph)
    if check:
        _require(verdict, "mwis_chordal")
    peo = verdict.certificate
    g = wg.graph
    pos = {v: i for i, v in enumerate(peo)}
    residual = list(wg.weights)
    red = []
    for v in peo:
        if residual[v] > 0:
            red.append(v)
            for u in iter_bits(g.adj[v]):
                if pos[u] > pos[v]:
                    residual[u] = max(0, residual[u] - residual[v])
    chosen = 0
    for v in reversed(red):
        if not g.adj[v] & chosen:
            chosen |= 1 << v
    return _checked(wg, sum(wg.weights[v] for v in iter_bits(chosen)), chosen, "mwis_chordal")


def mwis_bipartite(wg: WeightedGraph, check: bool = True) -> Solution:
    """Complement of a minimum-weight vertex cover found by max-flow/min-cut."""
    verdict = is_bipartite(wg.graph)
    if check:
        _require(verdict, "mwis_bipartite")
    side = verdict.certificate
    g = wg.graph
    pos = _positive(wg)
    total = sum(wg.weights[v] for v in iter_bits(pos))
    net = nx.DiGraph()
    net.add_node("s")
    net.add_node("t")
    for v in iter_bits(pos):
        if side[v] == 0:
            net.add_edge("s", v, capacity=wg.weights[v])
        else:
            net.add_edge(v, "t", capacity=wg.weights[v])
    for v in iter_bits(pos):
        if side[v] == 0:
            for u in iter_bits(g.adj[v] & pos):
                net.add_edge(v, u, capacity=total + 1)
    cut, (src_side, _) = nx.minimum_cut(net, "s", "t")
    cover = {v for v in iter_bits(pos) if (side[v] == 0) != (v in src_side)}
    chosen = mask_of(v for v in iter_bits(pos) if v not in cover)
    return _checked(wg, total - cut, chosen, "mwis_bipartite")


def mwis_bipartite_chain(wg: WeightedGraph, check: bool = True) -> Solution:
    """Scan prefixes of the inclusion order: ``x_1..x_j`` plus ``Y - N(x_j)``."""
    verdict = is_bipartite_chain(wg.graph)
    if check:
        _require(verdict, "mwis_bipartite_chain")
    order = verdict.certificate
    g, w = wg.graph, wg.weights
    pos = _positive(wg)
    base = mask_of(order.isolated) & pos
    ys = mask_of(order.ys) & pos
    best_v, best_m = -1, 0
    prefix = 0
    candidates = [(0, ys)]
    for x in order.xs:
        prefix |= (1 << x) & pos
        candidates.append((prefix, ys & ~g.adj[x]))
    for xm, ym in candidates:
        m = base | xm | ym
        val = sum(w[v] for v in iter_bits(m))
        if val > best_v:
            best_v, best_m = val, m
    return _checked(wg, best_v, best_m, "mwis_bipartite_chain")


def mwis_cobipartite_chain(wg: WeightedGraph, check: bool = True) -> Solution:
    """Independent sets of a co-bipartite graph have at most two vertices."""
    if check:
        _require(is_cobipartite_chain(wg.graph), "mwis_cobipartite_chain")
    g, w = wg.graph, wg.weights
    pos = bits(_positive(wg))
    best_v, best_m = 0, 0
    for i, x in enumerate(pos):
        if w[x] > best_v:
            best_v, best_m = w[x], 1 << x
        for y in pos[i + 1 :]:
            if not g.adj[x] >> y & 1 and w[x] + w[y] > best_v:
                best_v, best_m = w[x] + w[y], 1 << x | 1 << y
    return _checked(wg, best_v, best_m, "mwis_cobipartite_chain")


def mwis_weakly_chordal(wg: WeightedGraph, budget: int = DEFAULT_ORACLE_BUDGET, check: bool = True) -> Solution:
    """Exact MWIS on weakly chordal input: class check, then the oracle."""
    if check:
        _require(is_weakly_chordal(wg.graph), "mwis_weakly_chordal")
    value, mask = oracle_mask(wg.graph, wg.weights, wg.graph.full, budget)
    return _checked(wg, value, mask, "mwis_weakly_chordal")


SOLVERS = {
    "oracle": mwis_oracle,
    "clique": mwis_clique,
    "chordal": mwis_chordal,
    "bipartite": mwis_bipartite,
    "bipartite-chain": mwis_bipartite_chain,
    "cobipartite-chain": mwis_cobipartite_chain,
    "weakly-chordal": mwis_weakly_chordal,
}
