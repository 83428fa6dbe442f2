"""Clique-separator decomposition into atoms and MWIS recombination.

The decomposition computes one minimal elimination ordering (MCS-M) and
scans it once: a vertex whose higher neighborhood in the filled graph is a
clique of the original graph and separates it splits off an atom. The tree
is a caterpillar; every internal node holds the atom split off at that step
(near side) and the remaining graph (far side).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .graph import (
    Graph,
    GraphError,
    WeightedGraph,
    bits,
    component_masks,
    is_clique_mask,
    iter_bits,
    mask_of,
)


def _mcs_m(g: Graph, scope: int) -> tuple[list[int], list[tuple[int, int]]]:
    """MCS-M on ``G[scope]``: elimination order (first eliminated first) and fill edges."""
    adj = g.adj
    weight = {v: 0 for v in iter_bits(scope)}
    unnumbered = scope
    picked = []
    fill = []
    while unnumbered:
        v = max(iter_bits(unnumbered), key=lambda x: (weight[x], -x))
        unnumbered &= ~(1 << v)
        picked.append(v)
        if not unnumbered:
            break
        levels: dict[int, int] = {}
        for u in iter_bits(unnumbered):
            levels[weight[u]] = levels.get(weight[u], 0) | 1 << u
        # reach = v plus unnumbered vertices reachable through vertices of weight < t
        reach = 1 << v
        allowed = 0
        hits = 0
        for t in sorted(levels):
            # reach grows through vertices lighter than t only
            frontier = reach
            while frontier:
                nb = 0
                for x in iter_bits(frontier):
                    nb |= adj[x]
                frontier = nb & allowed & ~reach
                reach |= frontier
            for u in iter_bits(levels[t]):
                if adj[u] & reach:
                    hits |= 1 << u
            allowed |= levels[t]
        for u in iter_bits(hits):
            weight[u] += 1
            if not adj[v] >> u & 1:
                fill.append((min(u, v), max(u, v)))
    return picked[::-1], sorted(fill)


def minimal_order(g: Graph) -> tuple[list[int], list[tuple[int, int]]]:
    """Minimal elimination ordering of ``g`` and the fill edges it creates."""
    return _mcs_m(g, g.full)


def fill_in(g: Graph, order: list[int]) -> list[tuple[int, int]]:
    """Fill edges produced by eliminating vertices in ``order`` (independent recount)."""
    adj = list(g.adj)
    pos = {v: i for i, v in enumerate(order)}
    fill = set()
    for v in order:
        later = [u for u in iter_bits(adj[v]) if pos[u] > pos[v]]
        for i, a in enumerate(later):
            for b in later[i + 1 :]:
                if not adj[a] >> b & 1:
                    adj[a] |= 1 << b
                    adj[b] |= 1 << a
                    fill.add((min(a, b), max(a, b)))
    return sorted(fill)


@dataclass(frozen=True)
class AtomNode:
    """Node of the clique-separator tree.

    Leaves carry ``atom``; internal nodes carry the ``separator`` clique, the
    ``near`` child (atom side, containing the separator) and the ``far`` child
    (remaining graph, also containing the separator).
    """

    vertices: frozenset[int]
    atom: frozenset[int] | None = None
    separator: frozenset[int] | None = None
    near: "AtomNode | None" = None
    far: "AtomNode | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.atom is not None

    def atoms(self) -> list[frozenset[int]]:
        if self.is_leaf:
            return [self.atom]
        return self.near.atoms() + self.far.atoms()

    def separators(self) -> list[frozenset[int]]:
        if self.is_leaf:
            return []
        return [self.separator] + self.near.separators() + self.far.separators()

    def to_dict(self) -> dict:
        if self.is_leaf:
            return {"atom": sorted(self.atom)}
        return {
            "separator": sorted(self.separator),
            "near": self.near.to_dict(),
            "far": self.far.to_dict(),
        }


AtomDecomposition = AtomNode


def find_clique_separator(g: Graph, scope: int | None = None) -> tuple[int, int, int] | None:
    """First clique separator of connected ``G[scope]`` in the scan.

    Returns ``(separator, near, far)`` masks, or ``None`` if ``G[scope]`` is an atom.
    """
    splits = _scan(g, g.full if scope is None else scope, first_only=True)
    return splits[0] if splits else None


def _scan(g: Graph, scope: int, first_only: bool = False) -> list[tuple[int, int, int]]:
    order, fill = _mcs_m(g, scope)
    filled = {v: g.adj[v] & scope for v in iter_bits(scope)}
    for a, b in fill:
        filled[a] |= 1 << b
        filled[b] |= 1 << a
    later = scope
    current = scope
    out = []
    for v in order:
        later &= ~(1 << v)
        if not current >> v & 1:
            continue
        c = filled[v] & later & current
        if not is_clique_mask(g, c):
            continue
        rest = current & ~c
        comp = next(m for m in component_masks(g, rest) if m >> v & 1)
        if rest & ~comp:
            out.append((c, comp | c, current & ~comp))
            if first_only:
                break
            current &= ~comp
    return out


def decompose(g: Graph) -> AtomNode:
    """Clique-separator tree of a connected graph."""
    if g.n == 0:
        return AtomNode(frozenset(), atom=frozenset())
    if len(component_masks(g)) > 1:
        raise GraphError("decompose expects a connected graph; split components first")
    return _decompose_mask(g, g.full)


def _decompose_mask(g: Graph, scope: int) -> AtomNode:
    splits = _scan(g, scope)
    node = AtomNode(_fs(splits[-1][2]), atom=_fs(splits[-1][2])) if splits else None
    if node is None:
        return AtomNode(_fs(scope), atom=_fs(scope))
    for sep, near, far in reversed(splits):
        node = AtomNode(
            _fs(near | far),
            separator=_fs(sep),
            near=AtomNode(_fs(near), atom=_fs(near)),
            far=node,
        )
    return node


def _fs(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))


def has_clique_cutset_exhaustive(g: Graph, within: int | None = None) -> frozenset[int] | None:
    """Brute-force audit: a clique whose removal adds components, or ``None``.

    Enumerates every clique of ``G[within]``; meant for at most ~16 vertices.
    """
    scope = g.full if within is None else within
    base = len(component_masks(g, scope))
    verts = bits(scope)

    def cliques(start: int, cur: int, cand: int):
        yield cur
        for i in range(start, len(verts)):
            x = verts[i]
            if cand >> x & 1:
                yield from cliques(i + 1, cur | 1 << x, cand & g.adj[x])

    for c in cliques(0, 0, scope):
        if c == 0 or c == scope:
            continue
        if len(component_masks(g, scope & ~c)) > base:
            return _fs(c)
    return None


# -- recombination ------------------------------------------------------------


@dataclass(frozen=True)
class SeparatorQuery:
    """Answers from the side solved first.

    ``beta`` is the optimum of that side without the separator; ``beta_v[s]``
    is ``w(s)`` plus the optimum of that side inside ``A(s)``.
    """

    beta: int
    beta_v: dict[int, int]


def separator_queries(
    solve: Callable[[WeightedGraph], int], side: WeightedGraph, separator: Iterable[int]
) -> SeparatorQuery:
    """Run the ``|S| + 1`` subproblem solves on ``side`` (which contains ``S``)."""
    s_mask = mask_of(separator)
    g = side.graph
    rest, _ = side.induced(bits(side.graph.full & ~s_mask))
    beta = solve(rest)
    beta_v = {}
    for s in iter_bits(s_mask):
        inside = g.full & ~(g.adj[s] | 1 << s)
        sub, _ = side.induced(bits(inside))
        beta_v[s] = side.weights[s] + solve(sub)
    return SeparatorQuery(beta, beta_v)


def combine_over_separator(
    query: SeparatorQuery, g1: WeightedGraph, separator: Iterable[int]
) -> tuple[WeightedGraph, list[int], int]:
    """Fold the other side's answers into ``g1``.

    Returns ``(reduced graph, labels into g1, constant)`` such that the MWIS
    of the whole graph equals the MWIS of the reduced graph plus the constant.
    Separator vertices whose adjusted weight is not positive are deleted.
    """
    sep = sorted(set(separator))
    missing = [s for s in sep if s not in query.beta_v]
    if missing:
        raise GraphError(f"separator vertices {missing} have no query answer")
    weights = list(g1.weights)
    drop = set()
    for s in sep:
        weights[s] = query.beta_v[s] - query.beta
        if weights[s] <= 0:
            drop.add(s)
    keep = [v for v in range(g1.n) if v not in drop]
    reduced = WeightedGraph(g1.graph, tuple(weights)).induced(keep)
    return reduced[0], reduced[1], query.beta


def component_of(g: Graph, scope: int, v: int) -> int:
    return next(m for m in component_masks(g, scope) if m >> v & 1)


__all__ = [
    "AtomDecomposition",
    "AtomNode",
    "SeparatorQuery",
    "combine_over_separator",
    "decompose",
    "fill_in",
    "find_clique_separator",
    "has_clique_cutset_exhaustive",
    "minimal_order",
    "separator_queries",
]
