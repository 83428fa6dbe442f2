"""Modular decomposition and bottom-up MWIS along the decomposition tree.

Construction is the direct recursive one: a disconnected graph is a parallel
node, a graph with disconnected complement is a series node, and otherwise
the maximal strong modules are found from pairwise module closures. This is
cubic-ish, which is fine at the sizes the pipelines see after reduction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .graph import (
    Graph,
    cocomponent_masks,
    component_masks,
    induced_by_mask,
    iter_bits,
    lowest,
    mask_of,
)

LEAF, PARALLEL, SERIES, PRIME = "leaf", "parallel", "series", "prime"


@dataclass(frozen=True)
class MDNode:
    kind: str
    vertices: frozenset[int]
    children: tuple["MDNode", ...] = ()
    # prime nodes only: quotient on the children (vertex i is children[i])
    quotient: Graph | None = field(default=None, compare=False)

    @property
    def mask(self) -> int:
        return mask_of(self.vertices)

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()

    def counts(self) -> dict[str, int]:
        out = {LEAF: 0, PARALLEL: 0, SERIES: 0, PRIME: 0}
        for node in self.walk():
            out[node.kind] += 1
        return out

    def max_quotient(self) -> int:
        return max((len(n.children) for n in self.walk() if n.kind == PRIME), default=0)

    def to_dict(self) -> dict:
        if self.kind == LEAF:
            return {"kind": LEAF, "vertex": min(self.vertices)}
        d = {"kind": self.kind, "children": [c.to_dict() for c in self.children]}
        if self.kind == PRIME:
            d["quotient_edges"] = [list(e) for e in self.quotient.edges()]
        return d


MDTree = MDNode


def module_closure(g: Graph, scope: int, start: int) -> int:
    """Smallest module of ``G[scope]`` containing the vertex mask ``start``."""
    s = start
    adj = g.adj
    while s != scope:
        add = 0
        for z in iter_bits(scope & ~s):
            seen = adj[z] & s
            if seen and seen != s:
                add |= 1 << z
        if not add:
            break
        s |= add
    return s


def is_module(g: Graph, s: Iterable[int], within: int | None = None) -> tuple[bool, tuple[int, int, int] | None]:
    """Module test; on failure returns ``(z, x, y)`` with z seeing x and missing y."""
    scope = g.full if within is None else within
    sm = mask_of(s)
    for z in iter_bits(scope & ~sm):
        seen = g.adj[z] & sm
        if seen and seen != sm:
            return False, (z, lowest(seen), lowest(sm & ~seen))
    return True, None


def modular_decomposition(g: Graph) -> MDNode:
    if g.n == 0:
        raise ValueError("empty graph has no modular decomposition")
    return _md(g, g.full)


def _md(g: Graph, scope: int) -> MDNode:
    verts = frozenset(iter_bits(scope))
    if not scope & (scope - 1):
        return MDNode(LEAF, verts)
    comps = component_masks(g, scope)
    if len(comps) > 1:
        return MDNode(PARALLEL, verts, tuple(_md(g, c) for c in comps))
    cocomps = cocomponent_masks(g, scope)
    if len(cocomps) > 1:
        return MDNode(SERIES, verts, tuple(_md(g, c) for c in cocomps))
    parts = _maximal_strong_modules(g, scope)
    reps = [lowest(p) for p in parts]
    quotient, _ = induced_by_mask(g, mask_of(reps))
    # reps are ascending because parts are ordered by least id
    return MDNode(PRIME, verts, tuple(_md(g, p) for p in parts), quotient)


def _maximal_strong_modules(g: Graph, scope: int) -> list[int]:
    """Partition of a connected, co-connected ``G[scope]`` into maximal strong modules."""
    parts = []
    left = scope
    while left:
        v = lowest(left)
        part = 1 << v
        for u in iter_bits(left & ~part):
            if part >> u & 1:
                continue
            c = module_closure(g, scope, 1 << v | 1 << u)
            if c != scope:
                part |= c
        parts.append(part)
        left &= ~part
    return sorted(parts, key=lowest)


# -- MWIS along the tree -------------------------------------------------------


def combine_md(
    kind: str,
    child_values: Sequence[int],
    quotient: Graph | None = None,
    prime_solver: Callable[[Graph, Sequence[int]], int] | None = None,
) -> int:
    """Value at a node from its children's values."""
    if kind == PARALLEL:
        return sum(child_values)
    if kind == SERIES:
        return max(child_values)
    if kind == PRIME:
        if quotient is None or prime_solver is None:
            raise ValueError("prime nodes need the quotient and a solver")
        return prime_solver(quotient, child_values)
    if kind == LEAF:
        (value,) = child_values
        return value
    raise ValueError(f"unknown node kind {kind!r}")


def evaluate_md(
    node: MDNode,
    weights: Sequence[int],
    prime_solver: Callable[[Graph, Sequence[int]], tuple[int, int]],
) -> tuple[int, int]:
    """Bottom-up MWIS; returns ``(value, chosen mask)``.

    ``prime_solver(quotient, child_values)`` returns ``(value, chosen quotient mask)``.
    """
    if node.kind == LEAF:
        (v,) = node.vertices
        return (weights[v], 1 << v) if weights[v] > 0 else (0, 0)
    results = [evaluate_md(c, weights, prime_solver) for c in node.children]
    values = [r[0] for r in results]
    if node.kind == PARALLEL:
        chosen = 0
        for _, m in results:
            chosen |= m
        return sum(values), chosen
    if node.kind == SERIES:
        best = max(range(len(results)), key=lambda i: (values[i], -i))
        return results[best]
    value, qmask = prime_solver(node.quotient, values)
    chosen = 0
    for i in iter_bits(qmask):
        chosen |= results[i][1]
    return value, chosen


# -- audits ----------------------------------------------------------------------


def audit_tree(g: Graph, node: MDNode, exhaustive_limit: int = 12) -> list[str]:
    """Problems found in a decomposition tree (empty list means valid)."""
    problems = []
    if set().union(*(n.vertices for n in node.walk() if n.kind == LEAF)) != node.vertices:
        problems.append("leaf set differs from root vertex set")
    for n in node.walk():
        if n.kind == LEAF:
            if len(n.vertices) != 1:
                problems.append(f"leaf with {len(n.vertices)} vertices")
            continue
        union = frozenset().union(*(c.vertices for c in n.children))
        if union != n.vertices or sum(len(c.vertices) for c in n.children) != len(n.vertices):
            problems.append(f"children of {sorted(n.vertices)} do not partition it")
        for c in n.children:
            ok, why = is_module(g, c.vertices, n.mask)
            if not ok:
                problems.append(f"child {sorted(c.vertices)} not a module: {why}")
        if n.kind == PARALLEL and len(component_masks(g, n.mask)) != len(n.children):
            problems.append("parallel node children are not its components")
        if n.kind == SERIES and len(cocomponent_masks(g, n.mask)) != len(n.children):
            problems.append("series node children are not its co-components")
        if n.kind == PRIME:
            q = n.quotient
            if q.n <= exhaustive_limit:
                nontrivial = exhaustive_nontrivial_module(q)
                if nontrivial is not None:
                    problems.append(f"prime quotient has module {sorted(nontrivial)}")
            reps = [min(c.vertices) for c in n.children]
            sub, _ = induced_by_mask(g, mask_of(reps))
            if sub != q:
                problems.append("quotient does not match representatives")
    return problems


def exhaustive_nontrivial_module(g: Graph) -> frozenset[int] | None:
    """Brute-force search over all vertex subsets of size 2..n-1."""
    verts = list(range(g.n))
    for size in range(2, g.n):
        for s in combinations(verts, size):
            ok, _ = is_module(g, s)
            if ok:
                return frozenset(s)
    return None


def is_prime(g: Graph) -> bool:
    """Only trivial modules (graphs on at most two vertices count as prime)."""
    if g.n <= 2:
        return True
    root = modular_decomposition(g)
    return root.kind == PRIME and all(c.kind == LEAF for c in root.children)


__all__ = [
    "LEAF",
    "MDNode",
    "MDTree",
    "PARALLEL",
    "PRIME",
    "SERIES",
    "audit_tree",
    "combine_md",
    "evaluate_md",
    "exhaustive_nontrivial_module",
    "is_module",
    "is_prime",
    "modular_decomposition",
    "module_closure",
]
