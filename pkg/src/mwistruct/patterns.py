"""Forbidden-subgraph detection and graph-class recognition.

Fixed patterns (at most five vertices) are found with a bitset backtracking
matcher anchored on the pattern's highest-degree role. Holes (chordless
cycles of length at least five) are found in polynomial time by closing an
induced P4 ``u-a-b-v`` through ``G - (N[a] | N[b])``; odd holes need a
budgeted enumeration of chordless paths.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .graph import (
    Graph,
    bits,
    complement,
    component_masks,
    induced_by_mask,
    iter_bits,
    lowest,
    mask_of,
    popcount,
    shortest_path_mask,
)


class SearchBudgetExceeded(RuntimeError):
    """An exponential search ran past its step budget."""


DEFAULT_CYCLE_BUDGET = 5_000_000

# name -> (vertex count, canonical edges); vertex i is the i-th letter a, b, c, ...
PATTERNS: dict[str, tuple[int, tuple[tuple[int, int], ...]]] = {
    "P3": (3, ((0, 1), (1, 2))),
    "P4": (4, ((0, 1), (1, 2), (2, 3))),
    "P5": (5, ((0, 1), (1, 2), (2, 3), (3, 4))),
    "C4": (4, ((0, 1), (1, 2), (2, 3), (0, 3))),
    "C5": (5, ((0, 1), (1, 2), (2, 3), (3, 4), (0, 4))),
    "diamond": (4, ((0, 1), (0, 2), (0, 3), (1, 3), (2, 3))),
    "dart": (5, ((0, 1), (0, 2), (0, 3), (1, 3), (2, 3), (3, 4))),
    "bull": (5, ((0, 1), (1, 2), (2, 3), (1, 4), (2, 4))),
    "gem": (5, ((0, 1), (1, 2), (2, 3), (0, 4), (1, 4), (2, 4), (3, 4))),
    "house": (5, ((0, 1), (1, 2), (2, 3), (0, 3), (1, 4), (2, 4))),
}

CYCLE_KINDS = ("hole", "odd-hole", "anti-hole", "odd-anti-hole", "C4-cycle", "odd-cycle", "2K2")


@dataclass(frozen=True)
class PatternWitness:
    """An induced copy of a pattern; ``vertices[i]`` plays canonical role ``i``.

    For hole kinds the vertices are listed in cycle order; for anti-hole kinds
    consecutive vertices are the co-edges.
    """

    kind: str
    vertices: tuple[int, ...]

    def audit(self, g: Graph) -> bool:
        """Check the witness edge by edge against ``g``."""
        vs = self.vertices
        if len(set(vs)) != len(vs) or any(not 0 <= v < g.n for v in vs):
            return False
        k = len(vs)
        if self.kind in PATTERNS:
            size, edges = PATTERNS[self.kind]
            want = {frozenset(e) for e in edges}
            return k == size and all(
                g.has_edge(vs[i], vs[j]) == (frozenset((i, j)) in want)
                for i in range(k)
                for j in range(i + 1, k)
            )
        if self.kind == "odd-cycle":
            return k % 2 == 1 and all(g.has_edge(vs[i], vs[(i + 1) % k]) for i in range(k))
        if self.kind == "co-edge":
            return k == 2 and not g.has_edge(vs[0], vs[1])
        if self.kind == "co-odd-cycle":
            co = complement(g)
            return k % 2 == 1 and all(co.has_edge(vs[i], vs[(i + 1) % k]) for i in range(k))
        if self.kind == "2K2":
            return k == 4 and _is_induced_cycle_like(g, vs, ((0, 1), (2, 3)))
        anti = self.kind in ("anti-hole", "odd-anti-hole")
        host = complement(g) if anti else g
        if self.kind == "C4-cycle":
            min_len = 4
        else:
            min_len = 5
        if k < min_len:
            return False
        if self.kind.startswith("odd") and k % 2 == 0:
            return False
        cyc = tuple((i, (i + 1) % k) for i in range(k))
        return _is_induced_cycle_like(host, vs, cyc)


def _is_induced_cycle_like(g: Graph, vs, edges) -> bool:
    want = {frozenset(e) for e in edges}
    k = len(vs)
    return all(
        g.has_edge(vs[i], vs[j]) == (frozenset((i, j)) in want)
        for i in range(k)
        for j in range(i + 1, k)
    )


@dataclass(frozen=True)
class Verdict:
    """Outcome of a recognizer: ``ok`` plus evidence either way."""

    ok: bool
    witness: PatternWitness | None = None
    certificate: object = field(default=None, compare=False)

    def __bool__(self) -> bool:
        return self.ok


# -- fixed patterns ----------------------------------------------------------


def _match_order(size: int, edges) -> list[int]:
    padj = [0] * size
    for i, j in edges:
        padj[i] |= 1 << j
        padj[j] |= 1 << i
    deg = [popcount(a) for a in padj]
    order = [max(range(size), key=lambda r: (deg[r], -r))]
    while len(order) < size:
        placed = mask_of(order)
        rest = [r for r in range(size) if r not in order]
        order.append(max(rest, key=lambda r: (popcount(padj[r] & placed), deg[r], -r)))
    return order


_ORDERS = {k: _match_order(*v) for k, v in PATTERNS.items()}
_PADJ = {}
for _k, (_size, _edges) in PATTERNS.items():
    _a = [0] * _size
    for _i, _j in _edges:
        _a[_i] |= 1 << _j
        _a[_j] |= 1 << _i
    _PADJ[_k] = _a


def _match(g: Graph, kind: str, within: int, fixed: dict[int, int]) -> tuple[int, ...] | None:
    size, _ = PATTERNS[kind]
    padj = _PADJ[kind]
    pdeg = [popcount(a) for a in padj]
    order = _ORDERS[kind]
    adj = g.adj
    mapping: dict[int, int] = dict(fixed)
    used = mask_of(fixed.values())

    def candidates(role: int) -> int:
        cand = within & ~used
        for q, x in mapping.items():
            if padj[role] >> q & 1:
                cand &= adj[x]
            else:
                cand &= ~adj[x]
        return cand

    # fixed roles must be consistent with each other
    for r, x in fixed.items():
        for q, y in fixed.items():
            if q != r and bool(padj[r] >> q & 1) != bool(adj[x] >> y & 1):
                return None

    todo = [r for r in order if r not in fixed]

    def rec(i: int) -> bool:
        nonlocal used
        if i == len(todo):
            return True
        role = todo[i]
        for x in iter_bits(candidates(role)):
            if popcount(adj[x] & within) < pdeg[role]:
                continue
            mapping[role] = x
            used |= 1 << x
            if rec(i + 1):
                return True
            used &= ~(1 << x)
            del mapping[role]
        return False

    if rec(0):
        return tuple(mapping[r] for r in range(size))
    return None


def find_fixed_pattern(
    g: Graph, kind: str, *, within: int | None = None, through: int | None = None
) -> PatternWitness | None:
    """Find an induced copy of a fixed pattern.

    ``within`` restricts the search to a vertex mask; ``through`` demands that
    the copy contain the given vertex (used for incremental generation).
    """
    if kind not in PATTERNS:
        raise ValueError(f"unknown pattern {kind!r}")
    scope = g.full if within is None else within
    if through is None:
        found = _match(g, kind, scope, {})
        return PatternWitness(kind, found) if found else None
    size, _ = PATTERNS[kind]
    best = None
    for role in range(size):
        found = _match(g, kind, scope, {role: through})
        if found and (best is None or found < best):
            best = found
    return PatternWitness(kind, best) if best else None


# -- holes ---------------------------------------------------------------------


def _hole_via_p4(g: Graph, scope: int, through: int | None = None) -> tuple[int, ...] | None:
    adj = g.adj
    starts = [through] if through is not None else bits(scope)
    for a in starts:
        na = adj[a] & scope
        for b in iter_bits(na):
            nb = adj[b] & scope
            us = na & ~nb & ~(1 << b)
            ts = nb & ~na & ~(1 << a)
            if not us or not ts:
                continue
            rest = scope & ~(na | nb | 1 << a | 1 << b)
            for comp in component_masks(g, rest):
                touch_u = [u for u in iter_bits(us) if adj[u] & comp]
                if not touch_u:
                    continue
                tc = 0
                for t in iter_bits(ts):
                    if adj[t] & comp:
                        tc |= 1 << t
                for u in touch_u:
                    far = tc & ~adj[u]
                    if far:
                        v = lowest(far)
                        path = shortest_path_mask(g, v, u, comp)
                        return (a, b) + tuple(path)
    return None


def _chordless_cycle_search(
    g: Graph,
    scope: int,
    min_len: int,
    odd: bool,
    budget: int | None,
) -> tuple[int, ...] | None:
    """Enumerate chordless cycles by least vertex; exact, exponential worst case."""
    adj = g.adj
    steps = 0
    limit = DEFAULT_CYCLE_BUDGET if budget is None else budget

    for s in iter_bits(scope):
        higher = scope & ~((1 << (s + 1)) - 1)
        ns = adj[s] & higher
        path = [s]

        def rec(block: int, pathmask: int) -> tuple[int, ...] | None:
            nonlocal steps
            steps += 1
            if steps > limit:
                raise SearchBudgetExceeded(f"chordless cycle search exceeded {limit} steps")
            last = path[-1]
            cand = adj[last] & higher & ~block & ~pathmask
            for x in iter_bits(cand):
                if ns >> x & 1 and len(path) >= 2:
                    length = len(path) + 1
                    if (
                        len(path) >= 3
                        and path[1] < x
                        and length >= min_len
                        and (not odd or length % 2 == 1)
                    ):
                        return tuple(path) + (x,)
                    continue
                path.append(x)
                # interior vertices (all but s and the new last) may not see later vertices
                new_block = block | (adj[last] | 1 << last if len(path) > 2 else 0)
                found = rec(new_block, pathmask | 1 << x)
                path.pop()
                if found:
                    return found
            return None

        found = rec(0, 1 << s)
        if found:
            return found
    return None


def _hole_kind(odd: bool, anti: bool) -> str:
    base = "anti-hole" if anti else "hole"
    return "odd-" + base if odd else base


def find_hole(
    g: Graph,
    min_len: int = 5,
    parity: str = "any",
    *,
    within: int | None = None,
    through: int | None = None,
    budget: int | None = None,
) -> PatternWitness | None:
    """Find a chordless cycle of length >= ``min_len`` (``parity`` 'any' or 'odd')."""
    if min_len < 5:
        raise ValueError("holes have at least five vertices")
    if parity not in ("any", "odd"):
        raise ValueError("parity must be 'any' or 'odd'")
    scope = g.full if within is None else within
    odd = parity == "odd"
    if min_len == 5 and not odd:
        found = _hole_via_p4(g, scope, through)
        return PatternWitness("hole", found) if found else None
    # any hole at all is a prerequisite; the polynomial test prunes most graphs
    if _hole_via_p4(g, scope, through) is None:
        return None
    if through is not None:
        raise ValueError("'through' is only supported for min_len=5, parity='any'")
    found = _chordless_cycle_search(g, scope, min_len, odd, budget)
    return PatternWitness(_hole_kind(odd, False), found) if found else None


def find_antihole(
    g: Graph,
    min_len: int = 5,
    parity: str = "any",
    *,
    within: int | None = None,
    budget: int | None = None,
) -> PatternWitness | None:
    """Hole search in the complement; consecutive witness vertices are co-edges."""
    found = find_hole(complement(g), min_len, parity, within=within, budget=budget)
    if found is None:
        return None
    return PatternWitness(_hole_kind(parity == "odd", True), found.vertices)


def find_c4(g: Graph, within: int | None = None) -> PatternWitness | None:
    found = find_fixed_pattern(g, "C4", within=within)
    return PatternWitness("C4-cycle", found.vertices) if found else None


# -- recognizers ----------------------------------------------------------------


def mcs_order(g: Graph, within: int | None = None) -> list[int]:
    """Maximum cardinality search; returns vertices in visiting order."""
    scope = g.full if within is None else within
    weight = {v: 0 for v in iter_bits(scope)}
    order = []
    left = scope
    while left:
        v = max(iter_bits(left), key=lambda x: (weight[x], -x))
        order.append(v)
        left &= ~(1 << v)
        for u in iter_bits(g.adj[v] & left):
            weight[u] += 1
    return order


def is_chordal(g: Graph, within: int | None = None) -> Verdict:
    """Chordality by MCS; certificate is a perfect elimination ordering."""
    scope = g.full if within is None else within
    peo = mcs_order(g, scope)[::-1]
    pos = {v: i for i, v in enumerate(peo)}
    for v in peo:
        later = [u for u in iter_bits(g.adj[v] & scope) if pos[u] > pos[v]]
        if not later:
            continue
        parent = min(later, key=pos.__getitem__)
        rest = mask_of(later) & ~(1 << parent)
        if rest & ~g.adj[parent]:
            c4 = find_c4(g, scope)
            witness = c4 or find_hole(g, within=scope)
            return Verdict(False, witness)
    return Verdict(True, certificate=peo)


def is_weakly_chordal(g: Graph, within: int | None = None) -> Verdict:
    hole = find_hole(g, within=within)
    if hole:
        return Verdict(False, hole)
    anti = find_antihole(g, within=within)
    if anti:
        return Verdict(False, anti)
    return Verdict(True)


def is_perfect_desk(g: Graph, within: int | None = None, budget: int | None = None) -> Verdict:
    """Perfection via odd holes and odd anti-holes; exact, budgeted."""
    hole = find_hole(g, parity="odd", within=within, budget=budget)
    if hole:
        return Verdict(False, hole)
    anti = find_antihole(g, parity="odd", within=within, budget=budget)
    if anti:
        return Verdict(False, anti)
    return Verdict(True)


def two_coloring(g: Graph, within: int | None = None) -> Verdict:
    """Bipartiteness; certificate maps vertex -> side, witness is an odd cycle."""
    scope = g.full if within is None else within
    color: dict[int, int] = {}
    parent: dict[int, int] = {}
    depth: dict[int, int] = {}
    for root in iter_bits(scope):
        if root in color:
            continue
        color[root], parent[root], depth[root] = 0, -1, 0
        queue = [root]
        for x in queue:
            for y in iter_bits(g.adj[x] & scope):
                if y not in color:
                    color[y], parent[y], depth[y] = 1 - color[x], x, depth[x] + 1
                    queue.append(y)
                elif color[y] == color[x]:
                    return Verdict(False, PatternWitness("odd-cycle", _tree_cycle(parent, depth, x, y)))
    return Verdict(True, certificate=color)


def _tree_cycle(parent, depth, x, y) -> tuple[int, ...]:
    px, py = [x], [y]
    while depth[px[-1]] > depth[py[-1]]:
        px.append(parent[px[-1]])
    while depth[py[-1]] > depth[px[-1]]:
        py.append(parent[py[-1]])
    while px[-1] != py[-1]:
        px.append(parent[px[-1]])
        py.append(parent[py[-1]])
    return tuple(px + py[-2::-1])


def is_bipartite(g: Graph, within: int | None = None) -> Verdict:
    return two_coloring(g, within)


def is_chordal_bipartite(g: Graph, within: int | None = None) -> Verdict:
    col = two_coloring(g, within)
    if not col:
        return col
    hole = find_hole(g, within=within)
    return Verdict(False, hole) if hole else col


@dataclass(frozen=True)
class ChainOrder:
    """Certificate of a bipartite chain graph.

    ``xs`` lists one side ordered so neighborhoods increase by inclusion;
    ``ys`` is the other side; ``isolated`` vertices belong to neither.
    """

    xs: tuple[int, ...]
    ys: tuple[int, ...]
    isolated: tuple[int, ...]


def is_bipartite_chain(g: Graph, within: int | None = None) -> Verdict:
    """Bipartite chain recognition; failure evidence is an odd cycle or an induced 2K2."""
    scope = g.full if within is None else within
    col = two_coloring(g, scope)
    if not col:
        return col
    color = col.certificate
    comps = component_masks(g, scope)
    nontrivial = [c for c in comps if c & (c - 1)]
    isolated = tuple(v for c in comps if not c & (c - 1) for v in iter_bits(c))
    if len(nontrivial) > 1:
        e1 = _some_edge(g, nontrivial[0])
        e2 = _some_edge(g, nontrivial[1])
        return Verdict(False, PatternWitness("2K2", e1 + e2))
    if not nontrivial:
        return Verdict(True, certificate=ChainOrder((), (), isolated))
    comp = nontrivial[0]
    first = lowest(comp)
    xs = [v for v in iter_bits(comp) if color[v] == color[first]]
    ys = [v for v in iter_bits(comp) if color[v] != color[first]]
    xs.sort(key=lambda v: (popcount(g.adj[v] & scope), v))
    for x1, x2 in zip(xs, xs[1:]):
        n1, n2 = g.adj[x1] & scope, g.adj[x2] & scope
        if n1 & ~n2:
            y1 = lowest(n1 & ~n2)
            y2 = lowest(n2 & ~n1)
            return Verdict(False, PatternWitness("2K2", (x1, y1, x2, y2)))
    return Verdict(True, certificate=ChainOrder(tuple(xs), tuple(ys), isolated))


def _some_edge(g: Graph, comp: int) -> tuple[int, int]:
    u = lowest(comp)
    return (u, lowest(g.adj[u] & comp))


def is_cobipartite_chain(g: Graph, within: int | None = None) -> Verdict:
    v = is_bipartite_chain(complement(g), within)
    if v or v.witness is None:
        return v
    kind = {"odd-cycle": "co-odd-cycle", "2K2": "C4-cycle"}[v.witness.kind]
    # complement of an induced 2K2 (x1 y1 x2 y2) is the 4-cycle x1 x2 y1 y2
    vs = v.witness.vertices
    if kind == "C4-cycle":
        vs = (vs[0], vs[2], vs[1], vs[3])
    return Verdict(False, PatternWitness(kind, vs))


def is_clique_graph(g: Graph, within: int | None = None) -> Verdict:
    scope = g.full if within is None else within
    for x in iter_bits(scope):
        miss = scope & ~g.adj[x] & ~(1 << x)
        if miss:
            return Verdict(False, PatternWitness("co-edge", (x, lowest(miss))))
    return Verdict(True)


# -- class membership ---------------------------------------------------------

# detector name -> function(g, within, budget) returning a witness or None
_DETECTORS: dict[str, Callable[..., PatternWitness | None]] = {
    **{k: (lambda kind: lambda g, w, b: find_fixed_pattern(g, kind, within=w))(k) for k in PATTERNS},
    "hole": lambda g, w, b: find_hole(g, within=w),
    "odd-hole": lambda g, w, b: find_hole(g, parity="odd", within=w, budget=b),
    "anti-hole": lambda g, w, b: find_antihole(g, within=w),
    "odd-anti-hole": lambda g, w, b: find_antihole(g, parity="odd", within=w, budget=b),
}

PIPELINE_CLASSES: dict[str, tuple[str, ...]] = {
    "odd-hole-dart-free": ("dart", "odd-hole"),
    "hole-dart-free": ("dart", "hole"),
    "odd-hole-bull-free": ("bull", "odd-hole"),
    "hole-bull-free": ("bull", "hole"),
    "p5-bull-free": ("bull", "P5"),
}


def class_detectors(name: str) -> tuple[str, ...]:
    """Forbidden structures for a class name.

    Accepts pipeline class tags, single ``<pattern>-free`` names and
    comma-joined combinations such as ``"hole-free,dart-free"``.
    """
    if name in PIPELINE_CLASSES:
        return PIPELINE_CLASSES[name]
    out = []
    for part in name.split(","):
        part = part.strip()
        if not part.endswith("-free"):
            raise ValueError(f"unknown class {name!r}")
        base = part[: -len("-free")]
        key = {"p5": "P5", "p4": "P4", "p3": "P3", "c4": "C4", "c5": "C5"}.get(base.lower(), base)
        if key not in _DETECTORS:
            raise ValueError(f"unknown forbidden structure {base!r}")
        out.append(key)
    return tuple(out)


def in_class(
    g: Graph, name: str, *, within: int | None = None, budget: int | None = None
) -> Verdict:
    """Conjunction of the class's detectors; the first violation is returned."""
    for det in class_detectors(name):
        w = _DETECTORS[det](g, within, budget)
        if w is not None:
            return Verdict(False, w)
    return Verdict(True)


def violations_through(g: Graph, name: str, x: int) -> PatternWitness | None:
    """A forbidden structure of a hole/fixed-pattern class that contains ``x``.

    Only valid when ``G - x`` is already in the class; used by incremental
    generators. Odd-hole classes are checked globally.
    """
    for det in class_detectors(name):
        if det in PATTERNS:
            w = find_fixed_pattern(g, det, through=x)
        elif det == "hole":
            found = _hole_via_p4(g, g.full, through=x)
            w = PatternWitness("hole", found) if found else None
        else:
            w = _DETECTORS[det](g, None, None)
        if w is not None:
            return w
    return None


RECOGNIZERS: dict[str, Callable[[Graph], Verdict]] = {
    "chordal": is_chordal,
    "weakly-chordal": is_weakly_chordal,
    "perfect": is_perfect_desk,
    "bipartite": is_bipartite,
    "chordal-bipartite": is_chordal_bipartite,
    "bipartite-chain": is_bipartite_chain,
    "cobipartite-chain": is_cobipartite_chain,
    "clique": is_clique_graph,
}


def recognize(g: Graph, name: str) -> Verdict:
    """Recognize a named graph class or a forbidden-subgraph class."""
    if name in RECOGNIZERS:
        return RECOGNIZERS[name](g)
    return in_class(g, name)


def subgraph_verdict(g: Graph, vertices: Iterable[int], check: Callable[[Graph], Verdict]) -> Verdict:
    """Run a recognizer on ``G[vertices]`` and translate the witness back."""
    h, labels = induced_by_mask(g, mask_of(vertices))
    v = check(h)
    if v.witness is None:
        return v
    return Verdict(v.ok, PatternWitness(v.witness.kind, tuple(labels[i] for i in v.witness.vertices)), v.certificate)
