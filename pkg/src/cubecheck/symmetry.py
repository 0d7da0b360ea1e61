"""Automorphism groups, vertex-transitivity and isomorphism by individualization–refinement.

Partitions are stored as vertex colorings: ``color[v]`` is the index of the
cell holding ``v`` and cells are ordered by index.  Refinement is the usual
neighbor-count (1-dimensional Weisfeiler–Leman) process; new cells are
ordered by their signatures, so the result is a canonical function of the
input coloring and two refinements can be compared by their traces.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graph import Graph, UNREACHABLE, degree_sequence


def refine(adj: Sequence[Sequence[int]], color: Sequence[int]) -> tuple[list[int], tuple]:
    """Coarsest equitable refinement of ``color``; returns the coloring and its trace."""
    color = list(color)
    n = len(color)
    k = len(set(color))
    trace = []
    while True:
        sig = [(color[v], tuple(sorted([color[w] for w in adj[v]]))) for v in range(n)]
        keys = sorted(set(sig))
        if len(keys) == k:
            break
        index = {s: i for i, s in enumerate(keys)}
        color = [index[s] for s in sig]
        trace.append((0, tuple(keys)))
        k = len(keys)
    trace.append((1, tuple(sorted(Counter(color).items()))))
    return color, tuple(trace)


def individualize(color: Sequence[int], v: int) -> list[int]:
    """Split ``v`` off its cell, placing the singleton first."""
    c = color[v]
    return [x if x < c or w == v else x + 1 for w, x in enumerate(color)]


def _cells(color: Sequence[int]) -> list[list[int]]:
    cells: list[list[int]] = [[] for _ in range(max(color) + 1)] if color else []
    for v, c in enumerate(color):
        cells[c].append(v)
    return cells


def _first_open_cell(color: Sequence[int]) -> int | None:
    counts = Counter(color)
    open_cells = [c for c, k in counts.items() if k > 1]
    return min(open_cells) if open_cells else None


def _is_edge_preserving(g: Graph, h: Graph, perm: Sequence[int]) -> bool:
    return all(h.has_edge(perm[u], perm[v]) for u, v in g.edges)


def _match(g: Graph, cg: list[int], tg: tuple, h: Graph, ch: list[int], th: tuple) -> list[int] | None:
    """Search an isomorphism ``g → h`` carrying each cell of ``cg`` onto the same cell of ``ch``."""
    if tg != th:
        return None
    c = _first_open_cell(cg)
    if c is None:
        where = {col: v for v, col in enumerate(ch)}
        perm = [where[col] for col in cg]
        return perm if _is_edge_preserving(g, h, perm) else None
    x = cg.index(c)
    cx, tx = refine(g.adj, individualize(cg, x))
    for y in (v for v, col in enumerate(ch) if col == c):
        cy, ty = refine(h.adj, individualize(ch, y))
        perm = _match(g, cx, tx, h, cy, ty)
        if perm is not None:
            return perm
    return None


def _orbit(start: int, gens: Sequence[Sequence[int]]) -> set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for p in gens:
            w = p[v]
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def _stabilizer_chain(g: Graph, color: list[int], trace: tuple, first: int | None = None):
    """Generators and order of the color-preserving automorphism group.

    ``first`` forces the first base point (used to make vertex 0 the base).
    Returns ``(generators, order, base_orbit)``; the orbit is ``None`` when
    ``first`` was asked for but is already fixed by the coloring.
    """
    if first is not None and color.count(color[first]) > 1:
        b = first
        c = color[b]
    else:
        c = _first_open_cell(color)
        if c is None:
            return [], 1, None
        b = color.index(c)
    cb, tb = refine(g.adj, individualize(color, b))
    gens, sub_order, _ = _stabilizer_chain(g, cb, tb)
    orbit = _orbit(b, gens)
    for w in range(g.n):
        if color[w] != c or w in orbit:
            continue
        cw, tw = refine(g.adj, individualize(color, w))
        perm = _match(g, cb, tb, g, cw, tw)
        if perm is not None:
            gens.append(perm)
            orbit = _orbit(b, gens)
    order = sub_order * len(orbit)
    return gens, order, (orbit if first is None or b == first else None)


@dataclass(frozen=True)
class AutomorphismReport:
    generators: tuple[tuple[int, ...], ...]
    group_order: int
    orbit_of_0: frozenset[int]
    stabilizer_order_of_0: int

    def orbits(self, n: int) -> list[list[int]]:
        """Vertex orbits, each sorted, ordered by smallest member."""
        seen: set[int] = set()
        out = []
        for v in range(n):
            if v not in seen:
                o = _orbit(v, self.generators)
                seen |= o
                out.append(sorted(o))
        return out


def automorphisms(g: Graph) -> AutomorphismReport:
    """Exact automorphism group via a stabilizer chain whose first base point is vertex 0."""
    if g.n == 0:
        return AutomorphismReport((), 1, frozenset(), 1)
    color, trace = refine(g.adj, [0] * g.n)
    gens, order, orbit = _stabilizer_chain(g, color, trace, first=0)
    for p in gens:
        if sorted(p) != list(range(g.n)) or not _is_edge_preserving(g, g, p):
            raise AssertionError("search produced a non-automorphism")
    orbit0 = frozenset(_orbit(0, gens))
    if orbit is not None and orbit != orbit0:
        raise AssertionError("base orbit disagrees with generator closure")
    if order % len(orbit0):
        raise AssertionError("orbit size does not divide the group order")
    return AutomorphismReport(tuple(map(tuple, gens)), order, orbit0, order // len(orbit0))


def is_vertex_transitive(g: Graph) -> bool:
    return g.n > 0 and len(automorphisms(g).orbit_of_0) == g.n


def has_trivial_stabilizers(g: Graph) -> bool:
    return automorphisms(g).stabilizer_order_of_0 == 1


# --------------------------------------------------------------------------
# isomorphism

@dataclass(frozen=True)
class IsoCertificate:
    """Either a verified bijection ``mapping[v_g] = v_h`` or a refuting invariant."""

    isomorphic: bool
    mapping: tuple[int, ...] | None = None
    refutation: str | None = None

    def __bool__(self) -> bool:
        return self.isomorphic


def _distance_profile(g: Graph) -> list[tuple]:
    d = g.dist
    rows = []
    for r in d:
        rows.append(tuple(sorted(Counter(int(x) for x in r).items())))
    return sorted(rows)


def _theta_sizes(g: Graph) -> list[int] | None:
    from .metric import theta_star_classes

    if g.n == 0 or (g.dist == UNREACHABLE).any():
        return None
    return sorted(len(c) for c in theta_star_classes(g).classes)


def is_isomorphic(g: Graph, h: Graph) -> IsoCertificate:
    """Decide ``g ≅ h``; cheap invariants first, then individualization–refinement search."""
    if g.n != h.n:
        return IsoCertificate(False, refutation=f"order {g.n} != {h.n}")
    if g.m != h.m:
        return IsoCertificate(False, refutation=f"size {g.m} != {h.m}")
    if degree_sequence(g) != degree_sequence(h):
        return IsoCertificate(False, refutation="degree sequence")
    if _distance_profile(g) != _distance_profile(h):
        return IsoCertificate(False, refutation="distance distribution")
    tg, th = _theta_sizes(g), _theta_sizes(h)
    if tg != th:
        return IsoCertificate(False, refutation="Θ*-class sizes")
    if g.n == 0:
        return IsoCertificate(True, mapping=())
    cg, trg = refine(g.adj, [0] * g.n)
    ch, trh = refine(h.adj, [0] * h.n)
    perm = _match(g, cg, trg, h, ch, trh)
    if perm is None:
        return IsoCertificate(False, refutation="exhaustive search")
    inv = [0] * g.n
    for v, w in enumerate(perm):
        inv[w] = v
    if not (_is_edge_preserving(g, h, perm) and _is_edge_preserving(h, g, inv)):
        raise AssertionError("search produced a non-isomorphism")
    return IsoCertificate(True, mapping=tuple(perm))


# --------------------------------------------------------------------------
# canonical form

def _leaf_certificate(g: Graph, color: Sequence[int]) -> tuple:
    return tuple(sorted((min(color[u], color[v]), max(color[u], color[v])) for u, v in g.edges))


def canonical_labeling(g: Graph, color: Sequence[int] | None = None,
                       generators: Sequence[Sequence[int]] = ()) -> tuple[tuple, list[int]]:
    """Canonical certificate and the labeling ``v → position`` that produces it.

    ``color`` optionally seeds the partition (it must be isomorphism-invariant
    for the result to be canonical); ``generators`` of the automorphism group
    prune equivalent branches at the root.
    """
    start = [0] * g.n if color is None else list(color)
    c0, t0 = refine(g.adj, start)
    best: list = [None, None]

    def search(col: list[int], path: tuple, gens) -> None:
        c = _first_open_cell(col)
        if c is None:
            key = (path, _leaf_certificate(g, col))
            if best[0] is None or key < best[0]:
                best[0], best[1] = key, col
            return
        kids = []
        done: set[int] = set()
        for w in (v for v, x in enumerate(col) if x == c):
            if w in done:
                continue
            if gens:
                done |= _orbit(w, gens)
            cw, tw = refine(g.adj, individualize(col, w))
            kids.append((tw, cw))
        top = min(t for t, _ in kids)
        for tw, cw in kids:
            if tw == top:
                search(cw, path + (tw,), ())

    search(c0, (t0,), [list(p) for p in generators])
    return best[0][1], best[1]


def canonical_form(g: Graph) -> Graph:
    from .graph import relabel

    _, lab = canonical_labeling(g, generators=automorphisms(g).generators)
    return relabel(g, lab)
