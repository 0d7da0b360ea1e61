"""Convex and isometric cycles in partial cubes, and what is built from them.

A convex cycle of length ``2k`` is recovered from any antipodal pair
``s, t``: the interval ``I(s, t)`` is exactly the cycle.  Enumeration
therefore scans vertex pairs for intervals of size ``2·d(s, t)`` that induce
a cycle, and then checks convexity of the whole vertex set.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .graph import Graph, GraphError, diameter, is_cubic
from .metric import is_convex_subgraph, is_isometric_subgraph, theta_related


class HypothesisViolation(GraphError):
    """An input breaks the hypotheses an operation relies on."""


class TraverseNotFound(RuntimeError):
    """Exhaustive search found no convex traverse between two Θ-related edges.

    In a partial cube this would be a counterexample to the existence of
    convex traverses, so it is raised rather than returned.
    """

    def __init__(self, e1, e2):
        super().__init__(f"no convex traverse from {e1} to {e2}")
        self.e1, self.e2 = e1, e2


def canonical_cycle(seq: Sequence[int]) -> tuple[int, ...]:
    """Rotation/reflection of a cyclic sequence that is lexicographically least."""
    seq = list(seq)
    i = seq.index(min(seq))
    fwd = seq[i:] + seq[:i]
    back = [fwd[0]] + fwd[1:][::-1]
    return tuple(min(fwd, back))


def cycle_edges(seq: Sequence[int]) -> list[tuple[int, int]]:
    k = len(seq)
    return [(min(seq[i], seq[(i + 1) % k]), max(seq[i], seq[(i + 1) % k])) for i in range(k)]


@dataclass(frozen=True)
class CycleRecord:
    """A cycle stored by its canonical vertex sequence (the closing edge is implicit)."""

    vertices: tuple[int, ...]
    convex: bool
    isometric: bool

    @property
    def length(self) -> int:
        return len(self.vertices)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return cycle_edges(self.vertices)

    def contains_path(self, a: int, b: int, c: int) -> bool:
        """Whether ``a-b-c`` are consecutive (either direction)."""
        vs = self.vertices
        if b not in vs:
            return False
        i = vs.index(b)
        k = len(vs)
        return {vs[i - 1], vs[(i + 1) % k]} == {a, c}

    def contains_edge(self, u: int, v: int) -> bool:
        e = (min(u, v), max(u, v))
        return e in self.edges


def make_cycle_record(g: Graph, seq: Sequence[int], d: np.ndarray | None = None) -> CycleRecord:
    seq = [int(v) for v in seq]
    if len(seq) < 3 or len(set(seq)) != len(seq):
        raise GraphError("a cycle needs at least three distinct vertices")
    for a, b in cycle_edges(seq):
        if not g.has_edge(a, b):
            raise GraphError(f"{(a, b)} is not an edge")
    d = g.dist if d is None else d
    iso = _is_isometric_cycle(seq, d)
    conv = iso and is_convex_subgraph(g, seq, d)
    return CycleRecord(canonical_cycle(seq), conv, iso)


def _is_isometric_cycle(seq: Sequence[int], d: np.ndarray) -> bool:
    k = len(seq)
    idx = np.arange(k)
    gap = np.abs(idx[:, None] - idx[None, :])
    cyc = np.minimum(gap, k - gap)
    return bool(np.array_equal(d[np.ix_(seq, seq)], cyc))


def _induced_cycle_order(g: Graph, verts: Sequence[int]) -> list[int] | None:
    """Cyclic order of ``verts`` if they induce a single cycle, else ``None``."""
    vs = set(verts)
    nbrs = {}
    for v in verts:
        nb = [w for w in g.adj[v] if w in vs]
        if len(nb) != 2:
            return None
        nbrs[v] = nb
    start = min(verts)
    order = [start]
    prev, cur = start, min(nbrs[start])
    while cur != start:
        order.append(cur)
        a, b = nbrs[cur]
        prev, cur = cur, (b if a == prev else a)
    return order if len(order) == len(verts) else None


def _default_max_len(g: Graph, d: np.ndarray) -> int:
    return 2 * diameter(g, d) + 2


def _check_max_len(max_len: int) -> None:
    if max_len % 2:
        raise GraphError(f"max_len must be even in a bipartite graph, got {max_len}")
    if max_len < 4:
        raise GraphError("max_len must be at least 4")


def _interval_rows(d: np.ndarray, s: int) -> np.ndarray:
    """``rows[t, z]`` is true iff ``z`` lies on a shortest ``s,t``-path."""
    return (d[s][None, :] + d) == d[s][:, None]


def enumerate_convex_cycles(g: Graph, max_len: int | None = None,
                            d: np.ndarray | None = None) -> list[CycleRecord]:
    """Every convex cycle of length ``<= max_len`` (default ``2·diam + 2``), each once.

    Sorted by length, then by canonical vertex sequence.
    """
    d = g.dist if d is None else d
    if max_len is None:
        max_len = _default_max_len(g, d)
    _check_max_len(max_len)
    found: set[tuple[int, ...]] = set()
    rejected: set[tuple[int, ...]] = set()
    for s in range(g.n):
        rows = _interval_rows(d, s)
        sizes = rows.sum(axis=1)
        half = d[s]
        for t in np.nonzero((half >= 2) & (2 * half <= max_len) & (sizes == 2 * half))[0]:
            t = int(t)
            if t < s:
                continue
            order = _induced_cycle_order(g, [int(z) for z in np.nonzero(rows[t])[0]])
            if order is None:
                continue
            key = canonical_cycle(order)
            if key in found or key in rejected:
                continue
            if is_convex_subgraph(g, key, d):
                found.add(key)
            else:
                rejected.add(key)
    return [CycleRecord(c, True, True) for c in sorted(found, key=lambda c: (len(c), c))]


def _geodesics(g: Graph, d: np.ndarray, s: int, t: int) -> Iterator[list[int]]:
    stack = [[s]]
    while stack:
        p = stack.pop()
        v = p[-1]
        if v == t:
            yield p
            continue
        for w in reversed(g.adj[v]):
            if d[w, t] == d[v, t] - 1:
                stack.append(p + [w])


def enumerate_isometric_cycles(g: Graph, max_len: int | None = None,
                               d: np.ndarray | None = None) -> list[CycleRecord]:
    """Every isometric even cycle of length ``<= max_len``; convexity is recorded per cycle."""
    d = g.dist if d is None else d
    if max_len is None:
        max_len = _default_max_len(g, d)
    _check_max_len(max_len)
    seen: dict[tuple[int, ...], CycleRecord] = {}
    for s in range(g.n):
        for t in range(s + 1, g.n):
            k = int(d[s, t])
            if k < 2 or 2 * k > max_len:
                continue
            paths = list(_geodesics(g, d, s, t))
            for i, p in enumerate(paths):
                inner = set(p[1:-1])
                for q in paths[i + 1:]:
                    if inner.intersection(q[1:-1]):
                        continue
                    seq = p + q[-2:0:-1]
                    key = canonical_cycle(seq)
                    if key in seen:
                        continue
                    if _is_isometric_cycle(seq, d):
                        seen[key] = CycleRecord(key, is_convex_subgraph(g, key, d), True)
    return sorted(seen.values(), key=lambda c: (c.length, c.vertices))


def four_cycles(g: Graph) -> list[tuple[int, ...]]:
    """All 4-cycles as canonical sequences."""
    out = set()
    for a in range(g.n):
        for b in g.adj[a]:
            for c in g.adj[b]:
                if c == a:
                    continue
                for x in g.adj[c]:
                    if x != b and x != a and g.has_edge(x, a):
                        out.add(canonical_cycle((a, b, c, x)))
    return sorted(out)


# --------------------------------------------------------------------------
# shortest convex cycles through a 2-path, girth signature

def shortest_convex_cycle_through(g: Graph, u1: int, u: int, u2: int,
                                  d: np.ndarray | None = None) -> CycleRecord | None:
    """Shortest convex cycle containing the path ``u1-u-u2``; ``None`` if there is none.

    Lengths are tried upward from 4; the antipode ``t`` of ``u`` on such a
    cycle has ``I(u, t)`` equal to the cycle.  Ties go to the least canonical
    sequence.
    """
    d = g.dist if d is None else d
    if not (g.has_edge(u, u1) and g.has_edge(u, u2)) or u1 == u2:
        raise GraphError(f"{u1} and {u2} must be distinct neighbors of {u}")
    rows = _interval_rows(d, u)
    sizes = rows.sum(axis=1)
    top = int(d[u].max())
    for k in range(2, top + 1):
        hits = []
        for t in np.nonzero((d[u] == k) & (sizes == 2 * k))[0]:
            row = rows[int(t)]
            if not (row[u1] and row[u2]):
                continue
            order = _induced_cycle_order(g, [int(z) for z in np.nonzero(row)[0]])
            if order is None:
                continue
            key = canonical_cycle(order)
            rec = CycleRecord(key, True, True)
            if rec.contains_path(u1, u, u2) and is_convex_subgraph(g, key, d):
                hits.append(key)
        if hits:
            return CycleRecord(min(hits), True, True)
    return None


@dataclass(frozen=True)
class GirthSignature:
    """Sorted shortest-convex-cycle lengths over the three 2-paths at each vertex.

    ``g1 <= g2 <= g3`` are taken at vertex 0; ``constant`` says whether every
    vertex has the same triple.  A 2-path on no convex cycle contributes
    ``None``, sorted last.
    """

    g1: int | None
    g2: int | None
    g3: int | None
    per_vertex: tuple[tuple[int | None, int | None, int | None], ...]
    constant: bool

    def as_tuple(self) -> tuple:
        return (self.g1, self.g2, self.g3)


def _sort_lengths(xs: Iterable[int | None]) -> tuple:
    return tuple(sorted(xs, key=lambda x: (x is None, x or 0)))


class ConvexCycleIndex:
    """All convex cycles of a graph, indexed by edge and by 2-path."""

    def __init__(self, g: Graph, max_len: int | None = None, d: np.ndarray | None = None):
        self.g = g
        self.d = g.dist if d is None else d
        self.cycles = enumerate_convex_cycles(g, max_len, self.d)
        self.by_edge: dict[tuple[int, int], list[int]] = {e: [] for e in g.edges}
        self.by_path: dict[tuple[int, int, int], list[int]] = {}
        for i, c in enumerate(self.cycles):
            vs = c.vertices
            k = len(vs)
            for e in c.edges:
                self.by_edge[e].append(i)
            for j in range(k):
                a, b, x = vs[j - 1], vs[j], vs[(j + 1) % k]
                self.by_path.setdefault((b, min(a, x), max(a, x)), []).append(i)

    def through_path(self, u1: int, u: int, u2: int) -> list[CycleRecord]:
        return [self.cycles[i] for i in self.by_path.get((u, min(u1, u2), max(u1, u2)), [])]

    def through_edge(self, u: int, v: int) -> list[CycleRecord]:
        return [self.cycles[i] for i in self.by_edge[(min(u, v), max(u, v))]]

    def shortest_through(self, u1: int, u: int, u2: int) -> CycleRecord | None:
        cs = self.through_path(u1, u, u2)
        return min(cs, key=lambda c: (c.length, c.vertices)) if cs else None


def girth_signature(g: Graph, index: ConvexCycleIndex | None = None) -> GirthSignature:
    if not is_cubic(g):
        raise GraphError("girth signature needs a cubic graph")
    index = index or ConvexCycleIndex(g)
    per = []
    for u in range(g.n):
        a, b, c = g.adj[u]
        lens = []
        for x, y in ((a, b), (b, c), (c, a)):
            cyc = index.shortest_through(x, u, y)
            lens.append(cyc.length if cyc else None)
        per.append(_sort_lengths(lens))
    first = per[0]
    return GirthSignature(*first, tuple(per), all(p == first for p in per))


@dataclass(frozen=True)
class CoverageResult:
    covered: bool
    uncovered: tuple[int, int, int] | None = None  # (u1, u, u2)

    def __bool__(self) -> bool:
        return self.covered


def all_incident_pairs_covered(g: Graph, index: ConvexCycleIndex | None = None) -> CoverageResult:
    """Whether every pair of incident edges lies on a convex cycle."""
    index = index or ConvexCycleIndex(g)
    for u in range(g.n):
        nb = g.adj[u]
        for i in range(len(nb)):
            for j in range(i + 1, len(nb)):
                if not index.through_path(nb[i], u, nb[j]):
                    return CoverageResult(False, (nb[i], u, nb[j]))
    return CoverageResult(True)


# --------------------------------------------------------------------------
# traverses

@dataclass(frozen=True)
class ConvexTraverse:
    cycles: tuple[CycleRecord, ...]
    start_edge: tuple[int, int]  # (v1, u1)
    end_edge: tuple[int, int]  # (v2, u2), v2 on the v1 side
    side_v: tuple[int, ...]
    side_u: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.side_v) - 1


def _orient(seq: Sequence[int], a: int, b: int) -> list[int]:
    """Cyclic sequence rotated to start at ``a`` and walking away from ``b``."""
    seq = list(seq)
    i = seq.index(a)
    fwd = seq[i:] + seq[:i]
    if fwd[1] == b:
        fwd = [fwd[0]] + fwd[1:][::-1]
    return fwd


def find_convex_traverse(g: Graph, e1: tuple[int, int], e2: tuple[int, int],
                         index: ConvexCycleIndex | None = None) -> ConvexTraverse:
    """Breadth-first search for a convex traverse from ``e1 = (v1, u1)`` to ``e2``.

    Consecutive cycles meet exactly in one edge of the cut, other pairs are
    vertex-disjoint, and a partial chain is kept only while both of its sides
    extend to geodesics towards the far edge.  Fewest cycles wins; candidates
    are tried in canonical order.
    """
    d = g.dist
    v1, u1 = map(int, e1)
    a, b = map(int, e2)
    if not (g.has_edge(v1, u1) and g.has_edge(a, b)):
        raise GraphError("traverse endpoints must be edges")
    if {v1, u1} == {a, b}:
        raise GraphError("traverse needs two distinct edges")
    if not theta_related(g, (v1, u1), (a, b), d):
        raise GraphError(f"{e1} and {e2} are not Θ-related")
    v2, u2 = (a, b) if d[v1, a] < d[u1, a] else (b, a)
    index = index or ConvexCycleIndex(g, d=d)
    target = d[v1, v2]
    start_key = (min(v1, u1), max(v1, u1))
    end_key = (min(v2, u2), max(v2, u2))

    # state: (cycle ids, current (v, u), v-side, u-side)
    queue = deque([((), (v1, u1), (v1,), (u1,))])
    while queue:
        used, (v, u), pv, pu = queue.popleft()
        for ci in index.by_edge[(min(u, v), max(u, v))]:
            if ci in used:
                continue
            cyc = index.cycles[ci]
            cset = set(cyc.vertices)
            if used:
                if cyc.contains_edge(*start_key):
                    continue
                last = set(index.cycles[used[-1]].vertices)
                if cset & last != {u, v}:
                    continue
                if any(cset & set(index.cycles[x].vertices) for x in used[:-1]):
                    continue
            walk = _orient(cyc.vertices, v, u)
            half = len(walk) // 2
            v_half = walk[:half]
            nv, nu = walk[half - 1], walk[half]
            u_half = walk[half:][::-1]
            if not theta_related(g, (v1, u1), (nv, nu), d):
                continue
            new_pv = pv + tuple(v_half[1:])
            new_pu = pu + tuple(u_half[1:])
            if d[v1, nv] != len(new_pv) - 1 or d[v1, nv] + d[nv, v2] != target:
                continue
            if d[u1, nu] != len(new_pu) - 1 or d[u1, nu] + d[nu, u2] != target:
                continue
            key = (min(nv, nu), max(nv, nu))
            chain = used + (ci,)
            if key == end_key:
                return ConvexTraverse(tuple(index.cycles[x] for x in chain), (v1, u1), (v2, u2),
                                      new_pv, new_pu)
            if cyc.contains_edge(*end_key):
                continue
            queue.append((chain, (nv, nu), new_pv, new_pu))
    raise TraverseNotFound((v1, u1), (v2, u2))


# --------------------------------------------------------------------------
# intertwining

@dataclass(frozen=True)
class IntertwiningRecord:
    shared_path: tuple[int, ...]
    m: int  # edges on the shared path
    l1: int
    l2: int
    residue: int


def _shared_arc(seq: Sequence[int], shared: set[int]) -> list[int] | None:
    k = len(seq)
    inside = [v in shared for v in seq]
    starts = [i for i in range(k) if inside[i] and not inside[i - 1]]
    if len(starts) != 1:
        return None
    i = starts[0]
    arc = []
    while inside[i % k]:
        arc.append(seq[i % k])
        i += 1
    return arc


def intertwining(c1: CycleRecord | Sequence[int], c2: CycleRecord | Sequence[int]) -> IntertwiningRecord | None:
    """Residue ``(l1 + l2 - 4m)/2`` if the cycles share exactly one path of ``m >= 2`` edges."""
    s1 = list(c1.vertices if isinstance(c1, CycleRecord) else c1)
    s2 = list(c2.vertices if isinstance(c2, CycleRecord) else c2)
    shared = set(s1) & set(s2)
    if len(shared) < 3 or len(shared) in (len(s1), len(s2)):
        return None
    arc1, arc2 = _shared_arc(s1, shared), _shared_arc(s2, shared)
    if arc1 is None or arc2 is None:
        return None
    if arc1 != arc2 and arc1 != arc2[::-1]:
        return None
    m = len(arc1) - 1
    twice = len(s1) + len(s2) - 4 * m
    if twice < 0 or twice % 2:
        return None
    path = arc1 if arc1[0] < arc1[-1] else arc1[::-1]
    return IntertwiningRecord(tuple(path), m, len(s1), len(s2), twice // 2)


def shared_edge_count(c1: CycleRecord, c2: CycleRecord) -> int:
    return len(set(c1.edges) & set(c2.edges))


# --------------------------------------------------------------------------
# Euler count and claims audit

@dataclass(frozen=True)
class EulerReport:
    n: int
    e: int
    f4: int
    f6: int
    f: int
    chi: int


def euler_report(g: Graph, index: ConvexCycleIndex | None = None) -> EulerReport:
    """Face count of the 4-cycles plus convex 6-cycles of a (4,6,6) cubic partial cube."""
    if not is_cubic(g):
        raise HypothesisViolation("Euler count needs a cubic graph")
    index = index or ConvexCycleIndex(g)
    sig = girth_signature(g, index)
    if not sig.constant or sig.as_tuple() != (4, 6, 6):
        raise HypothesisViolation(f"girth signature {sig.as_tuple()} is not (4, 6, 6) at every vertex")
    squares = [CycleRecord(c, True, True) for c in four_cycles(g)]
    hexagons = [c for c in index.cycles if c.length == 6]
    faces = squares + hexagons
    for i, c in enumerate(faces):
        for c2 in faces[i + 1:]:
            if shared_edge_count(c, c2) > 1:
                raise HypothesisViolation(f"cycles {c.vertices} and {c2.vertices} share more than one edge")
    n, e, f4, f6 = g.n, g.m, len(squares), len(hexagons)
    chi = n - e + f4 + f6
    if 4 * f4 != n or 3 * f6 != n or 12 * chi != n:
        raise HypothesisViolation(f"face counts n={n} f4={f4} f6={f6} chi={chi} break 4f4=3f6=n=12chi")
    return EulerReport(n, e, f4, f6, f4 + f6, chi)


@dataclass(frozen=True)
class ClaimsAudit:
    nonconvex_four_cycles: tuple[tuple[int, ...], ...] = ()
    non_intertwining_pairs: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...] = ()
    four_cycle_overlaps: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...] = ()
    convex_cycles: int = 0
    four_cycles: int = 0

    @property
    def passed(self) -> bool:
        return not (self.nonconvex_four_cycles or self.non_intertwining_pairs or self.four_cycle_overlaps)


def claims_audit(g: Graph, index: ConvexCycleIndex | None = None) -> ClaimsAudit:
    """Check that 4-cycles are convex, that convex cycles sharing two or more edges
    intertwine, and that no 4-cycle shares two edges with another convex cycle."""
    index = index or ConvexCycleIndex(g)
    d = index.d
    squares = four_cycles(g)
    bad_sq = tuple(c for c in squares if not is_convex_subgraph(g, c, d))
    cyc = index.cycles
    bad_pairs, overlaps = [], []
    for i, c in enumerate(cyc):
        ec = set(c.edges)
        for c2 in cyc[i + 1:]:
            if len(ec.intersection(c2.edges)) < 2:
                continue
            if intertwining(c, c2) is None:
                bad_pairs.append((c.vertices, c2.vertices))
            if c.length == 4 or c2.length == 4:
                overlaps.append((c.vertices, c2.vertices))
    return ClaimsAudit(bad_sq, tuple(bad_pairs), tuple(overlaps), len(cyc), len(squares))


# --------------------------------------------------------------------------
# isometric pattern search

def isometric_embeddings(pattern: Graph, g: Graph, d: np.ndarray | None = None) -> Iterator[tuple[int, ...]]:
    """Yield maps ``pattern vertex → g vertex`` whose image is an isometric copy.

    Backtracking in BFS order of the pattern; every new image must match all
    pattern distances to the images placed so far, which also forces an
    induced copy.
    """
    d = g.dist if d is None else d
    pd = pattern.dist
    if pattern.n == 0:
        return
    order, parent = [0], {0: -1}
    for v in order:
        for w in pattern.adj[v]:
            if w not in parent:
                parent[w] = v
                order.append(w)
    if len(order) != pattern.n:
        raise GraphError("pattern must be connected")
    image = [-1] * pattern.n

    def extend(k: int, used: set[int]) -> Iterator[tuple[int, ...]]:
        if k == len(order):
            yield tuple(image)
            return
        p = order[k]
        cands = range(g.n) if parent[p] < 0 else g.adj[image[parent[p]]]
        for x in cands:
            if x in used:
                continue
            if all(d[x, image[q]] == pd[p, q] for q in order[:k]):
                image[p] = x
                used.add(x)
                yield from extend(k + 1, used)
                used.discard(x)
                image[p] = -1

    yield from extend(0, set())
