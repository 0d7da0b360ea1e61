"""Djoković–Winkler relation, partial-cube recognition, halfspaces and convexity."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .graph import (
    UNREACHABLE,
    Graph,
    GraphError,
    components,
    induced_subgraph,
    is_bipartite,
)


def _edge_pair(g: Graph, e) -> tuple[int, int]:
    if isinstance(e, (int, np.integer)):
        return g.edges[int(e)]
    u, v = e
    if not g.has_edge(u, v):
        raise GraphError(f"{(u, v)} is not an edge")
    return int(u), int(v)


def _require_connected(g: Graph, d: np.ndarray) -> None:
    if g.n == 0 or (d == UNREACHABLE).any():
        raise GraphError("graph must be connected")


def theta_related(g: Graph, e1, e2, d: np.ndarray | None = None) -> bool:
    """``ab Θ xy`` iff ``d(a,x) + d(b,y) != d(a,y) + d(b,x)``.

    Edges may be given as indices or as vertex pairs.
    """
    d = g.dist if d is None else d
    a, b = _edge_pair(g, e1)
    x, y = _edge_pair(g, e2)
    return bool(d[a, x] + d[b, y] != d[a, y] + d[b, x])


def theta_matrix(g: Graph, d: np.ndarray | None = None) -> np.ndarray:
    """Boolean ``m × m`` matrix of the Θ predicate over all edge pairs."""
    d = g.dist if d is None else d
    if g.m == 0:
        return np.zeros((0, 0), dtype=bool)
    e = np.asarray(g.edges)
    a, b = e[:, 0], e[:, 1]
    return (d[np.ix_(a, a)] + d[np.ix_(b, b)]) != (d[np.ix_(a, b)] + d[np.ix_(b, a)])


class _DisjointSet:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if rx < ry:
                self.parent[ry] = rx
            else:
                self.parent[rx] = ry


@dataclass(frozen=True)
class ThetaPartition:
    """Θ*-classes: ``classes[i]`` holds sorted edge indices; ids follow smallest member."""

    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]
    related: np.ndarray

    def __len__(self) -> int:
        return len(self.classes)

    def is_theta_complete(self) -> bool:
        """True iff Θ already relates every pair inside each class (Θ transitive)."""
        return all(self.related[np.ix_(c, c)].all() for c in self.classes)


def theta_star_classes(g: Graph, d: np.ndarray | None = None) -> ThetaPartition:
    d = g.dist if d is None else d
    _require_connected(g, d)
    rel = theta_matrix(g, d)
    ds = _DisjointSet(g.m)
    for i, j in zip(*np.nonzero(np.triu(rel, 1))):
        ds.union(int(i), int(j))
    ids: dict[int, int] = {}
    class_of = []
    for i in range(g.m):
        class_of.append(ids.setdefault(ds.find(i), len(ids)))
    classes: list[list[int]] = [[] for _ in ids]
    for i, c in enumerate(class_of):
        classes[c].append(i)
    rel.setflags(write=False)
    return ThetaPartition(tuple(map(tuple, classes)), tuple(class_of), rel)


# --------------------------------------------------------------------------
# recognition

@dataclass(frozen=True)
class HypercubeLabeling:
    dim: int
    label: tuple[int, ...]  # bit i of label[v] is v's side of Θ*-class i

    def hex_labels(self) -> list[str]:
        width = max(1, (self.dim + 3) // 4)
        return [format(x, f"0{width}x") for x in self.label]

    def hamming(self, u: int, v: int) -> int:
        return (self.label[u] ^ self.label[v]).bit_count()


@dataclass(frozen=True)
class PartialCubeVerdict:
    """Outcome of :func:`is_partial_cube`.

    On rejection ``reason`` is one of ``"disconnected"``, ``"odd_cycle"``,
    ``"not_transitive"`` or ``"hamming"`` and ``witness`` holds, respectively,
    the components, an odd closed walk, an edge triple ``(e, f, h)`` with
    ``eΘf``, ``fΘh`` but not ``eΘh``, or a vertex pair breaking the Hamming law.
    """

    is_partial_cube: bool
    labeling: HypercubeLabeling | None = None
    theta: ThetaPartition | None = None
    reason: str | None = None
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.is_partial_cube


def _theta_path(rel: np.ndarray, start: int, goal: int) -> list[int]:
    prev = {start: -1}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        if x == goal:
            break
        for y in np.nonzero(rel[x])[0]:
            y = int(y)
            if y not in prev:
                prev[y] = x
                queue.append(y)
    path = [goal]
    while path[-1] != start:
        path.append(prev[path[-1]])
    return path[::-1]


def is_partial_cube(g: Graph, d: np.ndarray | None = None) -> PartialCubeVerdict:
    """Winkler test: connected, bipartite and Θ transitive; the labeling is then verified."""
    if g.n == 0:
        return PartialCubeVerdict(False, reason="disconnected", witness=())
    d = g.dist if d is None else d
    if (d == UNREACHABLE).any():
        return PartialCubeVerdict(False, reason="disconnected", witness=tuple(map(tuple, components(g))))
    bip = is_bipartite(g)
    if not bip:
        return PartialCubeVerdict(False, reason="odd_cycle", witness=bip.odd_cycle)
    theta = theta_star_classes(g, d)
    rel = theta.related
    for cls in theta.classes:
        sub = rel[np.ix_(cls, cls)]
        if not sub.all():
            i, j = map(int, np.argwhere(~sub)[0])
            path = _theta_path(rel, cls[i], cls[j])
            return PartialCubeVerdict(False, theta=theta, reason="not_transitive", witness=tuple(path[:3]))
    labeling = _labeling(g, d, theta)
    lab = labeling.label
    for u in range(g.n):
        row = d[u]
        for v in range(u + 1, g.n):
            if (lab[u] ^ lab[v]).bit_count() != row[v]:
                return PartialCubeVerdict(False, theta=theta, reason="hamming", witness=(u, v))
    return PartialCubeVerdict(True, labeling=labeling, theta=theta)


def _labeling(g: Graph, d: np.ndarray, theta: ThetaPartition) -> HypercubeLabeling:
    label = [0] * g.n
    for i, cls in enumerate(theta.classes):
        u, v = g.edges[cls[0]]
        closer_u = d[u] < d[v]
        # vertex 0 gets bit 0 in every coordinate
        far = ~closer_u if closer_u[0] else closer_u
        for w in np.nonzero(far)[0]:
            label[int(w)] |= 1 << i
    return HypercubeLabeling(len(theta.classes), tuple(label))


# --------------------------------------------------------------------------
# halfspaces

@dataclass(frozen=True)
class HalfspaceDecomposition:
    edge: tuple[int, int]
    W_uv: frozenset[int]
    W_vu: frozenset[int]
    U_uv: frozenset[int]
    U_vu: frozenset[int]
    F_uv: tuple[int, ...]  # edge indices


def halfspaces(g: Graph, e, d: np.ndarray | None = None, verified: bool = False) -> HalfspaceDecomposition:
    """``W_uv``, ``W_vu``, boundaries ``U`` and the cut ``F_uv`` of edge ``e = uv``.

    Raises :class:`GraphError` unless ``g`` is a partial cube; pass
    ``verified=True`` to skip the recognition step when the caller has
    already run it.  The sides must still partition the vertices and the cut
    must equal the set of edges Θ-related to ``e``.
    """
    d = g.dist if d is None else d
    _require_connected(g, d)
    if not verified:
        verdict = is_partial_cube(g, d)
        if not verdict:
            raise GraphError(f"halfspaces need a partial cube ({verdict.reason})")
    u, v = _edge_pair(g, e)
    wu = frozenset(int(w) for w in np.nonzero(d[u] < d[v])[0])
    wv = frozenset(int(w) for w in np.nonzero(d[v] < d[u])[0])
    if len(wu) + len(wv) != g.n:
        raise GraphError(f"sides of edge {(u, v)} do not partition the vertices")
    cut = []
    for i, (a, b) in enumerate(g.edges):
        if (a in wu) != (b in wu):
            cut.append(i)
    eid = g.edge_id(u, v)
    rel = [i for i in range(g.m) if theta_related(g, eid, i, d)]
    if cut != rel:
        raise GraphError(f"cut of edge {(u, v)} differs from its Θ-class; not a partial cube")
    uu = frozenset(a if a in wu else b for a, b in (g.edges[i] for i in cut))
    uv = frozenset(b if a in wu else a for a, b in (g.edges[i] for i in cut))
    return HalfspaceDecomposition((u, v), wu, wv, uu, uv, tuple(cut))


# --------------------------------------------------------------------------
# convexity

def _vertex_set(g: Graph, s: Iterable[int]) -> list[int]:
    vs = sorted(set(int(x) for x in s))
    if not vs:
        raise GraphError("empty vertex set")
    if vs[0] < 0 or vs[-1] >= g.n:
        raise GraphError("vertex out of range")
    return vs


def interval(g: Graph, x: int, y: int, d: np.ndarray | None = None) -> list[int]:
    """All vertices on some shortest ``x,y``-path."""
    d = g.dist if d is None else d
    return [int(z) for z in np.nonzero(d[x] + d[y] == d[x, y])[0]]


def is_convex_subgraph(g: Graph, s: Iterable[int], d: np.ndarray | None = None) -> bool:
    """Interval closure test: every shortest path between members stays inside."""
    d = g.dist if d is None else d
    vs = _vertex_set(g, s)
    sub = d[vs]
    inside = np.zeros(g.n, dtype=bool)
    inside[vs] = True
    # on_path[i, j, z]: z lies on a shortest vs[i], vs[j]-path
    on_path = (sub[:, None, :] + sub[None, :, :]) == sub[:, vs][:, :, None]
    return not on_path[:, :, ~inside].any()


def convexity_lemma_check(g: Graph, s: Iterable[int], d: np.ndarray | None = None) -> bool:
    """Induced, connected, and no boundary edge is Θ-related to an inner edge."""
    d = g.dist if d is None else d
    vs = _vertex_set(g, s)
    sub, _ = induced_subgraph(g, vs)
    if len(components(sub)) != 1:
        return False
    inside = set(vs)
    inner, boundary = [], []
    for i, (a, b) in enumerate(g.edges):
        k = (a in inside) + (b in inside)
        if k == 2:
            inner.append(i)
        elif k == 1:
            boundary.append(i)
    if not inner or not boundary:
        return True
    rel = theta_matrix(g, d)
    return not rel[np.ix_(boundary, inner)].any()


def is_isometric_subgraph(g: Graph, s: Iterable[int], d: np.ndarray | None = None) -> bool:
    d = g.dist if d is None else d
    vs = _vertex_set(g, s)
    sub, _ = induced_subgraph(g, vs)
    return bool(np.array_equal(sub.dist, d[np.ix_(vs, vs)]))


def is_geodesic(g: Graph, path: Sequence[int], d: np.ndarray | None = None,
                theta: ThetaPartition | None = None) -> bool:
    """Whether ``path`` is a shortest path.

    When ``theta`` is supplied (a verified partial cube) the answer is also
    checked against the criterion that a path is geodesic iff its edges lie in
    pairwise distinct Θ-classes; a disagreement raises ``AssertionError``.
    """
    d = g.dist if d is None else d
    p = [int(v) for v in path]
    if not p:
        raise GraphError("empty path")
    if len(set(p)) != len(p):
        raise GraphError("path repeats a vertex")
    for a, b in zip(p, p[1:]):
        if not g.has_edge(a, b):
            raise GraphError(f"{(a, b)} is not an edge")
    answer = bool(d[p[0], p[-1]] == len(p) - 1)
    if theta is not None:
        cls = [theta.class_of[g.edge_id(a, b)] for a, b in zip(p, p[1:])]
        if (len(set(cls)) == len(cls)) != answer:
            raise AssertionError(f"Θ-class criterion disagrees on path {p}")
    return answer
