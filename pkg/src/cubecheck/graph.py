"""Simple undirected graphs on vertices ``0..n-1`` and the unweighted metric kernel."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

#: Distance sentinel for vertex pairs in different components.
UNREACHABLE = -1


class GraphError(ValueError):
    """Raised for malformed graph input or violated preconditions."""


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph.

    ``adj[v]`` is the sorted neighbor tuple of ``v`` and ``edges`` lists every
    edge once as ``(u, v)`` with ``u < v``, sorted; the position of an edge in
    ``edges`` is its index.  ``labels`` optionally records what each vertex
    stands for (group word, product coordinates, bitmask...) and does not take
    part in equality.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]
    labels: tuple | None = field(default=None, compare=False, repr=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    def edge_id(self, u: int, v: int) -> int:
        """Index of edge ``uv`` (either orientation); KeyError if absent."""
        return self.edge_index[(u, v) if u < v else (v, u)]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edge_index

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @cached_property
    def adj_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << w for w in nb) for nb in self.adj)

    @cached_property
    def dist(self) -> np.ndarray:
        """All-pairs distance matrix (read-only, memoized)."""
        d = bfs_distances(self)
        d.setflags(write=False)
        return d

    def with_labels(self, labels: Sequence) -> "Graph":
        if len(labels) != self.n:
            raise GraphError("need one label per vertex")
        return Graph(self.n, self.adj, self.edges, tuple(labels))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(n: int, edges: Iterable[Sequence[int]], labels: Sequence | None = None) -> Graph:
    """Build a :class:`Graph`; duplicate edges collapse, loops and bad endpoints raise."""
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for pair in edges:
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge {(u, v)} has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"edge {(u, v)} is a loop")
        nbrs[u].add(v)
        nbrs[v].add(u)
    adj = tuple(tuple(sorted(s)) for s in nbrs)
    es = tuple((u, v) for u in range(n) for v in adj[u] if u < v)
    return Graph(n, adj, es, tuple(labels) if labels is not None else None)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph, relabeled ``0..k-1`` in ascending order of the original ids.

    Returns the subgraph and the list mapping new ids to old ones.
    """
    vs = sorted(set(vertices))
    pos = {v: i for i, v in enumerate(vs)}
    es = [(pos[u], pos[v]) for u, v in g.edges if u in pos and v in pos]
    return build_graph(len(vs), es), vs


# --------------------------------------------------------------------------
# distances

def _bfs_scalar(g: Graph, source: int, out: np.ndarray) -> None:
    out[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        dv = out[v] + 1
        for w in g.adj[v]:
            if out[w] == UNREACHABLE:
                out[w] = dv
                queue.append(w)


def bfs_distances_scalar(g: Graph) -> np.ndarray:
    """One queue-based BFS per source."""
    d = np.full((g.n, g.n), UNREACHABLE, dtype=np.int32)
    for s in range(g.n):
        _bfs_scalar(g, s, d[s])
    return d


def bfs_distances(g: Graph) -> np.ndarray:
    """Exact all-pairs hop distances; unreachable pairs hold :data:`UNREACHABLE`.

    All sources advance together: ``seen[v]`` is the bitset of sources that
    have reached ``v``, so one level costs one OR per arc.
    """
    n = g.n
    d = np.full((n, n), UNREACHABLE, dtype=np.int32)
    if n == 0:
        return d
    np.fill_diagonal(d, 0)
    seen = [1 << v for v in range(n)]
    frontier = list(seen)
    adj = g.adj
    level = 0
    while True:
        level += 1
        nxt = []
        any_new = False
        for v in range(n):
            acc = 0
            for w in adj[v]:
                acc |= frontier[w]
            acc &= ~seen[v]
            nxt.append(acc)
            if acc:
                any_new = True
                seen[v] |= acc
                row = d[:, v]
                while acc:
                    low = acc & -acc
                    row[low.bit_length() - 1] = level
                    acc ^= low
        if not any_new:
            break
        frontier = nxt
    return d


def diameter(g: Graph, d: np.ndarray | None = None) -> int:
    d = g.dist if d is None else d
    if g.n and (d == UNREACHABLE).any():
        raise GraphError("diameter of a disconnected graph")
    return int(d.max()) if g.n else 0


# --------------------------------------------------------------------------
# basic structure tests

def components(g: Graph) -> list[list[int]]:
    comp = [-1] * g.n
    out = []
    for s in range(g.n):
        if comp[s] >= 0:
            continue
        comp[s] = len(out)
        part = [s]
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in g.adj[v]:
                if comp[w] < 0:
                    comp[w] = comp[s]
                    part.append(w)
                    queue.append(w)
        out.append(sorted(part))
    return out


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(components(g)) == 1


def is_cubic(g: Graph) -> bool:
    return g.n > 0 and all(len(nb) == 3 for nb in g.adj)


@dataclass(frozen=True)
class BipartiteResult:
    bipartite: bool
    coloring: tuple[int, ...] | None = None
    odd_cycle: tuple[int, ...] | None = None  # closed walk v0..vk with v0 == vk

    def __bool__(self) -> bool:
        return self.bipartite


def is_bipartite(g: Graph) -> BipartiteResult:
    """2-coloring, or an odd cycle (as a closed vertex walk) when none exists."""
    color = [-1] * g.n
    parent = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in g.adj[v]:
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    parent[w] = v
                    queue.append(w)
                elif color[w] == color[v]:
                    return BipartiteResult(False, odd_cycle=_odd_cycle(parent, v, w))
    return BipartiteResult(True, coloring=tuple(color))


def _odd_cycle(parent: list[int], v: int, w: int) -> tuple[int, ...]:
    # v and w sit at the same BFS depth parity; join their tree paths at the LCA.
    pv = [v]
    while parent[pv[-1]] >= 0:
        pv.append(parent[pv[-1]])
    pw = [w]
    while parent[pw[-1]] >= 0:
        pw.append(parent[pw[-1]])
    on_pv = set(pv)
    i = 0
    while pw[i] not in on_pv:
        i += 1
    lca = pw[i]
    walk = pv[: pv.index(lca) + 1] + pw[:i][::-1] + [v]
    return tuple(walk)


def girth(g: Graph) -> int | None:
    """Length of a shortest cycle, ``None`` for forests."""
    best = None
    for s in range(g.n):
        dist = {s: 0}
        par = {s: -1}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            if best is not None and 2 * dist[v] + 1 >= best:
                break
            for w in g.adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    par[w] = v
                    queue.append(w)
                elif par[v] != w:
                    c = dist[v] + dist[w] + 1
                    if best is None or c < best:
                        best = c
    return best


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """``g □ h`` with vertex ``(a, b)`` stored at index ``a * h.n + b``."""
    if g.n == 0 or h.n == 0:
        raise GraphError("cartesian product needs non-empty factors")
    k = h.n
    es = []
    for a, c in g.edges:
        es.extend((a * k + b, c * k + b) for b in range(k))
    for b, e in h.edges:
        es.extend((a * k + b, a * k + e) for a in range(g.n))
    labels = [(a, b) for a in range(g.n) for b in range(k)]
    return build_graph(g.n * k, es, labels)


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``v`` renamed ``perm[v]``."""
    return build_graph(g.n, ((perm[u], perm[v]) for u, v in g.edges))


def degree_sequence(g: Graph) -> list[int]:
    return sorted((len(nb) for nb in g.adj), reverse=True)
