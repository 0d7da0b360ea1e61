"""Isomorph-free generation of connected cubic graphs by canonical augmentation.

Every connected cubic graph other than ``K4`` can be shrunk by one of three
reductions, each the inverse of an augmentation:

* ``E`` (two fewer vertices): delete an edge ``xy`` that is not a bridge and
  join ``x``'s two other neighbors and ``y``'s two other neighbors.  Allowed
  when neither new edge already exists and the two pairs differ.
* ``D`` (four fewer): contract a diamond (``K4`` minus an edge) whose tips
  hang off distinct, non-adjacent vertices ``u, v`` into the edge ``uv``.
* ``P`` (six fewer): remove a pendant diamond together with the vertex ``w``
  it hangs from, and join ``w``'s two other neighbors.

If no ``E`` reduction applies, every triangle sits in a diamond and every
edge outside the diamonds is a bridge; so either some diamond contracts or
the graph is a tree of pendants, which always has a ``P`` reduction.

A child is accepted only when its new object lies in the automorphism orbit
of the canonical reducible object: type ``E`` before ``D`` before ``P``,
then the largest invariant key, then the canonical labeling.  Augmentations
of one parent are taken up to the parent's automorphisms.
"""

from __future__ import annotations

import os
from collections import defaultdict
from typing import Iterator

from .graph import Graph, GraphError, build_graph
from .symmetry import _orbit, automorphisms, canonical_labeling, is_isomorphic, refine

DEFAULT_CAP = 16
CAP_ENV = "CUBECHECK_CAP"

Adj = list  # list of sets of neighbors


def enumeration_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    if raw is None:
        return DEFAULT_CAP
    try:
        return int(raw)
    except ValueError:
        raise GraphError(f"{CAP_ENV} must be an integer, got {raw!r}") from None


def _check_order(n: int) -> None:
    if n % 2:
        raise GraphError(f"cubic graphs need an even vertex count, got {n}")
    if n < 4:
        raise GraphError(f"no cubic graph has {n} vertices")
    cap = enumeration_cap()
    if n > cap:
        raise GraphError(f"n={n} exceeds the enumeration cap {cap} (set {CAP_ENV} to raise it)")


def _to_graph(adj: Adj) -> Graph:
    return build_graph(len(adj), [(u, v) for u in range(len(adj)) for v in adj[u] if u < v])


def _masks(adj: Adj) -> list[int]:
    out = []
    for nb in adj:
        m = 0
        for w in nb:
            m |= 1 << w
        out.append(m)
    return out


def _bridges(adj: Adj) -> set[frozenset]:
    n = len(adj)
    disc = [-1] * n
    low = [0] * n
    out: set[frozenset] = set()
    clock = [0]

    def dfs(v: int, parent: int) -> None:
        disc[v] = low[v] = clock[0]
        clock[0] += 1
        for w in adj[v]:
            if disc[w] < 0:
                dfs(w, v)
                low[v] = min(low[v], low[w])
                if low[w] > disc[v]:
                    out.add(frozenset((v, w)))
            elif w != parent:
                low[v] = min(low[v], disc[w])

    dfs(0, -1)
    return out


# --------------------------------------------------------------------------
# reducible objects

def _e_reducible(adj: Adj, masks: list[int]) -> list[frozenset]:
    out = []
    bridges = None
    for x in range(len(adj)):
        for y in adj[x]:
            if y < x:
                continue
            a, b = adj[x] - {y}
            if masks[a] >> b & 1:
                continue
            c, d = adj[y] - {x}
            if masks[c] >> d & 1 or {a, b} == {c, d}:
                continue
            if bridges is None:
                bridges = _bridges(adj)
            e = frozenset((x, y))
            if e not in bridges:
                out.append(e)
    return out


def _diamonds(adj: Adj, masks: list[int]) -> list[tuple[int, int, int, int, int, int]]:
    """``(m1, m2, t1, t2, u, v)``: middle edge, tips, and the tips' outside neighbors."""
    out = []
    for m1 in range(len(adj)):
        for m2 in adj[m1]:
            if m2 < m1:
                continue
            common = masks[m1] & masks[m2]
            if common.bit_count() != 2:
                continue
            t1 = (common & -common).bit_length() - 1
            t2 = common.bit_length() - 1
            if masks[t1] >> t2 & 1:
                continue  # K4
            (u,) = adj[t1] - {m1, m2}
            (v,) = adj[t2] - {m1, m2}
            out.append((m1, m2, t1, t2, u, v))
    return out


def _d_reducible(adj: Adj, masks: list[int], diamonds) -> list[frozenset]:
    return [frozenset((m1, m2)) for m1, m2, _, _, u, v in diamonds if u != v and not masks[u] >> v & 1]


def _p_reducible(adj: Adj, masks: list[int], diamonds) -> list[frozenset]:
    out = []
    for _, _, t1, t2, u, v in diamonds:
        if u != v:
            continue
        (w,) = adj[u] - {t1, t2}
        x, y = adj[w] - {u}
        if not masks[x] >> y & 1:
            out.append(frozenset((w, u)))
    return out


def _reducible(kind: str, adj: Adj, masks: list[int], diamonds=None) -> list[frozenset]:
    if kind == "E":
        return _e_reducible(adj, masks)
    if diamonds is None:
        diamonds = _diamonds(adj, masks)
    if kind == "D":
        return _d_reducible(adj, masks, diamonds)
    return _p_reducible(adj, masks, diamonds)


# --------------------------------------------------------------------------
# invariants and canonicity

def _local_colors(adj: Adj, masks: list[int]) -> list[int]:
    """Rank of (triangles, 4-cycles) at each vertex."""
    n = len(adj)
    inv = []
    for v in range(n):
        tri = sum((masks[a] & masks[v]).bit_count() for a in adj[v]) // 2
        sq = 0
        mv = masks[v]
        for w in range(n):
            if w != v:
                c = (mv & masks[w]).bit_count()
                sq += c * (c - 1) // 2
        inv.append((tri, sq))
    rank = {x: i for i, x in enumerate(sorted(set(inv)))}
    return [rank[x] for x in inv]


def _keyed_max(objs: list[frozenset], col: list[int]) -> list[frozenset]:
    keys = [tuple(sorted(col[v] for v in o)) for o in objs]
    top = max(keys)
    return [o for o, k in zip(objs, keys) if k == top]


def _image(obj: frozenset, perm) -> frozenset:
    return frozenset(perm[v] for v in obj)


def _object_orbit(obj: frozenset, gens) -> set[frozenset]:
    seen = {obj}
    stack = [obj]
    while stack:
        o = stack.pop()
        for p in gens:
            q = _image(o, p)
            if q not in seen:
                seen.add(q)
                stack.append(q)
    return seen


def _is_canonical(kind: str, adj: Adj, new: frozenset) -> bool:
    masks = _masks(adj)
    if kind != "E" and _e_reducible(adj, masks):
        return False
    diamonds = None if kind == "E" else _diamonds(adj, masks)
    if kind == "P" and _d_reducible(adj, masks, diamonds):
        return False
    objs = _reducible(kind, adj, masks, diamonds)
    if new not in objs:
        raise AssertionError(f"augmentation {kind} produced a non-reducible object")
    col = _local_colors(adj, masks)
    tied = _keyed_max(objs, col)
    if new not in tied:
        return False
    if len(tied) == 1:
        return True
    col, _ = refine([sorted(nb) for nb in adj], col)
    tied = _keyed_max(tied, col)
    if new not in tied:
        return False
    if len(tied) == 1:
        return True
    g = _to_graph(adj)
    gens = automorphisms(g).generators
    orbit = _object_orbit(new, gens)
    if orbit.issuperset(tied):
        return True
    _, lab = canonical_labeling(g, col, gens)
    best = max(tied, key=lambda o: tuple(sorted((lab[v] for v in o), reverse=True)))
    return best in orbit


# --------------------------------------------------------------------------
# augmentations

def _augment_e(adj: Adj, e1: tuple[int, int], e2: tuple[int, int]) -> Adj:
    n = len(adj)
    out = [set(nb) for nb in adj] + [set(), set()]
    for (a, b), p in ((e1, n), (e2, n + 1)):
        out[a].discard(b)
        out[b].discard(a)
        out[a].add(p)
        out[b].add(p)
        out[p] |= {a, b}
    out[n].add(n + 1)
    out[n + 1].add(n)
    return out


def _add_diamond(out: Adj, t1: int, t2: int, m1: int, m2: int) -> None:
    for t in (t1, t2):
        out[t] |= {m1, m2}
    out[m1] |= {t1, t2, m2}
    out[m2] |= {t1, t2, m1}


def _augment_d(adj: Adj, e: tuple[int, int]) -> Adj:
    n = len(adj)
    u, v = e
    out = [set(nb) for nb in adj] + [set() for _ in range(4)]
    t1, t2, m1, m2 = n, n + 1, n + 2, n + 3
    out[u].discard(v)
    out[v].discard(u)
    out[u].add(t1)
    out[t1].add(u)
    out[v].add(t2)
    out[t2].add(v)
    _add_diamond(out, t1, t2, m1, m2)
    return out


def _augment_p(adj: Adj, e: tuple[int, int]) -> Adj:
    n = len(adj)
    x, y = e
    out = [set(nb) for nb in adj] + [set() for _ in range(6)]
    w, u, t1, t2, m1, m2 = range(n, n + 6)
    out[x].discard(y)
    out[y].discard(x)
    out[x].add(w)
    out[y].add(w)
    out[w] |= {x, y, u}
    out[u] |= {w, t1, t2}
    out[t1].add(u)
    out[t2].add(u)
    _add_diamond(out, t1, t2, m1, m2)
    return out


def _edge_orbit_reps(edges: list[frozenset], gens) -> list[frozenset]:
    seen: set[frozenset] = set()
    reps = []
    for e in edges:
        if e in seen:
            continue
        seen |= _object_orbit(e, gens)
        reps.append(e)
    return reps


def _pair_orbit_reps(edges: list[frozenset], gens) -> list[tuple[frozenset, frozenset]]:
    seen: set[frozenset] = set()
    reps = []
    for i, e in enumerate(edges):
        for f in edges[i + 1:]:
            pair = frozenset((e, f))
            if pair in seen:
                continue
            stack = [pair]
            seen.add(pair)
            while stack:
                p = stack.pop()
                for g in gens:
                    q = frozenset(_image(x, g) for x in p)
                    if q not in seen:
                        seen.add(q)
                        stack.append(q)
            reps.append((e, f))
    return reps


class _Parent:
    __slots__ = ("adj", "edges", "gens")

    def __init__(self, adj: Adj):
        self.adj = adj
        self.edges = [frozenset((u, v)) for u in range(len(adj)) for v in sorted(adj[u]) if u < v]
        self.gens = automorphisms(_to_graph(adj)).generators


def _children(kind: str, parent: _Parent) -> Iterator[Adj]:
    gens = parent.gens
    n = len(parent.adj)
    if kind == "E":
        for e, f in _pair_orbit_reps(parent.edges, gens):
            child = _augment_e(parent.adj, tuple(sorted(e)), tuple(sorted(f)))
            if _is_canonical("E", child, frozenset((n, n + 1))):
                yield child
    elif kind == "D":
        for e in _edge_orbit_reps(parent.edges, gens):
            child = _augment_d(parent.adj, tuple(sorted(e)))
            if _is_canonical("D", child, frozenset((n + 2, n + 3))):
                yield child
    else:
        for e in _edge_orbit_reps(parent.edges, gens):
            child = _augment_p(parent.adj, tuple(sorted(e)))
            if _is_canonical("P", child, frozenset((n, n + 1))):
                yield child


_K4 = [{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}]


def _levels(n_max: int) -> Iterator[tuple[int, list[Adj]]]:
    levels: dict[int, list[_Parent]] = {}
    for n in range(4, n_max + 1, 2):
        if n == 4:
            found = [_K4]
        else:
            found = []
            for kind, step in (("E", 2), ("D", 4), ("P", 6)):
                for parent in levels.get(n - step, []):
                    found.extend(_children(kind, parent))
        yield n, found
        if n + 2 <= n_max:
            levels[n] = [_Parent(a) for a in found]
        levels.pop(n - 6, None)


def enumerate_cubic_graphs(n: int) -> Iterator[Graph]:
    """Each connected cubic graph on ``n`` vertices exactly once, up to isomorphism."""
    _check_order(n)
    for k, found in _levels(n):
        if k == n:
            for adj in found:
                yield _to_graph(adj)


def cubic_graphs_up_to(n_max: int) -> Iterator[tuple[int, list[Graph]]]:
    """``(n, graphs)`` for every even ``n`` from 4 to ``n_max``, sharing one generation pass."""
    _check_order(n_max)
    for k, found in _levels(n_max):
        yield k, [_to_graph(a) for a in found]


# --------------------------------------------------------------------------
# naive reference generator

def _bfs_normal_forms(n: int) -> Iterator[list[set[int]]]:
    """Cubic graphs labeled in breadth-first discovery order from vertex 0.

    Vertex ``i`` is completed before ``i + 1``; it takes some already-seen
    vertices of higher index and then brand-new vertices in increasing order.
    Every connected cubic graph has at least one such labeling.
    """
    adj: list[set[int]] = [set() for _ in range(n)]

    def place(i: int, seen: int) -> Iterator[list[set[int]]]:
        if i == n:
            if seen == n:
                yield [set(s) for s in adj]
            return
        if i >= seen:
            return
        need = 3 - len(adj[i])
        old = [j for j in range(i + 1, seen) if len(adj[j]) < 3 and j not in adj[i]]
        for k in range(need + 1):
            fresh = need - k
            if seen + fresh > n:
                continue
            for pick in _combinations(old, k):
                chosen = list(pick) + list(range(seen, seen + fresh))
                for j in chosen:
                    adj[i].add(j)
                    adj[j].add(i)
                yield from place(i + 1, seen + fresh)
                for j in chosen:
                    adj[i].discard(j)
                    adj[j].discard(i)

    yield from place(0, 1)


def _combinations(items: list[int], k: int):
    from itertools import combinations

    return combinations(items, k)


def naive_cubic_graphs(n: int) -> list[Graph]:
    """Generate every breadth-first labeling and keep one graph per isomorphism class."""
    if n % 2 or n < 4:
        raise GraphError(f"no cubic graph family for n={n}")
    buckets: dict[tuple, list[Graph]] = defaultdict(list)
    out = []
    for adj in _bfs_normal_forms(n):
        g = _to_graph(adj)
        d = g.dist
        key = tuple(sorted(tuple(sorted(int(x) for x in row)) for row in d))
        if any(is_isomorphic(g, h) for h in buckets[key]):
            continue
        buckets[key].append(g)
        out.append(g)
    return out
