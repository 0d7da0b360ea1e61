"""Constructors for the graph families used throughout the toolkit."""

from __future__ import annotations

from .coxeter import A3, B3, H3, DEFAULT_ELEMENT_CAP, CoxeterMatrix, coxeter_cayley
from .graph import Graph, GraphError, build_graph, cartesian_product

__all__ = [
    "complete_k2",
    "cycle",
    "path",
    "hypercube",
    "prism",
    "generalized_petersen",
    "middle_levels",
    "graph_X",
    "GRAPH_X_NAMES",
    "coxeter_cayley",
    "cubic_permutahedron",
    "truncated_cuboctahedron",
    "truncated_icosidodecahedron",
    "complete_bipartite",
]


def complete_k2() -> Graph:
    return build_graph(2, [(0, 1)])


def cycle(k: int) -> Graph:
    if k < 3:
        raise GraphError(f"cycle length must be at least 3, got {k}")
    return build_graph(k, [(i, (i + 1) % k) for i in range(k)])


def path(k: int) -> Graph:
    """Path on ``k`` vertices."""
    if k < 1:
        raise GraphError("path needs at least one vertex")
    return build_graph(k, [(i, i + 1) for i in range(k - 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return build_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def hypercube(d: int) -> Graph:
    """``Q_d`` on bitmasks ``0..2^d-1``; neighbors differ in one bit."""
    if d < 1:
        raise GraphError(f"hypercube dimension must be at least 1, got {d}")
    n = 1 << d
    edges = [(x, x | (1 << i)) for x in range(n) for i in range(d) if not x >> i & 1]
    return build_graph(n, edges, [format(x, f"0{d}b") for x in range(n)])


def prism(k: int) -> Graph:
    """``K2 □ C_k``; vertex ``(a, b)`` is ``a*k + b``."""
    return cartesian_product(complete_k2(), cycle(k))


def generalized_petersen(n: int, k: int) -> Graph:
    """``G(n, k)``: outer cycle ``0..n-1``, spokes ``i ~ n+i``, inner ``n+i ~ n+(i+k) mod n``."""
    if n < 3 or not 1 <= k < n / 2:
        raise GraphError(f"G(n,k) needs 3 <= n and 1 <= k < n/2, got ({n}, {k})")
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(i, n + i) for i in range(n)]
    edges += [(n + i, n + (i + k) % n) for i in range(n)]
    labels = [f"outer{i}" for i in range(n)] + [f"inner{i}" for i in range(n)]
    return build_graph(2 * n, edges, labels)


def middle_levels(t: int) -> Graph:
    """Subgraph of ``Q_{2t-1}`` induced on weights ``t`` and ``t-1``, by ascending bitmask."""
    if t < 1:
        raise GraphError(f"middle level parameter must be at least 1, got {t}")
    d = 2 * t - 1
    verts = [x for x in range(1 << d) if bin(x).count("1") in (t, t - 1)]
    pos = {x: i for i, x in enumerate(verts)}
    edges = [(pos[x], pos[x ^ (1 << i)]) for x in verts for i in range(d)
             if x >> i & 1 and x ^ (1 << i) in pos]
    return build_graph(len(verts), edges, [format(x, f"0{d}b") for x in verts])


GRAPH_X_NAMES = ("v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8", "c1", "c2")


def graph_X() -> Graph:
    """Eight-cycle ``v1..v8`` with ``c1`` joined to ``v4, v8`` and ``c2`` to ``v2, v6``."""
    edges = [(i, (i + 1) % 8) for i in range(8)]
    edges += [(8, 3), (8, 7), (9, 1), (9, 5)]
    return build_graph(10, edges, GRAPH_X_NAMES)


def cubic_permutahedron(element_cap: int = DEFAULT_ELEMENT_CAP) -> Graph:
    return coxeter_cayley(A3, element_cap)


def truncated_cuboctahedron(element_cap: int = DEFAULT_ELEMENT_CAP) -> Graph:
    return coxeter_cayley(B3, element_cap)


def truncated_icosidodecahedron(element_cap: int = DEFAULT_ELEMENT_CAP) -> Graph:
    return coxeter_cayley(H3, element_cap)


def coxeter(m12: int, m23: int, m13: int, element_cap: int = DEFAULT_ELEMENT_CAP) -> Graph:
    return coxeter_cayley(CoxeterMatrix.from_orders(m12, m23, m13), element_cap)
