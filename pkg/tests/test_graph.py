import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubecheck import generators as gen
from cubecheck.graph import (
    UNREACHABLE,
    GraphError,
    bfs_distances,
    bfs_distances_scalar,
    build_graph,
    cartesian_product,
    components,
    degree_sequence,
    diameter,
    girth,
    induced_subgraph,
    is_bipartite,
    is_connected,
    is_cubic,
    relabel,
)
from cubecheck.graph6 import Graph6Error, parse_graph6, read_graph6_lines, write_graph6
from cubecheck.symmetry import is_isomorphic

from conftest import non_partial_cubes, partial_cube_corpus
from oracles import nx_distances, nx_isomorphic, to_nx

X_EDGES = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 0), (8, 3), (8, 7), (9, 1), (9, 5)]


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), max_size=3 * n)) if pairs else []
    return build_graph(n, chosen)


class TestBuildGraph:
    def test_k2(self):
        g = build_graph(2, [(0, 1)])
        assert g.n == 2 and g.m == 1 and g.edges == ((0, 1),)

    def test_c4_degrees(self):
        g = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        assert [g.degree(v) for v in range(4)] == [2, 2, 2, 2]

    def test_graph_x_edge_list(self):
        g = build_graph(10, X_EDGES)
        assert g.n == 10 and g.m == 12
        assert degree_sequence(g) == [3] * 4 + [2] * 6
        assert g == gen.graph_X()

    def test_duplicates_collapse_and_edges_sorted(self):
        g = build_graph(3, [(2, 1), (1, 2), (0, 2)])
        assert g.edges == ((0, 2), (1, 2))
        assert g.adj == ((2,), (2,), (0, 1))

    def test_loop_rejected(self):
        with pytest.raises(GraphError, match=r"\(1, 1\)"):
            build_graph(3, [(1, 1)])

    def test_out_of_range_rejected(self):
        with pytest.raises(GraphError, match=r"\(0, 3\)"):
            build_graph(3, [(0, 3)])

    def test_edge_index_bijection(self):
        g = gen.generalized_petersen(10, 3)
        assert sorted(g.edge_index.values()) == list(range(g.m))
        assert all(g.edge_id(v, u) == i for i, (u, v) in enumerate(g.edges))

    @given(graphs())
    def test_adjacency_symmetric(self, g):
        for u in range(g.n):
            for w in g.adj[u]:
                assert u in g.adj[w] and u != w


class TestDistances:
    def test_c6_antipodal(self):
        assert bfs_distances(gen.cycle(6))[0, 3] == 3

    def test_q3_diameter(self):
        assert diameter(gen.hypercube(3)) == 3

    def test_g10_3_diameter(self):
        # frozen from networkx eccentricities
        assert nx.diameter(to_nx(gen.generalized_petersen(10, 3))) == 5
        assert diameter(gen.generalized_petersen(10, 3)) == 5

    def test_unreachable_sentinel(self):
        g = build_graph(4, [(0, 1), (2, 3)])
        d = bfs_distances(g)
        assert d[0, 2] == UNREACHABLE and d[0, 1] == 1
        with pytest.raises(GraphError):
            diameter(g)

    def test_dist_is_read_only(self):
        d = gen.cycle(5).dist
        with pytest.raises(ValueError):
            d[0, 0] = 4

    @pytest.mark.parametrize("name", sorted(partial_cube_corpus()))
    def test_bit_parallel_matches_scalar_and_networkx(self, name):
        g = partial_cube_corpus()[name]
        d = bfs_distances(g)
        assert np.array_equal(d, bfs_distances_scalar(g))
        ref = nx_distances(g)
        assert all(d[u, v] == ref[u][v] for u in range(g.n) for v in range(g.n))

    @given(graphs(max_n=14))
    @settings(max_examples=150)
    def test_metric_axioms_and_oracle(self, g):
        d = bfs_distances(g)
        assert np.array_equal(d, bfs_distances_scalar(g))
        assert np.array_equal(d, d.T)
        assert (np.diag(d) == 0).all()
        for u, v in itertools.product(range(g.n), repeat=2):
            assert (d[u, v] == 1) == g.has_edge(u, v)
        reach = d != UNREACHABLE
        for k in range(g.n):
            via = reach[:, k][:, None] & reach[k, :][None, :]
            assert (d[via] <= (d[:, k][:, None] + d[k, :][None, :])[via]).all()
            assert reach[via].all()


class TestStructure:
    def test_c5_odd_witness(self):
        r = is_bipartite(gen.cycle(5))
        assert not r
        walk = r.odd_cycle
        assert walk[0] == walk[-1] and len(walk) - 1 == 5

    @pytest.mark.parametrize("name", sorted(non_partial_cubes()))
    def test_odd_witness_is_closed_odd_walk(self, name):
        g = non_partial_cubes()[name]
        r = is_bipartite(g)
        if r:
            col = r.coloring
            assert all(col[u] != col[v] for u, v in g.edges)
        else:
            w = r.odd_cycle
            assert w[0] == w[-1] and (len(w) - 1) % 2 == 1
            assert all(g.has_edge(a, b) for a, b in zip(w, w[1:]))

    def test_g10_3_connected_bipartite_cubic(self):
        g = gen.generalized_petersen(10, 3)
        assert is_connected(g) and is_bipartite(g) and is_cubic(g)

    def test_prism6_cubic(self):
        assert is_cubic(cartesian_product(gen.complete_k2(), gen.cycle(6)))

    def test_components(self):
        g = build_graph(5, [(0, 3), (1, 4)])
        assert components(g) == [[0, 3], [1, 4], [2]]
        assert not is_connected(g)

    @given(graphs())
    def test_bipartite_agrees_with_networkx(self, g):
        assert bool(is_bipartite(g)) == nx.is_bipartite(to_nx(g))

    @given(graphs(max_n=10))
    def test_girth_agrees_with_networkx(self, g):
        ref = nx.girth(to_nx(g))
        assert girth(g) == (None if ref == float("inf") else ref)

    def test_induced_subgraph(self):
        sub, old = induced_subgraph(gen.cycle(6), [4, 0, 5])
        assert old == [0, 4, 5] and sub.edges == ((0, 2), (1, 2))


class TestCartesianProduct:
    def test_k2_k2_is_c4(self):
        assert is_isomorphic(cartesian_product(gen.complete_k2(), gen.complete_k2()), gen.cycle(4))

    def test_k2_c4_is_q3(self):
        assert is_isomorphic(cartesian_product(gen.complete_k2(), gen.cycle(4)), gen.hypercube(3))

    def test_k2_c6_counts(self):
        g = cartesian_product(gen.complete_k2(), gen.cycle(6))
        assert (g.n, g.m) == (12, 18)

    def test_row_major_indexing(self):
        g = cartesian_product(gen.path(2), gen.cycle(3))
        assert g.labels[4] == (1, 1)
        assert g.has_edge(1, 4) and g.has_edge(3, 5)

    def test_empty_factor_rejected(self):
        with pytest.raises(GraphError):
            cartesian_product(build_graph(0, []), gen.cycle(3))

    def test_commutes_up_to_isomorphism(self):
        a = cartesian_product(gen.complete_k2(), gen.cycle(6))
        b = cartesian_product(gen.cycle(6), gen.complete_k2())
        assert is_isomorphic(a, b)

    @pytest.mark.parametrize("f,h", [
        (gen.path(3), gen.cycle(4)),
        (gen.cycle(5), gen.complete_k2()),
        (gen.cycle(6), gen.path(2)),
        (gen.complete_bipartite(2, 3), gen.path(2)),
        (gen.graph_X(), gen.complete_k2()),
        (gen.path(4), gen.cycle(3)),
    ])
    def test_distance_law(self, f, h):
        p = cartesian_product(f, h)
        d, df, dh = p.dist, f.dist, h.dist
        for (a, b), (c, e) in itertools.product(itertools.product(range(f.n), range(h.n)), repeat=2):
            assert d[a * h.n + b, c * h.n + e] == df[a, c] + dh[b, e]

    def test_matches_networkx_product(self):
        f, h = gen.cycle(4), gen.path(3)
        assert nx_isomorphic(cartesian_product(f, h), _nx_graph(nx.cartesian_product(to_nx(f), to_nx(h))))


def _nx_graph(h):
    from oracles import from_nx

    return from_nx(h)


class TestGraph6:
    def test_hand_decoded_k2(self):
        # 'A' is 65 = 63 + 2 vertices; '_' is 95 = 63 + 0b100000, so edge 0-1 is present
        g = parse_graph6("A_")
        assert g.n == 2 and g.edges == ((0, 1),)
        assert write_graph6(g) == "A_"

    def test_empty_and_single(self):
        assert parse_graph6("?").n == 0
        assert write_graph6(build_graph(1, [])) == "@"

    def test_c4_round_trip(self):
        c4 = gen.cycle(4)
        assert parse_graph6(write_graph6(c4)) == c4

    def test_g10_3_round_trip(self):
        g = gen.generalized_petersen(10, 3)
        back = parse_graph6(write_graph6(g))
        assert back == g and is_isomorphic(back, g)

    def test_agrees_with_networkx_encoding(self):
        for g in (gen.generalized_petersen(10, 3), gen.hypercube(4), gen.graph_X()):
            ref = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
            assert write_graph6(g) == ref

    def test_long_header(self):
        g = gen.truncated_icosidodecahedron()
        text = write_graph6(g)
        assert text[0] == "~"
        assert parse_graph6(text) == g
        assert text == nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()

    def test_optional_header_skipped(self):
        assert parse_graph6(">>graph6<<A_").m == 1

    @pytest.mark.parametrize("text,offset", [
        ("", 0),
        ("A", 1),
        ("C~~", 2),
        ("A_x", 2),
        ("A\x10", 1),
        ("~?", 2),
    ])
    def test_errors_report_offsets(self, text, offset):
        with pytest.raises(Graph6Error) as info:
            parse_graph6(text)
        assert info.value.offset == offset

    def test_read_lines_skips_blank(self):
        import io

        assert list(read_graph6_lines(io.StringIO("A_\n\n  C~\n"))) == [(1, "A_"), (3, "C~")]

    @given(graphs(max_n=70))
    @settings(max_examples=60)
    def test_round_trip_identity(self, g):
        text = write_graph6(g)
        assert parse_graph6(text) == g
        assert text == write_graph6(parse_graph6(text))

    def test_relabel_round_trip_isomorphic(self):
        g = gen.graph_X()
        h = relabel(g, [3, 1, 4, 0, 5, 9, 2, 6, 8, 7])
        assert parse_graph6(write_graph6(h)) == h and is_isomorphic(g, h)
