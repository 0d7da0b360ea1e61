import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from networkx.algorithms import isomorphism

from cubecheck import generators as gen
from cubecheck.cycles import (
    ConvexCycleIndex,
    CycleRecord,
    HypothesisViolation,
    TraverseNotFound,
    all_incident_pairs_covered,
    canonical_cycle,
    claims_audit,
    enumerate_convex_cycles,
    enumerate_isometric_cycles,
    euler_report,
    find_convex_traverse,
    four_cycles,
    girth_signature,
    intertwining,
    isometric_embeddings,
    make_cycle_record,
    shortest_convex_cycle_through,
)
from cubecheck.graph import GraphError, build_graph, is_cubic, relabel
from cubecheck.metric import theta_star_classes
from cubecheck.symmetry import is_isomorphic, is_vertex_transitive

from conftest import cubic_vt_corpus, partial_cube_corpus
from oracles import (
    brute_convex_cycles,
    canonical,
    cycle_is_isometric,
    interval_convex,
    simple_cycles_upto,
    to_nx,
    traverse_violations,
)

SMALL = ["C6", "C8", "Q3", "ladder4", "grid3x3", "naphthalene", "X", "G10_3", "permutahedron", "prism6", "tree8"]


def _lengths(cycles):
    out = {}
    for c in cycles:
        out[c.length] = out.get(c.length, 0) + 1
    return out


class TestCycleRecords:
    def test_canonical_rotation_and_reflection(self):
        assert canonical_cycle([3, 1, 2, 0]) == (0, 2, 1, 3)
        assert canonical_cycle([0, 3, 1, 2]) == (0, 2, 1, 3)

    def test_record_flags_and_paths(self):
        g = gen.hypercube(3)
        face = next(iter(four_cycles(g)))
        rec = make_cycle_record(g, face)
        assert rec.convex and rec.isometric and rec.length == 4
        a, b, c = face[:3]
        assert rec.contains_path(a, b, c) and rec.contains_path(c, b, a)
        assert not rec.contains_path(a, c, b)
        assert rec.contains_edge(b, a)

    def test_non_edge_rejected(self):
        with pytest.raises(GraphError):
            make_cycle_record(gen.cycle(6), [0, 1, 3, 4])

    def test_isometric_but_not_convex(self):
        # an equatorial hexagon of the cube is isometric, its interval is the whole cube
        g = gen.hypercube(3)
        six = [c for c in simple_cycles_upto(g, 6) if len(c) == 6 and cycle_is_isometric(g, c)]
        rec = make_cycle_record(g, six[0])
        assert rec.isometric and not rec.convex


class TestEnumeration:
    def test_q3_faces(self):
        assert _lengths(enumerate_convex_cycles(gen.hypercube(3), 6)) == {4: 6}

    def test_g10_3_hexagons(self):
        # frozen from brute-force cycles plus an all-shortest-paths filter
        g = gen.generalized_petersen(10, 3)
        assert len(brute_convex_cycles(g, 6)) == 20
        assert _lengths(enumerate_convex_cycles(g, 6)) == {6: 20}

    def test_permutahedron_faces(self):
        assert _lengths(enumerate_convex_cycles(gen.cubic_permutahedron(), 6)) == {4: 6, 6: 8}

    @pytest.mark.parametrize("name", ["C6", "C8", "Q3", "ladder4", "grid3x3", "naphthalene", "X", "tree8", "prism6"])
    def test_default_bound_matches_brute_force(self, name):
        g = partial_cube_corpus()[name]
        got = [c.vertices for c in enumerate_convex_cycles(g)]
        bound = 2 * max(max(r.values()) for r in _nx_dist(g).values()) + 2
        assert set(got) == brute_convex_cycles(g, bound)
        assert len(got) == len(set(got))

    @pytest.mark.parametrize("name", ["G10_3", "permutahedron", "trunc_cubocta"])
    def test_bounded_matches_brute_force(self, name):
        g = partial_cube_corpus()[name]
        assert {c.vertices for c in enumerate_convex_cycles(g, 8)} == brute_convex_cycles(g, 8)

    @pytest.mark.parametrize("name", ["Q3", "X", "G10_3", "grid3x3", "prism6"])
    def test_isometric_matches_brute_force(self, name):
        g = partial_cube_corpus()[name]
        ref = {c for c in simple_cycles_upto(g, 10) if cycle_is_isometric(g, c)}
        got = enumerate_isometric_cycles(g, 10)
        assert {c.vertices for c in got} == ref
        assert all(c.isometric and c.convex == interval_convex(g, c.vertices) for c in got)

    def test_output_is_canonical_and_deterministic(self):
        g = gen.truncated_cuboctahedron()
        first = enumerate_convex_cycles(g)
        assert first == enumerate_convex_cycles(g)
        assert all(c.vertices == canonical(c.vertices) for c in first)
        assert all(c.convex and c.isometric for c in first)

    @pytest.mark.parametrize("bad", [5, 7, 2, 0])
    def test_bad_bounds_rejected(self, bad):
        with pytest.raises(GraphError):
            enumerate_convex_cycles(gen.hypercube(3), bad)

    @given(st.permutations(range(20)))
    @settings(max_examples=25, deadline=None)
    def test_counts_survive_relabeling(self, perm):
        g = gen.generalized_petersen(10, 3)
        h = relabel(g, perm)
        got = {tuple(sorted(perm[v] for v in c.vertices)) for c in enumerate_convex_cycles(g)}
        assert got == {tuple(sorted(c.vertices)) for c in enumerate_convex_cycles(h)}


def _nx_dist(g):
    from oracles import nx_distances

    return nx_distances(g)


class TestShortestThrough:
    def test_q3_every_pair_is_a_square(self):
        g = gen.hypercube(3)
        for u in range(g.n):
            for a, b in itertools.combinations(g.adj[u], 2):
                assert shortest_convex_cycle_through(g, a, u, b).length == 4

    def test_g10_3_all_thirty_pairs(self):
        g = gen.generalized_petersen(10, 3)
        lens = [shortest_convex_cycle_through(g, a, u, b).length
                for u in range(g.n) for a, b in itertools.combinations(g.adj[u], 2)]
        assert len(lens) == 60 and set(lens) == {6}

    def test_truncated_cuboctahedron_pairs(self):
        g = gen.truncated_cuboctahedron()
        lens = {shortest_convex_cycle_through(g, a, 0, b).length for a, b in itertools.combinations(g.adj[0], 2)}
        assert lens == {4, 6, 8}

    def test_tree_has_none(self):
        g = gen.complete_bipartite(1, 3)
        assert shortest_convex_cycle_through(g, 1, 0, 2) is None

    def test_non_neighbors_rejected(self):
        g = gen.cycle(6)
        with pytest.raises(GraphError):
            shortest_convex_cycle_through(g, 1, 0, 3)
        with pytest.raises(GraphError):
            shortest_convex_cycle_through(g, 1, 0, 1)

    @pytest.mark.parametrize("name", ["X", "naphthalene", "grid3x3", "permutahedron", "trunc_cubocta", "prism8"])
    def test_agrees_with_brute_minimum(self, name):
        g = partial_cube_corpus()[name]
        brute = [CycleRecord(c, True, True) for c in brute_convex_cycles(g, 2 * _diam(g) + 2)]
        for u in range(g.n):
            for a, b in itertools.combinations(g.adj[u], 2):
                hits = [c for c in brute if c.contains_path(a, u, b)]
                best = min(hits, key=lambda c: (c.length, c.vertices)) if hits else None
                assert shortest_convex_cycle_through(g, a, u, b) == best


def _diam(g):
    return max(max(r.values()) for r in _nx_dist(g).values())


class TestGirthSignature:
    @pytest.mark.parametrize("name,sig", [
        ("Q3", (4, 4, 4)),
        ("prism6", (4, 4, 6)),
        ("prism12", (4, 4, 12)),
        ("G10_3", (6, 6, 6)),
        ("ML3", (6, 6, 6)),
        ("permutahedron", (4, 6, 6)),
        ("trunc_cubocta", (4, 6, 8)),
        ("trunc_icosidodeca", (4, 6, 10)),
    ])
    def test_table(self, name, sig):
        s = girth_signature(partial_cube_corpus()[name])
        assert s.as_tuple() == sig and s.constant

    def test_prism12_layer_is_convex_by_oracle(self):
        g = gen.prism(12)
        assert interval_convex(g, range(12))

    def test_per_vertex_sorted(self):
        s = girth_signature(gen.truncated_cuboctahedron())
        assert all(list(p) == sorted(p) for p in s.per_vertex) and len(s.per_vertex) == 48

    def test_uncovered_pair_sorts_last(self):
        # K4 is cubic, and its triangles are not convex cycles of even length
        g = build_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
        s = girth_signature(g, ConvexCycleIndex(g, 4))
        assert s.as_tuple() == (None, None, None) and s.constant

    def test_non_cubic_rejected(self):
        with pytest.raises(GraphError):
            girth_signature(gen.cycle(6))


class TestCoverage:
    @pytest.mark.parametrize("name", ["G10_3", "permutahedron", "prism6", "Q3", "trunc_icosidodeca"])
    def test_covered(self, name):
        r = all_incident_pairs_covered(partial_cube_corpus()[name])
        assert r and r.uncovered is None

    def test_tree_reports_first_uncovered(self):
        r = all_incident_pairs_covered(gen.complete_bipartite(1, 3))
        assert not r and r.uncovered == (1, 0, 2)

    def test_ladder_end_pairs(self):
        # every 2-path of a ladder lies on a square except the straight ones along a rail
        g = partial_cube_corpus()["ladder4"]
        r = all_incident_pairs_covered(g)
        assert not r
        a, u, b = r.uncovered
        assert not any(set((a, u, b)) <= set(c) for c in brute_convex_cycles(g, 8))


class TestTraverse:
    def test_c6_single_cycle(self):
        tr = find_convex_traverse(gen.cycle(6), (0, 1), (3, 4))
        assert len(tr.cycles) == 1 and tr.cycles[0].vertices == (0, 1, 2, 3, 4, 5)
        assert tr.length == 2 and tr.end_edge == (4, 3) and tr.side_v == (0, 5, 4)

    def test_q3_opposite_face_edges(self):
        g = gen.hypercube(3)
        tr = find_convex_traverse(g, (0, 1), (2, 3))
        assert len(tr.cycles) == 1 and tr.length == 1
        assert traverse_violations(g, tr) == []

    def test_prism8_ladder_of_four_squares(self):
        g = gen.prism(8)
        tr = find_convex_traverse(g, (0, 8), (4, 12))
        assert len(tr.cycles) == 4 and all(c.length == 4 for c in tr.cycles)
        assert tr.length == 4
        assert traverse_violations(g, tr) == []

    def test_non_theta_rejected(self):
        with pytest.raises(GraphError, match="Θ"):
            find_convex_traverse(gen.cycle(6), (0, 1), (1, 2))

    def test_same_edge_rejected(self):
        with pytest.raises(GraphError):
            find_convex_traverse(gen.cycle(6), (0, 1), (1, 0))

    def test_non_edge_rejected(self):
        with pytest.raises(GraphError):
            find_convex_traverse(gen.cycle(6), (0, 2), (3, 4))

    def test_tree_edges_unrelated(self):
        g = gen.path(3)
        with pytest.raises(GraphError):
            find_convex_traverse(g, (0, 1), (1, 2))

    def test_missing_cycles_raise_not_found(self):
        # cap the cycle length so the hexagon is invisible
        g = gen.cycle(6)
        with pytest.raises(TraverseNotFound):
            find_convex_traverse(g, (0, 1), (3, 4), ConvexCycleIndex(g, 4))

    @pytest.mark.parametrize("name", ["C6", "C10", "Q3", "ladder4", "grid3x3", "naphthalene", "X", "G10_3", "prism6"])
    def test_every_theta_pair(self, name):
        g = partial_cube_corpus()[name]
        index = ConvexCycleIndex(g)
        for cls in theta_star_classes(g).classes:
            for i, j in itertools.combinations(cls, 2):
                tr = find_convex_traverse(g, g.edges[i], g.edges[j], index)
                assert traverse_violations(g, tr) == [], (g.edges[i], g.edges[j])


class TestIntertwining:
    def test_two_hexagons_sharing_two_edges(self):
        rec = intertwining((0, 1, 2, 3, 4, 5), (0, 1, 2, 6, 7, 8))
        assert (rec.m, rec.l1, rec.l2, rec.residue) == (2, 6, 6, 2)
        assert rec.shared_path == (0, 1, 2)

    def test_squares_sharing_an_edge(self):
        g = gen.hypercube(3)
        sq = four_cycles(g)
        pairs = [(a, b) for a, b in itertools.combinations(sq, 2) if len(set(a) & set(b)) == 2]
        assert pairs and all(intertwining(a, b) is None for a, b in pairs)

    def test_two_arcs_rejected(self):
        assert intertwining((0, 1, 2, 3, 4, 5), (0, 1, 6, 3, 4, 7)) is None

    def test_g10_3_configuration(self):
        g = gen.generalized_petersen(10, 3)
        hexes = enumerate_convex_cycles(g, 6)
        found = [intertwining(a, b) for a, b in itertools.combinations(hexes, 2)
                 if len(set(a.edges) & set(b.edges)) == 2]
        assert len(found) == 60
        assert all(r is not None and r.m == 2 and r.residue == 2 for r in found)

    @pytest.mark.parametrize("name", ["G10_3", "permutahedron", "trunc_cubocta", "prism8", "X"])
    def test_residue_non_negative_integer(self, name):
        g = partial_cube_corpus()[name]
        cyc = enumerate_isometric_cycles(g, 10)
        for a, b in itertools.combinations(cyc, 2):
            r = intertwining(a, b)
            if r is not None:
                assert r.m >= 2 and r.residue >= 0
                assert 2 * r.residue == r.l1 + r.l2 - 4 * r.m


class TestEulerReport:
    def test_permutahedron(self):
        r = euler_report(gen.cubic_permutahedron())
        assert (r.n, r.e, r.f4, r.f6, r.f, r.chi) == (24, 36, 6, 8, 14, 2)
        assert 4 * r.f4 == r.n and 3 * r.f6 == r.n and 12 * r.chi == r.n

    @pytest.mark.parametrize("g", [gen.prism(6), gen.truncated_cuboctahedron(), gen.hypercube(3)])
    def test_wrong_signature(self, g):
        with pytest.raises(HypothesisViolation, match="signature"):
            euler_report(g)

    def test_non_cubic(self):
        with pytest.raises(HypothesisViolation):
            euler_report(gen.cycle(6))


class TestClaimsAudit:
    @pytest.mark.parametrize("name", ["Q3", "G10_3", "trunc_icosidodeca", "permutahedron", "X", "grid3x3"])
    def test_passes(self, name):
        assert claims_audit(partial_cube_corpus()[name]).passed

    def test_g10_3_has_no_squares(self):
        a = claims_audit(gen.generalized_petersen(10, 3))
        assert a.four_cycles == 0 and a.passed

    def test_k23_squares_not_convex(self):
        a = claims_audit(gen.complete_bipartite(2, 3))
        assert not a.passed and len(a.nonconvex_four_cycles) == 3


class TestIsometricPatterns:
    def test_x_inside_g10_3(self):
        x, g = gen.graph_X(), gen.generalized_petersen(10, 3)
        ours = set(isometric_embeddings(x, g))
        ref = set()
        gm = isomorphism.GraphMatcher(to_nx(g), to_nx(x))
        dg, dx = g.dist, x.dist
        for m in gm.subgraph_isomorphisms_iter():
            inv = {p: t for t, p in m.items()}
            img = tuple(inv[p] for p in range(x.n))
            if all(dg[img[a], img[b]] == dx[a, b] for a in range(x.n) for b in range(x.n)):
                ref.add(img)
        assert ours == ref and len(ours) == 240

    def test_no_x_in_permutahedron(self):
        assert next(isometric_embeddings(gen.graph_X(), gen.cubic_permutahedron()), None) is None

    def test_x_vertex_two_on_three_hexagons(self):
        x = gen.graph_X()
        hexes = [c for c in enumerate_isometric_cycles(x) if c.length == 6]
        assert sum(1 in c.vertices for c in hexes) == 3

    def test_disconnected_pattern_rejected(self):
        with pytest.raises(GraphError):
            next(isometric_embeddings(build_graph(2, []), gen.cycle(4)))


class TestHexagonAndSquareConsequences:
    def test_two_squares_at_a_vertex_means_prism(self):
        for name, g in cubic_vt_corpus().items():
            per_vertex = [sum(u in c for c in four_cycles(g)) for u in range(g.n)]
            if max(per_vertex) >= 2:
                assert any(is_isomorphic(g, gen.prism(k)) for k in range(4, g.n // 2 + 1, 2)), name

    def test_intertwined_hexagons_extend_to_x(self):
        x = gen.graph_X()
        seen = 0
        for name, g in partial_cube_corpus().items():
            if not is_cubic(g) or name == "Q3":
                continue
            hexes = [c for c in enumerate_isometric_cycles(g, 6) if c.length == 6]
            pairs = [(a, b) for a, b in itertools.combinations(hexes, 2)
                     if (r := intertwining(a, b)) is not None and r.m == 2]
            if not pairs:
                continue
            images = [frozenset(m) for m in isometric_embeddings(x, g)]
            for a, b in pairs:
                seen += 1
                assert any(im >= set(a.vertices) | set(b.vertices) for im in images), name
        assert seen == 120

    def test_isometric_x_means_g10_3(self):
        x, target = gen.graph_X(), gen.generalized_petersen(10, 3)
        hits = []
        for name, g in partial_cube_corpus().items():
            if is_cubic(g) and next(isometric_embeddings(x, g), None) is not None:
                assert is_vertex_transitive(g)
                assert is_isomorphic(g, target), name
                hits.append(name)
        assert sorted(hits) == ["G10_3", "ML3"]
