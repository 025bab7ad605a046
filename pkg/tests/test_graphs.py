import random

import pytest

from netquench.graphs import (
    GenerationError,
    Graph,
    GraphParseError,
    connected_component_count,
    generate_barabasi_albert,
    generate_complete,
    generate_erdos_renyi,
    generate_random_regular,
    generate_ring,
    parse_edge_list,
    serialize_edge_list,
)


class TestParse:
    def test_basic(self):
        g = parse_edge_list("3\n0 1\n1 2")
        assert g.n == 3
        assert g.edges == ((0, 1), (1, 2))

    def test_self_loop_rejected(self):
        with pytest.raises(GraphParseError, match="line 2.*self-loop"):
            parse_edge_list("2\n0 0")

    def test_reversed_duplicate_collapses(self):
        g = parse_edge_list("4\n0 1\n1 0")
        assert g.num_edges == 1

    def test_comments_and_blank_lines(self):
        g = parse_edge_list("# header\n\n3\n# mid\n0 2\n")
        assert g.edges == ((0, 2),)

    def test_malformed_line_reports_number(self):
        with pytest.raises(GraphParseError, match="line 3"):
            parse_edge_list("3\n0 1\n0 1 2")
        with pytest.raises(GraphParseError, match="line 2"):
            parse_edge_list("3\nx y")

    def test_out_of_range_id(self):
        with pytest.raises(GraphParseError, match="out of range"):
            parse_edge_list("2\n0 5")

    def test_missing_count_line(self):
        with pytest.raises(GraphParseError, match="vertex count"):
            parse_edge_list("# nothing\n")

    def test_round_trip(self):
        cases = [
            generate_ring(7),
            generate_random_regular(8, 3, seed=5),
            generate_barabasi_albert(30, 3, 2, seed=11),
            generate_erdos_renyi(20, 0.3, seed=2),
            Graph(4),
            Graph(1),
        ]
        for g in cases:
            assert parse_edge_list(serialize_edge_list(g)) == g
            assert parse_edge_list(serialize_edge_list(g, comment="with stamp")) == g


class TestGraphType:
    def test_rejects_self_loop(self):
        with pytest.raises(ValueError, match="self-loop"):
            Graph(3, [(1, 1)])

    def test_rejects_bad_ids(self):
        with pytest.raises(ValueError, match="out of range"):
            Graph(3, [(0, 3)])

    def test_adjacency_symmetric_and_sorted(self):
        g = Graph(4, [(2, 0), (0, 1), (3, 0)])
        assert g.adj[0] == (1, 2, 3)
        for i in range(4):
            for j in g.adj[i]:
                assert i in g.adj[j]

    def test_degree_queries(self):
        k4 = generate_complete(4)
        assert k4.is_regular() == 3
        star = Graph(4, [(0, 1), (0, 2), (0, 3)])
        assert star.is_regular() is None
        assert generate_ring(5).degree(0) == 2
        with pytest.raises(ValueError):
            star.degree(9)

    def test_handshake(self):
        rng = random.Random(0)
        for _ in range(20):
            g = generate_erdos_renyi(rng.randint(1, 25), rng.random(), rng.randrange(10**6))
            assert sum(g.degree_sequence()) == 2 * g.num_edges


class TestRing:
    def test_triangle(self):
        g = generate_ring(3)
        assert g.num_edges == 3 and g.is_regular() == 2

    def test_hexagon(self):
        g = generate_ring(6)
        assert g.num_edges == 6 and g.is_regular() == 2

    def test_too_small(self):
        with pytest.raises(ValueError):
            generate_ring(2)


class TestRandomRegular:
    def test_k4_forced(self):
        assert generate_random_regular(4, 3, seed=0) == generate_complete(4)

    def test_postconditions(self):
        rng = random.Random(3)
        for _ in range(25):
            n = rng.randrange(4, 24)
            r = rng.randrange(0, min(n, 6))
            if (n * r) % 2:
                continue
            g = generate_random_regular(n, r, seed=rng.randrange(10**6))
            assert g.is_regular() == r
            assert g.num_edges == n * r // 2

    def test_parity_error(self):
        with pytest.raises(ValueError, match="parity"):
            generate_random_regular(5, 3, seed=0)

    def test_degree_bound(self):
        with pytest.raises(ValueError):
            generate_random_regular(4, 4, seed=0)

    def test_deterministic_per_seed(self):
        a = generate_random_regular(12, 3, seed=42)
        b = generate_random_regular(12, 3, seed=42)
        assert a == b

    def test_restart_budget_exhaustion(self):
        with pytest.raises(GenerationError, match="restarts"):
            generate_random_regular(10, 3, seed=0, max_restarts=0)


class TestBarabasiAlbert:
    def test_no_arrivals_is_complete(self):
        assert generate_barabasi_albert(5, 5, 1, seed=0) == generate_complete(5)

    def test_edge_bookkeeping(self):
        g = generate_barabasi_albert(100, 3, 2, seed=7)
        assert g.num_edges == 3 + 97 * 2

    def test_edge_count_formula(self):
        rng = random.Random(9)
        for _ in range(15):
            m0 = rng.randrange(1, 6)
            m = rng.randrange(1, m0 + 1)
            n = rng.randrange(m0 + 1, 40)
            g = generate_barabasi_albert(n, m0, m, seed=rng.randrange(10**6))
            assert g.num_edges == m0 * (m0 - 1) // 2 + (n - m0) * m

    def test_parameter_ordering(self):
        with pytest.raises(ValueError):
            generate_barabasi_albert(3, 5, 1, seed=0)
        with pytest.raises(ValueError):
            generate_barabasi_albert(10, 3, 4, seed=0)

    def test_deterministic_per_seed(self):
        assert generate_barabasi_albert(50, 3, 2, seed=1) == generate_barabasi_albert(
            50, 3, 2, seed=1
        )


class TestComponents:
    def test_ring_is_connected(self):
        assert connected_component_count(generate_ring(5)) == 1

    def test_isolated_vertices(self):
        assert connected_component_count(Graph(3)) == 3

    def test_two_triangles(self):
        g = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        assert connected_component_count(g) == 2
