import networkx as nx
import pytest

from maxconsensus.errors import ParseError
from maxconsensus.graph import (
    INFINITE,
    Digraph,
    adjacency,
    dependency_graph,
    diameter,
    format_edge_list,
    from_edges,
    has_spanning_tree_rooted_at,
    is_jointly_strongly_connected,
    is_strongly_connected,
    neighbors,
    p_neighbors,
    parse_edge_list,
    reducible_block_form,
    strong_bridges,
    strongly_connected_components,
    to_dot,
    union_graph,
    union_of_matrices,
)
from maxconsensus.tropical import NEG_INF, TropicalAdjMatrix, mat_pow, mat_product

from .conftest import random_edges, random_matrix, random_strongly_connected
from .oracles import floyd_warshall, fw_diameter


def complete(n):
    return from_edges(n, [(j, i) for j in range(1, n + 1) for i in range(1, n + 1)])


def nx_graph(G):
    H = nx.DiGraph()
    H.add_nodes_from(G.nodes)
    H.add_edges_from(e for e in G.edges if e[0] != e[1])
    return H


class TestConstruction:
    def test_three_cycle(self, cycle3):
        assert len(cycle3.edges) == 6

    def test_single_node(self):
        G = from_edges(1, [])
        assert G.edges == {(1, 1)}

    def test_dedup(self):
        assert from_edges(2, [(1, 2), (1, 2)]).edges == {(1, 1), (2, 2), (1, 2)}

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            from_edges(2, [(1, 3)])

    def test_frozen(self, cycle3):
        with pytest.raises(AttributeError):
            cycle3.n = 4


class TestAdjacency:
    def test_complete_is_zero_matrix(self):
        assert adjacency(complete(3)) == TropicalAdjMatrix.zero(3)

    def test_loops_only_is_identity(self):
        assert adjacency(from_edges(4, [])) == TropicalAdjMatrix.identity(4)

    def test_three_cycle_entries(self, cycle3):
        A = adjacency(cycle3)
        zeros = {(i, j) for i in range(1, 4) for j in range(1, 4) if A.entry(i, j) == 0}
        assert zeros == {(1, 1), (2, 2), (3, 3), (2, 1), (3, 2), (1, 3)}

    def test_dependency_graph_cases(self):
        assert dependency_graph(TropicalAdjMatrix.zero(3)) == complete(3)
        assert dependency_graph(TropicalAdjMatrix.identity(3)) == from_edges(3, [])

    def test_round_trips(self, rng):
        for _ in range(100):
            n = rng.randint(1, 10)
            G = from_edges(n, random_edges(rng, n))
            assert dependency_graph(adjacency(G)) == G
            A = random_matrix(rng, n)
            assert adjacency(dependency_graph(A)) == A


class TestNeighbors:
    def test_three_cycle(self, cycle3):
        assert neighbors(cycle3, 1) == {1, 3}

    def test_loops_only(self):
        assert neighbors(from_edges(3, []), 2) == {2}

    def test_complete(self):
        assert neighbors(complete(4), 1) == {1, 2, 3, 4}

    def test_invalid_node(self, cycle3):
        with pytest.raises(ValueError):
            neighbors(cycle3, 4)

    def test_p_neighbors_examples(self, cycle3, path3):
        assert p_neighbors(cycle3, 1, 2) == {1, 2, 3}
        assert p_neighbors(path3, 1, 5) == {1}
        assert p_neighbors(cycle3, 1, 1) == neighbors(cycle3, 1)

    def test_p_neighbors_matches_shortest_paths(self, rng):
        for _ in range(60):
            n = rng.randint(1, 9)
            edges = random_edges(rng, n, 0.25)
            G = from_edges(n, edges)
            d = floyd_warshall(n, edges)
            for i in G.nodes:
                for p in range(1, n + 1):
                    assert p_neighbors(G, i, p) == {j for j in G.nodes if d[(j, i)] <= p}

    def test_d_neighbors_are_everything(self, rng):
        for _ in range(50):
            G = random_strongly_connected(rng, rng.randint(1, 9))
            d = max(1, diameter(G))
            assert all(p_neighbors(G, i, d) == set(G.nodes) for i in G.nodes)

    def test_power_graph_neighbors(self, rng):
        for _ in range(60):
            n = rng.randint(1, 8)
            A = random_matrix(rng, n, 0.2)
            G = dependency_graph(A)
            for k in range(1, n + 1):
                Gk = dependency_graph(mat_pow(A, k))
                assert all(neighbors(Gk, i) == p_neighbors(G, i, k) for i in G.nodes)


class TestConnectivity:
    def test_examples(self, cycle3, path3):
        assert is_strongly_connected(cycle3)
        assert not is_strongly_connected(path3)
        assert is_strongly_connected(from_edges(1, []))

    def test_diameter_examples(self, cycle3, path3):
        assert diameter(complete(4)) == 1
        assert diameter(cycle3) == 2
        assert diameter(path3) == INFINITE
        assert diameter(from_edges(1, [])) == 0

    def test_against_networkx_and_floyd_warshall(self, rng):
        for _ in range(200):
            n = rng.randint(1, 10)
            edges = random_edges(rng, n, rng.choice([0.1, 0.2, 0.4]))
            G = from_edges(n, edges)
            H = nx_graph(G)
            sc = nx.is_strongly_connected(H)
            assert is_strongly_connected(G) == sc
            assert (diameter(G) != INFINITE) == sc
            assert diameter(G) == fw_diameter(n, edges)
            if sc:
                assert diameter(G) <= n - 1
            ours = sorted(tuple(c) for c in strongly_connected_components(G))
            theirs = sorted(tuple(sorted(c)) for c in nx.strongly_connected_components(H))
            assert ours == theirs

    def test_scc_order_is_reverse_topological(self, rng):
        for _ in range(100):
            n = rng.randint(1, 10)
            G = from_edges(n, random_edges(rng, n, 0.15))
            comps = strongly_connected_components(G)
            pos = {v: k for k, c in enumerate(comps) for v in c}
            # an edge never points to a component emitted later
            assert all(pos[j] >= pos[i] for j, i in G.edges)

    def test_spanning_tree(self, path3, cycle3):
        assert has_spanning_tree_rooted_at(path3, 1)
        assert not has_spanning_tree_rooted_at(path3, 3)
        assert all(has_spanning_tree_rooted_at(cycle3, i) for i in cycle3.nodes)

    def test_strong_bridges(self, cycle3):
        assert strong_bridges(cycle3) == [(1, 2), (2, 3), (3, 1)]
        assert strong_bridges(complete(3)) == []


class TestUnion:
    def test_two_node(self):
        G = union_graph([from_edges(2, [(1, 2)]), from_edges(2, [(2, 1)])])
        assert G == complete(2)

    def test_idempotent(self, cycle3):
        assert union_graph([cycle3, cycle3]) == cycle3

    def test_matches_matrix_route(self, rng):
        for _ in range(100):
            n = rng.randint(1, 8)
            graphs = [from_edges(n, random_edges(rng, n, 0.2)) for _ in range(rng.randint(1, 4))]
            assert union_graph(graphs) == union_of_matrices([adjacency(G) for G in graphs])

    def test_jointly(self, cycle3):
        assert is_jointly_strongly_connected([from_edges(2, [(1, 2)]), from_edges(2, [(2, 1)])])
        assert not is_jointly_strongly_connected([from_edges(2, [(1, 2)]), from_edges(2, [(1, 2)])])
        assert is_jointly_strongly_connected([cycle3])

    def test_jointly_equals_product_connectivity(self, rng):
        for _ in range(150):
            n = rng.randint(1, 7)
            mats = [random_matrix(rng, n, 0.15) for _ in range(rng.randint(1, 4))]
            graphs = [dependency_graph(M) for M in mats]
            assert is_jointly_strongly_connected(graphs) == is_strongly_connected(dependency_graph(mat_product(mats)))


def assert_block_form(A, form):
    n = A.n
    assert sorted(form.order) == list(range(1, n + 1))
    assert 1 <= form.split < n
    P = A.permuted(form.order)
    for r in range(1, form.split + 1):
        for c in range(form.split + 1, n + 1):
            assert P.entry(r, c) is NEG_INF


class TestReducible:
    def test_strongly_connected_has_none(self, cycle3):
        assert reducible_block_form(adjacency(cycle3)) is None

    def test_path(self, path3):
        A = adjacency(path3)
        form = reducible_block_form(A)
        assert_block_form(A, form)
        # identity ordering happens to work for the path already
        assert A.entry(1, 2) is NEG_INF and A.entry(1, 3) is NEG_INF and A.entry(2, 3) is NEG_INF

    def test_disconnected_pair(self):
        A = TropicalAdjMatrix.identity(2)
        assert_block_form(A, reducible_block_form(A))

    def test_random(self, rng):
        for _ in range(300):
            n = rng.randint(1, 9)
            A = random_matrix(rng, n, rng.choice([0.1, 0.3, 0.6]))
            form = reducible_block_form(A)
            assert (form is None) == is_strongly_connected(dependency_graph(A))
            if form is not None:
                assert_block_form(A, form)

    def test_block_form_persists_under_powers(self, rng):
        for _ in range(50):
            A = random_matrix(rng, rng.randint(2, 7), 0.2)
            form = reducible_block_form(A)
            if form is None:
                continue
            for k in (2, 5, 9):
                assert_block_form(mat_pow(A, k), form)


class TestFormats:
    def test_edge_list_round_trip(self, rng):
        for _ in range(30):
            n = rng.randint(1, 8)
            G = from_edges(n, random_edges(rng, n))
            assert parse_edge_list(format_edge_list(G)) == G

    def test_edge_list_layout(self, cycle3):
        assert format_edge_list(cycle3) == "3\n1 2\n2 3\n3 1\n"

    def test_self_loops_optional(self):
        assert parse_edge_list("2\n1 1\n1 2\n") == from_edges(2, [(1, 2)])

    @pytest.mark.parametrize("text, line", [("3\n1 2\n4 1\n", 3), ("0\n", 1), ("2\n1\n", 2), ("", 1)])
    def test_edge_list_errors(self, text, line):
        with pytest.raises(ParseError) as exc:
            parse_edge_list(text)
        assert exc.value.line == line

    def test_dot(self, path3):
        assert to_dot(path3) == "digraph G {\n  1;\n  2;\n  3;\n  1 -> 2;\n  2 -> 3;\n}\n"

    def test_digraph_is_hashable(self, cycle3):
        assert len({cycle3, from_edges(3, [(3, 1), (1, 2), (2, 3)])}) == 1
        assert isinstance(cycle3, Digraph)
