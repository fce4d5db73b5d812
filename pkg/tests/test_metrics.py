import math
import random

import numpy as np
import pytest

from hashnet.errors import UndefinedMetricError
from hashnet.graph import DirectedGraph
from hashnet.metrics import (
    betweenness_centrality,
    clustering_coefficients,
    degree_stats,
    eigenvector_centrality,
    geodesic_stats,
    graph_density,
    metric_distribution,
    network_summary,
    pagerank,
    top_k_nodes,
)
from oracles import (
    brute_betweenness,
    brute_clustering,
    brute_geodesic_stats,
    random_directed_graph,
)


def cycle(n):
    nodes = [f"n{i}" for i in range(n)]
    return DirectedGraph(nodes, [(nodes[i], nodes[(i + 1) % n]) for i in range(n)])


class TestDegreeStats:
    def test_single_edge(self):
        g = DirectedGraph((), [("a", "b")])
        in_deg, out_deg = degree_stats(g)
        assert in_deg.values == {"a": 0.0, "b": 1.0}
        assert out_deg.values == {"a": 1.0, "b": 0.0}

    def test_cycle_symmetry(self):
        g = cycle(3)
        in_deg, out_deg = degree_stats(g)
        assert set(in_deg.values.values()) == {1.0}
        assert set(out_deg.values.values()) == {1.0}

    def test_star_hand_count(self):
        g = DirectedGraph((), [("l1", "c"), ("l2", "c"), ("l3", "c")])
        in_deg, out_deg = degree_stats(g)
        assert in_deg.values["c"] == 3.0
        assert out_deg.values["c"] == 0.0

    def test_sums_equal_edge_count(self):
        rng = random.Random(5)
        for _ in range(20):
            nodes, edges = random_directed_graph(rng)
            g = DirectedGraph(nodes, edges)
            in_deg, out_deg = degree_stats(g)
            assert sum(in_deg.values.values()) == g.edge_count
            assert sum(out_deg.values.values()) == g.edge_count


class TestGraphDensity:
    def test_paper_scale_rounds_to_three_decimals(self):
        nodes = [f"n{i}" for i in range(527)]
        # any simple digraph with 527 nodes and 1947 edges
        edges = []
        i = 0
        for a in range(527):
            for b in range(527):
                if a != b:
                    edges.append((nodes[a], nodes[b]))
                    i += 1
                    if i == 1947:
                        break
            if i == 1947:
                break
        g = DirectedGraph(nodes, edges)
        assert f"{graph_density(g):.3f}" == "0.007"
        assert math.isclose(graph_density(g), 1947 / (527 * 526))

    def test_complete_graph(self):
        nodes = ["a", "b", "c"]
        g = DirectedGraph(nodes, [(x, y) for x in nodes for y in nodes if x != y])
        assert graph_density(g) == 1.0

    def test_two_nodes_no_edges(self):
        assert graph_density(DirectedGraph(["a", "b"])) == 0.0

    def test_undefined_below_two_nodes(self):
        with pytest.raises(UndefinedMetricError):
            graph_density(DirectedGraph(["a"]))


class TestGeodesicStats:
    def test_directed_cycle(self):
        avg, diameter = geodesic_stats(cycle(3), "directed")
        assert avg == pytest.approx(1.5)
        assert diameter == 2

    def test_undirected_path(self):
        g = DirectedGraph((), [("a", "b"), ("b", "c")])
        avg, diameter = geodesic_stats(g, "undirected")
        assert avg == pytest.approx(4 / 3)
        assert diameter == 2

    def test_unreachable_pairs_excluded(self):
        g = DirectedGraph((), [("a", "b"), ("c", "d")])
        avg, diameter = geodesic_stats(g, "undirected")
        assert avg == pytest.approx(1.0)
        assert diameter == 1

    def test_needs_an_edge(self):
        with pytest.raises(UndefinedMetricError):
            geodesic_stats(DirectedGraph(["a", "b"]), "undirected")

    def test_matches_brute_force(self):
        rng = random.Random(13)
        for _ in range(30):
            nodes, edges = random_directed_graph(rng)
            if not edges:
                continue
            g = DirectedGraph(nodes, edges)
            for mode, directed in (("directed", True), ("undirected", False)):
                expected = brute_geodesic_stats(nodes, edges, directed)
                if expected[0] is None:
                    continue
                avg, diameter = geodesic_stats(g, mode)
                assert avg == pytest.approx(expected[0])
                assert diameter == expected[1]


class TestBetweenness:
    def test_directed_path_interior(self):
        g = DirectedGraph((), [("a", "b"), ("b", "c")])
        bc = betweenness_centrality(g)
        assert bc.values == {"a": 0.0, "b": 1.0, "c": 0.0}

    def test_shortcut_removes_dependency(self):
        g = DirectedGraph((), [("a", "b"), ("b", "c"), ("a", "c")])
        assert betweenness_centrality(g).values["b"] == 0.0

    def test_bidirected_star_center(self):
        edges = []
        for leaf in ("l1", "l2", "l3"):
            edges += [(leaf, "c"), ("c", leaf)]
        g = DirectedGraph((), edges)
        assert betweenness_centrality(g).values["c"] == 6.0

    def test_equal_length_paths_split(self):
        # two disjoint length-2 routes a->c: dependency 0.5 each
        g = DirectedGraph((), [("a", "b1"), ("b1", "c"), ("a", "b2"), ("b2", "c")])
        bc = betweenness_centrality(g)
        assert bc.values["b1"] == pytest.approx(0.5)
        assert bc.values["b2"] == pytest.approx(0.5)

    @pytest.mark.parametrize("engine", ["python", "compiled"])
    def test_matches_brute_force(self, engine):
        rng = random.Random(23)
        for _ in range(40):
            nodes, edges = random_directed_graph(rng)
            g = DirectedGraph(nodes, edges)
            bc = betweenness_centrality(g, engine=engine)
            expected = brute_betweenness(nodes, edges, directed=True)
            for node in nodes:
                assert bc.values[node] == pytest.approx(expected[node], abs=1e-9)

    def test_undirected_mode_matches_brute_force(self):
        rng = random.Random(29)
        for _ in range(25):
            nodes, edges = random_directed_graph(rng)
            g = DirectedGraph(nodes, edges)
            bc = betweenness_centrality(g, mode="undirected")
            expected = brute_betweenness(nodes, edges, directed=False)
            for node in nodes:
                assert bc.values[node] == pytest.approx(expected[node], abs=1e-9)

    def test_serial_and_parallel_identical(self):
        rng = random.Random(31)
        nodes = [f"n{i}" for i in range(300)]
        edges = {
            (random.choice(nodes), random.choice(nodes)) for _ in range(1500)
        }
        edges = [(a, b) for a, b in edges if a != b]
        g = DirectedGraph(nodes, edges)
        serial = betweenness_centrality(g, workers=1)
        parallel = betweenness_centrality(g, workers=8)
        assert serial.values == parallel.values  # bitwise, not approx


class TestEigenvector:
    def test_complete_graph_uniform(self):
        nodes = ["a", "b", "c"]
        g = DirectedGraph(nodes, [(x, y) for x in nodes for y in nodes if x != y])
        ev = eigenvector_centrality(g)
        for score in ev.values.values():
            assert score == pytest.approx(1 / 3, abs=1e-9)

    def test_star_closed_form(self):
        g = DirectedGraph((), [("c", "l1"), ("c", "l2"), ("c", "l3")])
        ev = eigenvector_centrality(g, mode="undirected")
        center = math.sqrt(3) / (3 + math.sqrt(3))
        leaf = 1 / (3 + math.sqrt(3))
        assert ev.values["c"] == pytest.approx(center, abs=1e-6)
        for l in ("l1", "l2", "l3"):
            assert ev.values[l] == pytest.approx(leaf, abs=1e-6)

    def test_mean_is_reciprocal_node_count(self):
        rng = random.Random(37)
        for _ in range(20):
            nodes, edges = random_directed_graph(rng)
            if not edges:
                continue
            g = DirectedGraph(nodes, edges)
            ev = eigenvector_centrality(g)
            mean = sum(ev.values.values()) / len(nodes)
            assert mean == pytest.approx(1 / len(nodes), abs=1e-12)

    def test_directed_in_mode_prefers_high_in_degree(self):
        g = DirectedGraph((), [("a", "hub"), ("b", "hub"), ("c", "hub"), ("hub", "a")])
        ev = eigenvector_centrality(g, mode="directed_in")
        assert ev.values["hub"] == max(ev.values.values())

    def test_needs_an_edge(self):
        with pytest.raises(UndefinedMetricError):
            eigenvector_centrality(DirectedGraph(["a", "b"]))

    def test_permutation_equivariant(self):
        nodes, edges = random_directed_graph(random.Random(41))
        if not edges:
            nodes, edges = ["a", "b"], [("a", "b")]
        g = DirectedGraph(nodes, edges)
        relabel = {n: f"x{n}" for n in nodes}
        g2 = DirectedGraph(
            [relabel[n] for n in nodes], [(relabel[a], relabel[b]) for a, b in edges]
        )
        ev1 = eigenvector_centrality(g)
        ev2 = eigenvector_centrality(g2)
        for n in nodes:
            assert ev1.values[n] == pytest.approx(ev2.values[relabel[n]], abs=1e-12)


class TestPageRank:
    def test_directed_cycle_uniform(self):
        for n in range(2, 11):
            pr = pagerank(cycle(n))
            for score in pr.values.values():
                assert score == pytest.approx(1 / n, abs=1e-9)

    def test_two_node_mutual(self):
        g = DirectedGraph((), [("a", "b"), ("b", "a")])
        pr = pagerank(g)
        assert pr.values["a"] == pytest.approx(0.5, abs=1e-9)

    def test_single_edge_matches_linear_solve(self):
        # independent oracle: fixed point of the damped surfer with uniform
        # dangling redistribution on a -> b, solved as a 2x2 linear system
        d = 0.85
        transition = np.array([[0.0, 0.0], [1.0, 0.0]])  # column v -> row w
        dangling = np.array([[0.0, 0.5], [0.0, 0.5]])
        system = np.eye(2) - d * (transition + dangling)
        expected = np.linalg.solve(system, np.full(2, (1 - d) / 2))
        g = DirectedGraph((), [("a", "b")])
        pr = pagerank(g)
        assert pr.values["a"] == pytest.approx(expected[0], abs=1e-9)
        assert pr.values["b"] == pytest.approx(expected[1], abs=1e-9)

    def test_sums_to_one_with_dangling_nodes(self):
        rng = random.Random(43)
        for _ in range(100):
            nodes, edges = random_directed_graph(rng)
            g = DirectedGraph(nodes, edges)
            pr = pagerank(g)
            assert sum(pr.values.values()) == pytest.approx(1.0, abs=1e-9)

    def test_permutation_equivariant(self):
        nodes, edges = random_directed_graph(random.Random(47))
        g = DirectedGraph(nodes, edges)
        relabel = {n: f"y{n}" for n in nodes}
        g2 = DirectedGraph(
            [relabel[n] for n in nodes], [(relabel[a], relabel[b]) for a, b in edges]
        )
        pr1, pr2 = pagerank(g), pagerank(g2)
        for n in nodes:
            assert pr1.values[n] == pytest.approx(pr2.values[relabel[n]], abs=1e-12)

    def test_empty_graph_undefined(self):
        with pytest.raises(UndefinedMetricError):
            pagerank(DirectedGraph())


class TestClustering:
    def test_triangle(self):
        g = DirectedGraph((), [("a", "b"), ("b", "c"), ("c", "a")])
        vector, average = clustering_coefficients(g)
        assert set(vector.values.values()) == {1.0}
        assert average == 1.0

    def test_path_all_zero(self):
        g = DirectedGraph((), [("a", "b"), ("b", "c")])
        vector, average = clustering_coefficients(g)
        assert set(vector.values.values()) == {0.0}
        assert average == 0.0

    def test_triangle_with_pendant(self):
        g = DirectedGraph((), [("a", "b"), ("b", "c"), ("c", "a"), ("c", "d")])
        vector, average = clustering_coefficients(g)
        assert vector.values["a"] == 1.0
        assert vector.values["b"] == 1.0
        assert vector.values["c"] == pytest.approx(1 / 3)
        assert vector.values["d"] == 0.0
        assert average == pytest.approx((1 + 1 + 1 / 3 + 0) / 4)

    def test_matches_brute_force(self):
        rng = random.Random(53)
        for _ in range(40):
            nodes, edges = random_directed_graph(rng)
            g = DirectedGraph(nodes, edges)
            vector, _ = clustering_coefficients(g)
            assert vector.values == brute_clustering(nodes, edges)


class TestTopK:
    def test_highest_first(self):
        from hashnet.metrics import MetricVector

        v = MetricVector("in_degree", {"a": 3.0, "b": 1.0, "c": 2.0})
        assert top_k_nodes(v, 2) == [("a", 3.0), ("c", 2.0)]

    def test_ties_broken_by_ascending_id(self):
        from hashnet.metrics import MetricVector

        v = MetricVector("in_degree", {"b": 1.0, "a": 1.0, "c": 1.0})
        assert top_k_nodes(v, 2) == [("a", 1.0), ("b", 1.0)]

    def test_k_larger_than_vector(self):
        from hashnet.metrics import MetricVector

        v = MetricVector("in_degree", {"a": 2.0, "b": 1.0})
        assert top_k_nodes(v, 10) == [("a", 2.0), ("b", 1.0)]

    def test_k_below_one_rejected(self):
        from hashnet.metrics import MetricVector

        with pytest.raises(ValueError):
            top_k_nodes(MetricVector("in_degree", {"a": 1.0}), 0)


class TestMetricDistribution:
    def vector(self, values):
        from hashnet.metrics import MetricVector

        return MetricVector("betweenness", {f"n{i}": v for i, v in enumerate(values)})

    def test_constant_vector(self):
        histogram, ccdf = metric_distribution(self.vector([5.0] * 3), 4)
        assert [count for _, count in histogram] == [3, 0, 0, 0]
        assert ccdf == [(5.0, 1.0)]

    def test_two_bins(self):
        histogram, _ = metric_distribution(self.vector([1.0, 2.0, 3.0, 4.0]), 2)
        assert [count for _, count in histogram] == [2, 2]

    def test_ccdf_point(self):
        _, ccdf = metric_distribution(self.vector([0.0, 0.0, 0.0, 9.0]), 2)
        assert ccdf[0] == (9.0, 0.25)
        assert ccdf[-1] == (0.0, 1.0)

    def test_empty_vector_undefined(self):
        with pytest.raises(UndefinedMetricError):
            metric_distribution(self.vector([]), 2)

    def test_bad_bin_count(self):
        with pytest.raises(ValueError):
            metric_distribution(self.vector([1.0]), 0)


class TestNetworkSummary:
    def test_directed_cycle_composition(self):
        summary = network_summary(cycle(3), geodesic_mode="directed")
        assert summary.node_count == 3
        assert summary.edge_count == 3
        assert summary.density == pytest.approx(0.5)
        assert summary.component_count == 1
        assert summary.avg_geodesic_distance == pytest.approx(1.5)
        assert summary.diameter == 2

    def test_empty_graph_fields_undefined(self):
        summary = network_summary(DirectedGraph())
        assert summary.node_count == 0
        assert summary.density is None
        assert summary.avg_geodesic_distance is None
        assert summary.diameter is None
        assert summary.avg_betweenness is None
