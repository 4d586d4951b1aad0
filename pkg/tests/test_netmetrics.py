from __future__ import annotations

import math
import random

import pytest

from tweetflow.errors import DataError
from tweetflow.netmetrics import (
    betweenness_centrality,
    closeness_centrality,
    degree_centrality,
    eigenvector_centrality,
    top_k,
)
from tweetflow.wordgraph import WordGraph

from oracles import (
    brute_betweenness,
    dense_dominant_eigenvector,
    is_connected,
    random_graph,
)


class TestDegreeCentrality:
    def test_path(self, path3):
        values = degree_centrality(path3).values
        assert values == {"a": 0.5, "b": 1.0, "c": 0.5}

    def test_star(self, star4):
        values = degree_centrality(star4).values
        assert values["hub"] == 1.0
        assert all(values[f"l{i}"] == 0.25 for i in range(1, 5))

    def test_matches_neighbor_recount(self):
        adj = random_graph(8, 0.4, seed=3)
        values = degree_centrality(adj).values
        for node, neighbors in adj.items():
            assert values[node] == pytest.approx(len(neighbors) / 7)

    def test_single_node_rejected(self):
        with pytest.raises(DataError):
            degree_centrality({"a": []})

    def test_accepts_word_graph(self):
        graph = WordGraph({"a": 1, "b": 1}, {("a", "b"): 1})
        assert degree_centrality(graph).values == {"a": 1.0, "b": 1.0}


class TestClosenessCentrality:
    def test_triangle_all_one(self, triangle):
        assert closeness_centrality(triangle).values == {"a": 1.0, "b": 1.0, "c": 1.0}

    def test_path(self, path3):
        values = closeness_centrality(path3).values
        assert values["b"] == pytest.approx(1.0)
        assert values["a"] == pytest.approx(2 / 3)

    def test_two_disjoint_edges_reach_scaling(self):
        adj = {"a": ["b"], "b": ["a"], "c": ["d"], "d": ["c"]}
        values = closeness_centrality(adj).values
        assert all(v == pytest.approx(1 / 3) for v in values.values())

    def test_isolated_node_scores_zero(self):
        adj = {"a": ["b"], "b": ["a"], "z": []}
        assert closeness_centrality(adj).values["z"] == 0.0

    def test_within_unit_interval(self):
        for seed in range(10):
            adj = random_graph(9, 0.3, seed=seed)
            for value in closeness_centrality(adj).values.values():
                assert 0.0 <= value <= 1.0


class TestBetweennessCentrality:
    def test_path_bridge(self, path3):
        values = betweenness_centrality(path3).values
        assert values == {"a": 0.0, "b": 1.0, "c": 0.0}

    def test_star_center_all_pairs(self, star4):
        values = betweenness_centrality(star4).values
        assert values["hub"] == pytest.approx(6.0)  # C(4,2) leaf pairs
        assert all(values[f"l{i}"] == 0.0 for i in range(1, 5))

    def test_normalized_path(self, path3):
        values = betweenness_centrality(path3, normalized=True).values
        assert values["b"] == pytest.approx(1.0)

    def test_degree_one_nodes_score_zero(self):
        for seed in range(5):
            adj = random_graph(8, 0.35, seed=seed)
            values = betweenness_centrality(adj).values
            for node, neighbors in adj.items():
                if len(neighbors) == 1:
                    assert values[node] == pytest.approx(0.0)

    def test_matches_path_enumeration_oracle(self):
        rng = random.Random(0)
        for trial in range(30):
            n = rng.randrange(2, 11)
            adj = random_graph(n, rng.choice([0.2, 0.4, 0.6, 0.8]), seed=trial)
            ours = betweenness_centrality(adj).values
            oracle = brute_betweenness(adj)
            for node in adj:
                assert ours[node] == pytest.approx(float(oracle[node]), abs=1e-9)

    def test_vertex_transitive_constant(self, k4):
        values = betweenness_centrality(k4).values
        assert len(set(values.values())) == 1


class TestEigenvectorCentrality:
    def test_complete_k4_uniform(self, k4):
        values = eigenvector_centrality(k4).values
        assert all(v == pytest.approx(0.5, abs=1e-6) for v in values.values())

    def test_star_analytic(self, star4):
        values = eigenvector_centrality(star4).values
        assert values["hub"] == pytest.approx(1 / math.sqrt(2), abs=1e-6)
        assert values["l1"] == pytest.approx(1 / (2 * math.sqrt(2)), abs=1e-6)

    def test_l2_norm_one(self):
        for seed in range(5):
            adj = random_graph(8, 0.4, seed=seed)
            if not any(adj.values()):
                continue
            values = eigenvector_centrality(adj).values
            norm = math.sqrt(sum(v * v for v in values.values()))
            assert norm == pytest.approx(1.0, abs=1e-9)

    def test_all_nonnegative(self):
        for seed in range(5):
            adj = random_graph(7, 0.5, seed=seed + 100)
            if not any(adj.values()):
                continue
            assert all(v >= 0 for v in eigenvector_centrality(adj).values.values())

    def test_matches_dense_oracle_on_connected_graphs(self):
        rng = random.Random(7)
        found = 0
        seed = 0
        while found < 25:
            seed += 1
            n = rng.randrange(3, 11)
            adj = random_graph(n, 0.5, seed=seed)
            if not is_connected(adj):
                continue
            found += 1
            ours = eigenvector_centrality(adj, max_iters=20000).values
            oracle = dense_dominant_eigenvector(adj)
            for node in adj:
                assert ours[node] == pytest.approx(oracle[node], abs=1e-6)

    def test_bipartite_oscillation_handled(self):
        # even cycle: bipartite, plain power iteration oscillates
        cycle = {
            "a": ["b", "d"], "b": ["a", "c"], "c": ["b", "d"], "d": ["c", "a"],
        }
        values = eigenvector_centrality(cycle).values
        assert all(v == pytest.approx(0.5, abs=1e-6) for v in values.values())

    def test_edgeless_rejected(self):
        with pytest.raises(DataError):
            eigenvector_centrality({"a": [], "b": []})


class TestRelabelingInvariance:
    def test_all_measures_invariant_under_relabeling(self):
        rng = random.Random(5)
        for trial in range(10):
            n = rng.randrange(3, 9)
            adj = random_graph(n, 0.5, seed=trial + 50)
            nodes = sorted(adj)
            permuted = nodes[:]
            rng.shuffle(permuted)
            mapping = dict(zip(nodes, permuted))
            relabeled = {
                mapping[v]: sorted(mapping[w] for w in neigh)
                for v, neigh in adj.items()
            }
            for measure in (degree_centrality, closeness_centrality, betweenness_centrality):
                original = measure(adj).values
                shuffled = measure(relabeled).values
                for node in nodes:
                    assert original[node] == pytest.approx(shuffled[mapping[node]], abs=1e-9)
            if any(adj.values()):
                original = eigenvector_centrality(adj, max_iters=20000).values
                shuffled = eigenvector_centrality(relabeled, max_iters=20000).values
                for node in nodes:
                    assert original[node] == pytest.approx(shuffled[mapping[node]], abs=1e-6)

    def test_cycle_constant_on_all_measures(self):
        cycle5 = {
            f"n{i}": [f"n{(i - 1) % 5}", f"n{(i + 1) % 5}"] for i in range(5)
        }
        for measure in (
            degree_centrality,
            closeness_centrality,
            betweenness_centrality,
            eigenvector_centrality,
        ):
            values = measure(cycle5).values
            assert max(values.values()) - min(values.values()) < 1e-6


class TestTopK:
    def test_descending_with_lexicographic_ties(self):
        scores = degree_centrality(
            {"b": ["c"], "a": ["c"], "c": ["a", "b"]}
        )
        ranked = top_k(scores, 3)
        assert [node for node, _ in ranked] == ["c", "a", "b"]

    def test_k_larger_than_n(self, path3):
        ranked = top_k(degree_centrality(path3), 10)
        assert len(ranked) == 3

    def test_matches_oracle_sort(self):
        adj = random_graph(9, 0.4, seed=11)
        scores = betweenness_centrality(adj)
        ranked = top_k(scores, 5)
        expected = sorted(scores.values.items(), key=lambda kv: (-kv[1], kv[0]))[:5]
        assert ranked == expected


class TestNonConvergence:
    def test_exhausted_budget_raises(self, star4):
        from tweetflow.netmetrics import NonConvergenceError

        with pytest.raises(NonConvergenceError):
            eigenvector_centrality(star4, max_iters=0)
