import numpy as np
import pytest

from models.graph import Graph
from models.params import DiffusionParams
from services.baselines import (
    CountingOracle,
    celf_im,
    degree_topk,
    exact_oracle,
    greedy_im,
    mc_oracle,
    random_seed_set,
)
from tests.helpers import random_tiny_graph
from utils.validators import ParameterError


@pytest.fixture
def star_and_edge():
    """center 0 with leaves 1..3, plus a separate edge 4-5"""
    return Graph.from_edges(6, [(0, 1), (0, 2), (0, 3), (4, 5)])


class TestGreedy:
    def test_star_picks_center(self, star5):
        seeds, trace = greedy_im(star5, 1, exact_oracle(star5, 0.3))
        assert seeds.members == (0,)
        assert trace.gains[0] == pytest.approx(1 + 5 * 0.3)

    def test_two_edges_one_endpoint_each(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        seeds, trace = greedy_im(g, 2, exact_oracle(g, 1.0))
        assert seeds.members == (0, 2)
        assert trace.gains == [2.0, 2.0]

    def test_single_seed_is_optimal(self, star_and_edge):
        oracle = exact_oracle(star_and_edge, 0.4)
        seeds, _ = greedy_im(star_and_edge, 1, oracle)
        best = max(range(star_and_edge.n), key=lambda v: (round(oracle([v]), 9), -v))
        assert seeds.members == (best,)

    def test_evaluation_count(self, path3):
        _, trace = greedy_im(path3, 2, exact_oracle(path3, 0.5))
        assert trace.evaluations == 3 + 2

    @pytest.mark.parametrize("seed", range(8))
    def test_gains_non_increasing_with_exact_oracle(self, seed):
        g, _ = random_tiny_graph(seed, m_max=10)
        _, trace = greedy_im(g, min(3, g.n), exact_oracle(g, 0.3))
        gains = trace.gains
        assert all(b <= a + 1e-9 for a, b in zip(gains, gains[1:]))
        assert all(gain >= -1e-12 for gain in gains)

    def test_k_larger_than_n(self, path3):
        with pytest.raises(ParameterError):
            greedy_im(path3, 4, exact_oracle(path3, 0.5))


class TestCelf:
    @pytest.mark.parametrize("seed", range(25))
    def test_matches_greedy_on_tiny_graphs(self, seed):
        g, _ = random_tiny_graph(seed, m_max=10, directed=seed % 3 == 0)
        k = min(3, g.n)
        oracle = exact_oracle(g, 0.35)
        greedy_seeds, greedy_trace = greedy_im(g, k, oracle)
        celf_seeds, celf_trace = celf_im(g, k, oracle)
        assert celf_seeds.members == greedy_seeds.members
        assert celf_trace.gains == pytest.approx(greedy_trace.gains)
        assert celf_trace.evaluations <= greedy_trace.evaluations

    def test_single_round_scores_every_vertex(self, karate):
        calls = CountingOracle(lambda seeds: float(len(seeds)))
        _, trace = celf_im(karate, 1, calls)
        assert trace.evaluations == karate.n

    def test_laziness_skips_evaluations(self, star_and_edge):
        oracle = exact_oracle(star_and_edge, 0.5)
        greedy_seeds, greedy_trace = greedy_im(star_and_edge, 2, oracle)
        celf_seeds, celf_trace = celf_im(star_and_edge, 2, oracle)
        assert celf_seeds.members == greedy_seeds.members == (0, 4)
        assert greedy_trace.evaluations == 6 + 5
        assert celf_trace.evaluations < greedy_trace.evaluations

    def test_monte_carlo_oracle_runs(self, karate):
        oracle = mc_oracle(karate, DiffusionParams(p=0.05, runs=50, master_seed=3))
        seeds, trace = celf_im(karate, 2, oracle)
        assert len(set(seeds.members)) == 2
        assert len(trace.picks) == 2


@pytest.mark.slow
def test_celf_matches_greedy_exhaustively():
    strictly_fewer = 0
    for seed in range(100):
        g, _ = random_tiny_graph(1000 + seed, m_max=14, directed=seed % 2 == 0)
        k = min(3, g.n)
        oracle = exact_oracle(g, 0.25)
        greedy_seeds, greedy_trace = greedy_im(g, k, oracle)
        celf_seeds, celf_trace = celf_im(g, k, oracle)
        assert celf_seeds.members == greedy_seeds.members
        assert [v for v, _ in celf_trace.picks] == [v for v, _ in greedy_trace.picks]
        assert celf_trace.evaluations <= greedy_trace.evaluations
        if celf_trace.evaluations < greedy_trace.evaluations:
            strictly_fewer += 1
    assert strictly_fewer >= 1


class TestSimpleBaselines:
    def test_degree_star(self, star5):
        assert degree_topk(star5, 1).members == (0,)

    def test_degree_regular_graph_uses_lowest_ids(self):
        cycle = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        assert degree_topk(cycle, 2).members == (0, 1)

    def test_degree_path(self, path3):
        assert degree_topk(path3, 1).members == (1,)

    def test_random_seed_set(self, karate):
        seeds = random_seed_set(karate, 5, np.random.default_rng(0))
        assert len(set(seeds.members)) == 5
        assert seeds == random_seed_set(karate, 5, np.random.default_rng(0))
