import math

import numpy as np
import pytest

from models.params import RdeParams
from models.ranking import RankingMethod, VertexOrdering
from models.solution import SeedSet
from services.ic_diffusion import edv
from services.rand_rde import (
    RandRDE,
    initial_pop,
    pool_size,
    rand_rde,
    rde_crossover,
    rde_mutation,
    rde_selection,
    rrd_pool,
    up_bound,
)
from services.vertex_ranking import sortv_degree, sortv_mdd
from utils.validators import ParameterError


def identity_ordering(n: int) -> VertexOrdering:
    return VertexOrdering(order=tuple(range(n)), method=RankingMethod.DEGREE)


class TestUpBound:
    def test_reference_value(self):
        assert up_bound(10, 1000, 0.5) == pytest.approx(81.07, abs=0.01)

    def test_always_above_k(self):
        for p in (0.01, 0.3, 0.99):
            assert up_bound(3, 20, p) > 3

    def test_increasing_in_p_for_small_k(self):
        values = [up_bound(10, 1000, p) for p in np.linspace(0.01, 0.99, 200)]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_matches_vectorised_formula(self):
        rng = np.random.default_rng(2024)
        n = rng.integers(2, 100000, size=1000)
        k = np.array([rng.integers(1, size) for size in n])
        p = rng.uniform(1e-6, 1 - 1e-6, size=1000)
        expected = k + n * np.power(k / (n - k), 1.0 - p) * np.sin(np.pi * p / 2.0)
        actual = [up_bound(int(a), int(b), float(c)) for a, b, c in zip(k, n, p)]
        assert actual == pytest.approx(expected.tolist(), rel=1e-12)
        assert all(value > size for value, size in zip(actual, k))

    @pytest.mark.parametrize("k, n", [(0, 10), (10, 10), (11, 10)])
    def test_rejects_k_outside_range(self, k, n):
        with pytest.raises(ParameterError):
            up_bound(k, n, 0.5)

    @pytest.mark.parametrize("p", [0.0, 1.0])
    def test_rejects_closed_endpoints(self, p):
        with pytest.raises(ParameterError):
            up_bound(2, 10, p)


class TestPool:
    def test_floor_of_reference_value(self):
        rng = np.random.default_rng(0)
        assert rrd_pool(identity_ordering(1000), 10, 1000, (0.5, 0.5), rng) == 81

    def test_clamped_to_n(self):
        assert pool_size(5, 10, 0.9) == 10

    def test_k_one_below_n_takes_everything(self):
        assert pool_size(9, 10, 0.1) == 10

    def test_at_least_k_plus_one(self):
        assert pool_size(1, 1000, 0.01) >= 2

    def test_k_equal_n(self):
        assert pool_size(4, 4, 0.3) == 4


class TestInitialPopulation:
    def test_no_diversification_copies_top_k(self, karate):
        svet = sortv_degree(karate)
        params = RdeParams(k=4, pop=6, div_factor=0.0)
        population = initial_pop(svet, params, np.random.default_rng(1))
        assert len(population) == 6
        assert all(x.members == svet.top(4) for x in population)

    def test_nothing_outside_whole_set(self):
        svet = identity_ordering(3)
        params = RdeParams(k=3, pop=5, div_factor=1.0)
        population = initial_pop(svet, params, np.random.default_rng(2))
        assert all(x.members == (0, 1, 2) for x in population)

    def test_replacements_uniform_outside_current_set(self):
        svet = identity_ordering(4)
        params = RdeParams(k=2, pop=4000, div_factor=1.0, p_range=(0.5, 0.5))
        population = initial_pop(svet, params, np.random.default_rng(3))
        first = [x.members[0] for x in population]
        second = [x.members[1] for x in population]
        assert set(first) == {2, 3}
        share = first.count(2) / len(first)
        assert abs(share - 0.5) < 4 * math.sqrt(0.25 / len(first))
        # slot 1 chooses between vertex 0 and whichever of 2/3 slot 0 left
        for x, y in zip(first, second):
            assert y in ({0, 3} if x == 2 else {0, 2})
        share = second.count(0) / len(second)
        assert abs(share - 0.5) < 4 * math.sqrt(0.25 / len(second))

    def test_every_individual_valid(self, karate):
        svet = sortv_mdd(karate)
        population = initial_pop(svet, RdeParams(k=5, pop=50), np.random.default_rng(4))
        for x in population:
            assert len(set(x.members)) == 5
            assert all(0 <= v < karate.n for v in x.members)

    def test_k_larger_than_n(self, path3):
        with pytest.raises(ParameterError):
            initial_pop(sortv_degree(path3), RdeParams(k=4), np.random.default_rng(0))


class TestMutation:
    def test_zero_rate_is_identity(self, karate):
        svet = sortv_mdd(karate)
        params = RdeParams(k=5, pop=20, mp=0.0)
        population = initial_pop(svet, params, np.random.default_rng(5))
        assert rde_mutation(population, svet, params, np.random.default_rng(6)) == population

    def test_changed_slot_fraction_tracks_rate(self, karate):
        svet = sortv_mdd(karate)
        params = RdeParams(k=5, pop=2000, div_factor=0.0, mp=0.1)
        population = initial_pop(svet, params, np.random.default_rng(7))
        mutated = rde_mutation(population, svet, params, np.random.default_rng(8))
        slots = params.pop * params.k
        changed = sum(a != b for x, y in zip(population, mutated) for a, b in zip(x.members, y.members))
        assert abs(changed / slots - 0.1) < 4 * math.sqrt(0.09 / slots)


class TestCrossover:
    def test_identical_parents(self, karate):
        svet = sortv_mdd(karate)
        params = RdeParams(k=3, pop=2, cp=0.5)
        population = (SeedSet((0, 1, 2)), SeedSet((5, 6, 7)))
        assert rde_crossover(population, population, svet, params, np.random.default_rng(0)) == population

    def test_certain_crossover_takes_mutant(self, karate):
        svet = sortv_mdd(karate)
        params = RdeParams(k=3, pop=1, cp=1.0)
        crossed = rde_crossover((SeedSet((0, 1, 2)),), (SeedSet((3, 4, 5)),), svet, params,
                                np.random.default_rng(0))
        assert crossed[0].members == (3, 4, 5)

    def test_swapped_slots(self):
        svet = identity_ordering(4)
        params = RdeParams(k=2, pop=1, cp=1.0)
        crossed = rde_crossover((SeedSet((0, 1)),), (SeedSet((1, 0)),), svet, params, np.random.default_rng(0))
        assert crossed[0].members == (1, 0)

    def test_never_crossing_keeps_parent(self):
        svet = identity_ordering(4)
        params = RdeParams(k=2, pop=1, cp=0.0)
        crossed = rde_crossover((SeedSet((0, 1)),), (SeedSet((1, 0)),), svet, params, np.random.default_rng(0))
        assert crossed[0].members == (0, 1)

    def test_offspring_always_valid(self, karate):
        svet = sortv_mdd(karate)
        params = RdeParams(k=6, pop=200, div_factor=1.0, cp=0.5)
        rng = np.random.default_rng(9)
        parents = initial_pop(svet, params, rng)
        mutants = initial_pop(svet, params, rng)
        for child in rde_crossover(parents, mutants, svet, params, rng):
            assert len(set(child.members)) == 6

    def test_size_mismatch(self):
        svet = identity_ordering(4)
        with pytest.raises(ParameterError):
            rde_crossover((SeedSet((0,)),), (), svet, RdeParams(k=1, pop=1), np.random.default_rng(0))


class TestSelection:
    def test_identical_keeps_parent(self, star5):
        x = (SeedSet((1,)),)
        survivors, fitness = rde_selection(star5, x, x, 0.2)
        assert survivors == x
        assert fitness == [pytest.approx(1.2)]

    def test_prefers_star_center(self, star5):
        survivors, _ = rde_selection(star5, (SeedSet((1,)),), (SeedSet((0,)),), 0.2)
        assert survivors[0].members == (0,)

    def test_zero_probability_ties_keep_parent(self, star5):
        survivors, _ = rde_selection(star5, (SeedSet((1,)),), (SeedSet((0,)),), 0.0)
        assert survivors[0].members == (1,)


class TestRandRde:
    def test_star_converges_to_center(self, star5):
        params = RdeParams(k=1, pop=3, gmax=200, activation_probability=0.1)
        csset = rand_rde(star5, sortv_degree(star5), params, np.random.default_rng(11))
        assert csset.vertices[0] == 0

    def test_frozen_search_returns_top_k(self, karate):
        svet = sortv_mdd(karate)
        params = RdeParams(k=4, pop=1, gmax=5, div_factor=0.0, mp=0.0, cp=0.3)
        csset = rand_rde(karate, svet, params, np.random.default_rng(12))
        assert set(csset.vertices) == set(svet.top(4))

    def test_candidate_set_bounds_and_order(self, karate):
        params = RdeParams(k=4, pop=10, gmax=20, activation_probability=0.05)
        csset = rand_rde(karate, sortv_mdd(karate), params, np.random.default_rng(13))
        assert 4 <= len(csset) <= 40
        assert len(set(csset.vertices)) == len(csset)
        pairs = list(zip(csset.counts, csset.vertices))
        assert pairs == sorted(pairs, key=lambda item: (-item[0], item[1]))

    def test_best_fitness_never_drops(self, karate):
        search = RandRDE(karate, sortv_mdd(karate), RdeParams(k=3, pop=8, gmax=25, activation_probability=0.05),
                         np.random.default_rng(14))
        search.run()
        best = [b for b, _ in search.history]
        assert len(best) == 25
        assert all(b2 >= b1 for b1, b2 in zip(best, best[1:]))
        assert best[-1] == pytest.approx(max(edv(karate, x.members, 0.05) for x in search.population))

    def test_same_seed_same_trace(self, karate):
        svet = sortv_mdd(karate)
        params = RdeParams(k=3, pop=6, gmax=15, activation_probability=0.05)
        first = RandRDE(karate, svet, params, np.random.default_rng(15))
        second = RandRDE(karate, svet, params, np.random.default_rng(15))
        assert first.run() == second.run()
        assert first.history == second.history
