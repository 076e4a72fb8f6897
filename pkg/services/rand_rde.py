"""
RandRDE: evolutionary search over seed sets with random range division.

Every replacement vertex is drawn from a random prefix ("pool") of the
vertex ordering whose length follows the up-bound formula. Fitness is the
EDV surrogate.
"""

import logging
import math
from typing import List, Sequence, Tuple

import numpy as np

from models.params import RdeParams
from models.ranking import VertexOrdering
from models.solution import CandidateSet, Population, SeedSet, check_population
from services.ic_diffusion import edv
from utils.validators import ParameterError, check_open_probability

logger = logging.getLogger(__name__)


def up_bound(k: int, n: int, p: float) -> float:
    """ub = k + n * (k / (n - k))^(1 - p) * sin(pi * p / 2)"""
    if k < 1 or k >= n:
        raise ParameterError(f"up_bound needs 1 <= k < n, got k={k}, n={n}")
    p = check_open_probability(p, 'p')
    return k + n * (k / (n - k)) ** (1.0 - p) * math.sin(math.pi * p / 2.0)


def pool_size(k: int, n: int, p: float) -> int:
    """floor(up_bound) clamped to [k + 1, n]; the whole ordering when k >= n"""
    if k >= n:
        return n
    return max(k + 1, min(n, math.floor(up_bound(k, n, p))))


def rrd_pool(svet: VertexOrdering, k: int, n: int, p_range: Tuple[float, float],
             rng: np.random.Generator) -> int:
    """Draw p uniformly from p_range and return the pool length over `svet`"""
    lo, hi = p_range
    p = float(rng.uniform(lo, hi))
    return pool_size(k, n, p)


def _pick_outside(prefix: Sequence[int], taken: set, rng: np.random.Generator):
    candidates = [v for v in prefix if v not in taken]
    if not candidates:
        return None
    return candidates[int(rng.integers(len(candidates)))]


def _diversify(members: Sequence[int], prefix: Sequence[int], rate: float,
               rng: np.random.Generator) -> SeedSet:
    """Replace each slot with probability `rate` by a pool vertex not yet in the set"""
    slots = list(members)
    taken = set(slots)
    for j in range(len(slots)):
        if rng.random() >= rate:
            continue
        v = _pick_outside(prefix, taken, rng)
        if v is None:
            continue
        taken.discard(slots[j])
        taken.add(v)
        slots[j] = v
    return SeedSet(tuple(slots))


def _check_sizes(svet: VertexOrdering, k: int) -> int:
    n = len(svet.order)
    if k > n:
        raise ParameterError(f"seed set size k={k} exceeds the number of vertices n={n}")
    return n


# ============================================================================
# OPERATORS
# ============================================================================

def initial_pop(svet: VertexOrdering, params: RdeParams, rng: np.random.Generator) -> Population:
    """`pop` copies of the top-k, each slot diversified with probability div_factor"""
    k = params.k
    n = _check_sizes(svet, k)
    top = svet.top(k)
    population = []
    for _ in range(params.pop):
        ub = rrd_pool(svet, k, n, params.p_range, rng)
        population.append(_diversify(top, svet.order[:ub], params.div_factor, rng))
    return tuple(population)


def rde_mutation(population: Population, svet: VertexOrdering, params: RdeParams,
                 rng: np.random.Generator) -> Population:
    k = params.k
    n = _check_sizes(svet, k)
    mutated = []
    for individual in population:
        ub = rrd_pool(svet, k, n, params.p_range, rng)
        mutated.append(_diversify(individual.members, svet.order[:ub], params.mp, rng))
    return tuple(mutated)


def _cross_individual(x: SeedSet, xm: SeedSet, svet: VertexOrdering, params: RdeParams,
                      n: int, rng: np.random.Generator) -> SeedSet:
    k = params.k
    placed: List[int] = []
    taken = set()
    for j in range(k):
        # stream order per slot: pool draw, then ran
        ub = rrd_pool(svet, k, n, params.p_range, rng)
        ran = rng.random()
        first, second = (xm.members[j], x.members[j]) if ran < params.cp else (x.members[j], xm.members[j])
        if first not in taken:
            v = first
        elif second not in taken:
            v = second
        else:
            v = _pick_outside(svet.order[:ub], taken, rng)
            if v is None:
                v = _pick_outside(svet.order, taken, rng)
        placed.append(v)
        taken.add(v)
    return SeedSet(tuple(placed))


def rde_crossover(population: Population, mutated: Population, svet: VertexOrdering,
                  params: RdeParams, rng: np.random.Generator) -> Population:
    """
    Slot-wise crossover. With probability cp the mutant's vertex is
    preferred, otherwise the parent's; the other is the fallback. When both
    are already placed, a vertex is drawn from a fresh pool (or the whole
    ordering if that pool is used up).
    """
    if len(population) != len(mutated):
        raise ParameterError("crossover needs populations of equal size")
    n = _check_sizes(svet, params.k)
    return tuple(
        _cross_individual(x, xm, svet, params, n, rng) for x, xm in zip(population, mutated)
    )


def rde_selection(graph, population: Population, offspring: Population,
                  p: float) -> Tuple[Population, List[float]]:
    """Pairwise EDV tournament; ties keep the parent. Returns survivors and their EDVs."""
    survivors = []
    fitness = []
    for x, xc in zip(population, offspring):
        fx = edv(graph, x.members, p)
        fc = edv(graph, xc.members, p)
        if fc > fx:
            survivors.append(xc)
            fitness.append(fc)
        else:
            survivors.append(x)
            fitness.append(fx)
    return tuple(survivors), fitness


# ============================================================================
# SEARCH DRIVER
# ============================================================================

class RandRDE:
    """
    Evolution driver. `history` holds (best EDV, mean EDV) per generation,
    `population` the final individuals after `run()`.
    """

    def __init__(self, graph, svet: VertexOrdering, params: RdeParams, rng: np.random.Generator):
        self.graph = graph
        self.svet = svet
        self.params = params
        self.rng = rng
        self.population: Population = ()
        self.history: List[Tuple[float, float]] = []

    def _checked(self, population: Population, stage: str) -> Population:
        check_population(population, self.params.k, self.graph.n, stage)
        if len(population) != self.params.pop:
            raise ParameterError(f"{stage}: population has {len(population)} individuals, expected {self.params.pop}")
        return population

    def run(self) -> CandidateSet:
        params = self.params
        p = params.activation_probability
        population = self._checked(initial_pop(self.svet, params, self.rng), 'initial_pop')

        for generation in range(params.gmax):
            mutated = self._checked(rde_mutation(population, self.svet, params, self.rng), 'mutation')
            crossed = self._checked(rde_crossover(population, mutated, self.svet, params, self.rng), 'crossover')
            population, fitness = rde_selection(self.graph, population, crossed, p)
            self._checked(population, 'selection')
            self.history.append((max(fitness), math.fsum(fitness) / len(fitness)))

        self.population = population
        csset = CandidateSet.from_population(population)
        if self.history:
            logger.debug(f"RandRDE: {params.gmax} generations, best EDV {self.history[-1][0]:.4f}, |CSSet|={len(csset)}")
        return csset


def rand_rde(graph, svet: VertexOrdering, params: RdeParams, rng: np.random.Generator) -> CandidateSet:
    return RandRDE(graph, svet, params, rng).run()
