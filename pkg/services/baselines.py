"""
Reference seed-selection algorithms: naive greedy, CELF lazy greedy,
top-k degree and uniform random seeds.
"""

import heapq
import logging
from typing import Callable, Sequence, Tuple

import numpy as np

from models.graph import Graph
from models.params import DiffusionParams
from models.reports import GreedyTrace
from models.solution import SeedSet
from services.ic_diffusion import estimate_spread, exact_spread
from services.vertex_ranking import sortv_degree
from utils.validators import ParameterError, check_positive_int

logger = logging.getLogger(__name__)

SpreadOracle = Callable[[Sequence[int]], float]

# Marginal gains are compared at this resolution so that mathematically equal
# gains computed along different paths still tie.
GAIN_DECIMALS = 9


class CountingOracle:
    """Wraps a spread function and counts its calls"""

    def __init__(self, func: SpreadOracle):
        self.func = func
        self.calls = 0

    def __call__(self, seeds: Sequence[int]) -> float:
        self.calls += 1
        return self.func(seeds)


def exact_oracle(graph: Graph, p: float) -> SpreadOracle:
    return lambda seeds: exact_spread(graph, seeds, p)


def mc_oracle(graph: Graph, params: DiffusionParams, workers: int = 1) -> SpreadOracle:
    """Monte-Carlo spread with common random numbers across evaluations"""
    return lambda seeds: estimate_spread(graph, seeds, params, workers=workers).mean


def _check_k(graph: Graph, k: int) -> int:
    check_positive_int(k, 'k')
    if k > graph.n:
        raise ParameterError(f"seed set size k={k} exceeds the number of vertices n={graph.n}")
    return k


def _key(gain: float) -> float:
    return round(gain, GAIN_DECIMALS)


def greedy_im(graph: Graph, k: int, oracle: SpreadOracle) -> Tuple[SeedSet, GreedyTrace]:
    """k rounds of argmax marginal gain over every vertex outside S; ties by id"""
    _check_k(graph, k)
    counter = CountingOracle(oracle)
    trace = GreedyTrace()
    seeds = []
    chosen = set()
    spread = 0.0
    for _ in range(k):
        best_v, best_value, best_gain = None, None, None
        for v in range(graph.n):
            if v in chosen:
                continue
            value = counter(seeds + [v])
            gain = value - spread
            if best_gain is None or _key(gain) > _key(best_gain):
                best_v, best_value, best_gain = v, value, gain
        seeds.append(best_v)
        chosen.add(best_v)
        spread = best_value
        trace.picks.append((best_v, best_gain))
    trace.evaluations = counter.calls
    return SeedSet(tuple(seeds)), trace


def celf_im(graph: Graph, k: int, oracle: SpreadOracle) -> Tuple[SeedSet, GreedyTrace]:
    """
    Lazy-forward greedy. Heap entries carry the round their gain was
    computed in; a popped entry from an earlier round is re-evaluated and
    pushed back, a fresh one is selected.
    """
    _check_k(graph, k)
    counter = CountingOracle(oracle)
    trace = GreedyTrace()

    heap = []
    for v in range(graph.n):
        value = counter([v])
        heap.append((-_key(value), v, 0, value, value))
    heapq.heapify(heap)

    seeds = []
    spread = 0.0
    while len(seeds) < k:
        _, v, stamp, gain, value = heapq.heappop(heap)
        if stamp == len(seeds):
            seeds.append(v)
            spread = value
            trace.picks.append((v, gain))
            continue
        value = counter(seeds + [v])
        gain = value - spread
        heapq.heappush(heap, (-_key(gain), v, len(seeds), gain, value))

    trace.evaluations = counter.calls
    logger.debug(f"CELF: {trace.evaluations} oracle calls for k={k} on n={graph.n}")
    return SeedSet(tuple(seeds)), trace


def degree_topk(graph: Graph, k: int) -> SeedSet:
    _check_k(graph, k)
    return SeedSet(sortv_degree(graph).top(k))


def random_seed_set(graph: Graph, k: int, rng: np.random.Generator) -> SeedSet:
    """k distinct vertices drawn uniformly"""
    _check_k(graph, k)
    picks = rng.choice(graph.n, size=k, replace=False)
    return SeedSet.of(picks)
