"""
Fast-convergence stage: max-degree peeling for a starting seed set and
adaptive simulated annealing over the candidate set.
"""

import heapq
import logging
import math
from typing import List, Optional

import numpy as np

from models.graph import DeletionOverlay, Graph
from models.params import SaaParams
from models.reports import AnnealingTrace
from models.solution import CandidateSet, SeedSet
from services.ic_diffusion import edv
from utils.validators import ParameterError, check_positive_int

logger = logging.getLogger(__name__)


def construct_ss(graph: Graph, k: int) -> SeedSet:
    """
    Pick k times the live vertex of maximum live degree (ties by id) and
    delete it with its incident edges.
    """
    check_positive_int(k, 'k')
    if k > graph.n:
        raise ParameterError(f"seed set size k={k} exceeds the number of vertices n={graph.n}")

    overlay = DeletionOverlay(graph)
    heap = [(-d, v) for v, d in enumerate(overlay.live_degree)]
    heapq.heapify(heap)
    picks: List[int] = []
    while len(picks) < k:
        key, v = heapq.heappop(heap)
        if overlay.deleted[v] or -key != overlay.live_degree[v]:
            continue
        picks.append(v)
        overlay.delete(v)
        for w in graph.union_adj[v]:
            if overlay.is_live(w):
                heapq.heappush(heap, (-overlay.live_degree[w], w))
    return SeedSet(tuple(picks))


class AdaptiveAnnealer:
    """
    Improvement-only annealing. Each level runs N swap moves (a uniform
    slot of S* against a uniform CSSet vertex outside S*), then cools by
    max(theta * ln(r + 1), floor) where r counts consecutive rejections and
    is only reset by an accepted move.
    """

    def __init__(self, graph: Graph, csset: CandidateSet, k: int, params: SaaParams,
                 p: float, rng: np.random.Generator):
        self.graph = graph
        self.csset = csset
        self.k = check_positive_int(k, 'k')
        self.params = params
        self.p = p
        self.rng = rng
        self.trace = AnnealingTrace()

    def _outside(self, current: SeedSet) -> List[int]:
        members = current.member_set
        return [v for v in self.csset.vertices if v not in members]

    def run(self, initial: Optional[SeedSet] = None) -> SeedSet:
        params = self.params
        trace = self.trace
        current = initial if initial is not None else construct_ss(self.graph, self.k)
        if current.k != self.k:
            raise ParameterError(f"initial seed set has {current.k} members, expected {self.k}")
        best = edv(self.graph, current.members, self.p)
        trace.initial_edv = best

        outside = self._outside(current)
        temperature = params.T_i
        rejections = 0
        while outside and temperature > params.T_f and trace.levels < params.max_levels:
            for _ in range(params.N):
                slot = int(self.rng.integers(self.k))
                v = outside[int(self.rng.integers(len(outside)))]
                candidate = current.swap(slot, v)
                value = edv(self.graph, candidate.members, self.p)
                trace.moves += 1
                if value > best:
                    current, best = candidate, value
                    rejections = 0
                    trace.accepted += 1
                    outside = self._outside(current)
                    if not outside:
                        break
                else:
                    rejections += 1
            temperature -= max(params.theta * math.log(rejections + 1), params.cooling_floor)
            trace.levels += 1

        if not outside:
            trace.stalled = True
            logger.warning(f"⚠️ Candidate set holds no vertex outside the current seed set; "
                           f"returning it after {trace.levels} levels")

        trace.final_temperature = temperature
        trace.final_edv = best
        logger.debug(f"AdapSAA: {trace.levels} levels, {trace.accepted}/{trace.moves} moves accepted, "
                     f"EDV {trace.initial_edv:.4f} -> {best:.4f}")
        return current


def adap_saa(graph: Graph, csset: CandidateSet, k: int, params: SaaParams, p: float,
             rng: np.random.Generator, initial: Optional[SeedSet] = None) -> SeedSet:
    return AdaptiveAnnealer(graph, csset, k, params, p, rng).run(initial)
