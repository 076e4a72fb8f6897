"""
Independent Cascade diffusion: Monte-Carlo spread estimation, exact
live-edge enumeration for tiny graphs and the one-hop EDV surrogate.
"""

import logging
import math
from collections import Counter
from itertools import product
from multiprocessing import Pool
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from models.graph import Graph
from models.params import DiffusionParams
from models.reports import SpreadEstimate
from utils.random_streams import check_master_seed, run_generator
from utils.validators import ParameterError, check_probability, check_seed_set

logger = logging.getLogger(__name__)

# Largest edge count exact_spread will enumerate (2^m worlds)
EXACT_MAX_EDGES = 20


def simulate_once(graph: Graph, seeds: Iterable[int], p: float, rng: np.random.Generator) -> int:
    """
    One cascade; returns the number of active vertices including seeds.

    Newly active vertices are processed in ascending id order and draw one
    uniform per out-neighbour.
    """
    active = bytearray(graph.n)
    frontier = sorted(set(seeds))
    for s in frontier:
        active[s] = 1
    count = len(frontier)
    if p <= 0.0:
        return count

    out_adj = graph.out_adj
    while frontier:
        fresh: List[int] = []
        for u in frontier:
            adj = out_adj[u]
            if not adj:
                continue
            draws = rng.random(len(adj))
            for v, x in zip(adj, draws):
                if x < p and not active[v]:
                    active[v] = 1
                    fresh.append(v)
        count += len(fresh)
        fresh.sort()
        frontier = fresh
    return count


def _simulate_range(task: Tuple[Graph, Tuple[int, ...], float, int, int, int]) -> List[int]:
    graph, seeds, p, master_seed, start, stop = task
    return [simulate_once(graph, seeds, p, run_generator(master_seed, i)) for i in range(start, stop)]


def _chunk_bounds(runs: int, workers: int) -> List[Tuple[int, int]]:
    size, extra = divmod(runs, workers)
    bounds = []
    start = 0
    for w in range(workers):
        stop = start + size + (1 if w < extra else 0)
        if stop > start:
            bounds.append((start, stop))
        start = stop
    return bounds


def estimate_spread(graph: Graph, seeds: Iterable[int], params: DiffusionParams,
                    workers: int = 1) -> SpreadEstimate:
    """
    Mean active count over `params.runs` cascades.

    Run i uses the stream keyed by (master_seed, i), and counts are reduced
    in run order, so the estimate does not depend on `workers`.
    """
    members = check_seed_set(seeds, graph.n)
    master_seed = check_master_seed(params.master_seed)
    runs = params.runs
    workers = max(1, min(int(workers), runs))

    tasks = [(graph, members, params.p, master_seed, a, b) for a, b in _chunk_bounds(runs, workers)]
    if workers == 1:
        chunks = [_simulate_range(t) for t in tasks]
    else:
        with Pool(processes=workers) as pool:
            chunks = pool.map(_simulate_range, tasks)

    counts = np.fromiter((c for chunk in chunks for c in chunk), dtype=np.float64, count=runs)
    mean = math.fsum(counts) / runs
    std_error = float(np.std(counts, ddof=1) / math.sqrt(runs)) if runs > 1 else 0.0
    return SpreadEstimate(mean=mean, std_error=std_error, runs=runs)


def _reachable_count(n: int, live_adj: Sequence[List[int]], seeds: Sequence[int]) -> int:
    seen = bytearray(n)
    stack = list(seeds)
    for s in stack:
        seen[s] = 1
    count = len(stack)
    while stack:
        u = stack.pop()
        for v in live_adj[u]:
            if not seen[v]:
                seen[v] = 1
                count += 1
                stack.append(v)
    return count


def exact_spread(graph: Graph, seeds: Iterable[int], p: float) -> float:
    """
    Expected spread by enumerating every live-edge world.

    Undirected edges carry a single coin. Refused above EXACT_MAX_EDGES edges.
    """
    members = check_seed_set(seeds, graph.n)
    p = check_probability(p, 'p')
    if graph.m > EXACT_MAX_EDGES:
        raise ParameterError(f"exact_spread enumerates 2^m worlds; m={graph.m} exceeds {EXACT_MAX_EDGES}")

    edges = list(graph.edges())
    m = len(edges)
    if p in (0.0, 1.0):
        live = [[] for _ in range(graph.n)]
        if p == 1.0:
            for u, v in edges:
                live[u].append(v)
                if not graph.directed:
                    live[v].append(u)
        return float(_reachable_count(graph.n, live, members))

    terms = []
    for mask in product((False, True), repeat=m):
        live = [[] for _ in range(graph.n)]
        on = 0
        for (u, v), keep in zip(edges, mask):
            if keep:
                on += 1
                live[u].append(v)
                if not graph.directed:
                    live[v].append(u)
        weight = (p ** on) * ((1.0 - p) ** (m - on))
        terms.append(weight * _reachable_count(graph.n, live, members))
    return math.fsum(terms)


def edv(graph: Graph, seeds: Iterable[int], p: float) -> float:
    """
    Expected diffusion value: k + sum over out-neighbours v of S outside S
    of 1 - (1 - p)^tau(v), tau(v) = seeds pointing at v.
    """
    members = set(seeds)
    tau = Counter(v for s in members for v in graph.out_adj[s] if v not in members)
    miss = 1.0 - p
    return len(members) + math.fsum(1.0 - miss ** t for t in tau.values())
