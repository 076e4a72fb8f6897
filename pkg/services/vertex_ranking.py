"""
Vertex ranking: k-shell, mixed degree decomposition (MDD), gravity
centrality (GCI) and plain degree orderings.

All procedures read the union neighbourhood, so directed networks are
ranked as if undirected.
"""

import heapq
import logging
import math
from typing import List

from models.graph import DeletionOverlay, Graph, bfs_within
from models.ranking import RankingMethod, ShellIndex, VertexOrdering
from utils.config import PHEE_DEFAULTS
from utils.validators import ParameterError, check_positive_int

logger = logging.getLogger(__name__)

# Slack for comparing fractional mixed degrees against the integer threshold
MIXED_DEGREE_EPS = 1e-9


def kshell_decompose(graph: Graph) -> ShellIndex:
    """Shell numbers by bucket peeling in O(n + m)"""
    n = graph.n
    adjacency = graph.union_adj
    deg = [len(adj) for adj in adjacency]
    max_deg = max(deg) if deg else 0

    # bucket sort vertices by degree
    bin_start = [0] * (max_deg + 2)
    for d in deg:
        bin_start[d] += 1
    start = 0
    for d in range(max_deg + 1):
        count = bin_start[d]
        bin_start[d] = start
        start += count
    pos = [0] * n
    vert = [0] * n
    for v in range(n):
        pos[v] = bin_start[deg[v]]
        vert[pos[v]] = v
        bin_start[deg[v]] += 1
    for d in range(max_deg, 0, -1):
        bin_start[d] = bin_start[d - 1]
    bin_start[0] = 0

    for i in range(n):
        v = vert[i]
        for u in adjacency[v]:
            if deg[u] > deg[v]:
                du = deg[u]
                pu = pos[u]
                pw = bin_start[du]
                w = vert[pw]
                if u != w:
                    pos[u], pos[w] = pw, pu
                    vert[pu], vert[pw] = w, u
                bin_start[du] += 1
                deg[u] -= 1

    return ShellIndex(shell=tuple(deg))


def sortv_mdd(graph: Graph, lam: float = PHEE_DEFAULTS['lambda']) -> VertexOrdering:
    """
    Mixed degree decomposition.

    Peels batches of live vertices whose mixed degree
    k_m = residual + lam * exhausted is <= min_mdd, raising min_mdd by one
    whenever no vertex qualifies. Returns the reversed removal sequence;
    scores hold min_mdd at removal time.
    """
    if lam is None or math.isnan(lam) or not 0.0 <= lam <= 1.0:
        raise ParameterError(f"lambda must lie in [0, 1], got {lam}")

    n = graph.n
    overlay = DeletionOverlay(graph)
    degree = [len(adj) for adj in graph.union_adj]
    current = [float(d) for d in degree]
    heap = [(current[v], v) for v in range(n)]
    heapq.heapify(heap)

    min_mdd = min(degree)
    removed: List[int] = []
    rank = [0.0] * n

    while overlay.live_count > 0:
        batch = set()
        while heap and heap[0][0] <= min_mdd + MIXED_DEGREE_EPS:
            key, v = heapq.heappop(heap)
            if overlay.deleted[v] or key != current[v] or v in batch:
                continue
            batch.add(v)

        if not batch:
            min_mdd += 1
            continue

        ordered = sorted(batch)
        for v in ordered:
            rank[v] = float(min_mdd)
            removed.append(v)
            overlay.delete(v)

        touched = {w for v in ordered for w in graph.union_adj[v] if overlay.is_live(w)}
        for w in touched:
            residual = overlay.live_degree[w]
            mixed = residual + lam * (degree[w] - residual)
            if mixed != current[w]:
                current[w] = mixed
                heapq.heappush(heap, (mixed, w))

    order = tuple(reversed(removed))
    logger.debug(f"MDD(lambda={lam}) peeled {n} vertices up to min_mdd={min_mdd}")
    return VertexOrdering(order=order, method=RankingMethod.MDD, scores=tuple(rank))


def gravity_scores(graph: Graph, radius: int, shells: ShellIndex = None) -> List[float]:
    """G(v) = sum over u within `radius` hops of S(v) * S(u) / d(v, u)^2"""
    if shells is None:
        shells = kshell_decompose(graph)
    scores = []
    for v in range(graph.n):
        sv = shells[v]
        terms = [sv * shells[u] / (d * d) for u, d in bfs_within(graph, v, radius, undirected=True)]
        scores.append(math.fsum(terms))
    return scores


def sortv_gci(graph: Graph, r: int = PHEE_DEFAULTS['gci_radius']) -> VertexOrdering:
    """Vertices by gravity centrality index, non-increasing, ties by id"""
    check_positive_int(r, 'r')
    scores = gravity_scores(graph, r)
    order = sorted(range(graph.n), key=lambda v: (-scores[v], v))
    return VertexOrdering(order=tuple(order), method=RankingMethod.GCI, scores=tuple(scores))


def sortv_kshell(graph: Graph) -> VertexOrdering:
    shells = kshell_decompose(graph)
    order = sorted(range(graph.n), key=lambda v: (-shells[v], v))
    return VertexOrdering(order=tuple(order), method=RankingMethod.KSHELL,
                          scores=tuple(float(s) for s in shells.shell))


def sortv_degree(graph: Graph) -> VertexOrdering:
    degree = [len(adj) for adj in graph.union_adj]
    order = sorted(range(graph.n), key=lambda v: (-degree[v], v))
    return VertexOrdering(order=tuple(order), method=RankingMethod.DEGREE,
                          scores=tuple(float(d) for d in degree))


def rank_vertices(graph: Graph, method, lam: float = PHEE_DEFAULTS['lambda'],
                  radius: int = PHEE_DEFAULTS['gci_radius']) -> VertexOrdering:
    """Dispatch on the ranking method name"""
    method = RankingMethod(method)
    if method is RankingMethod.MDD:
        return sortv_mdd(graph, lam)
    if method is RankingMethod.GCI:
        return sortv_gci(graph, radius)
    if method is RankingMethod.KSHELL:
        return sortv_kshell(graph)
    return sortv_degree(graph)
