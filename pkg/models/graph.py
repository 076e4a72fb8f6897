"""
Graph model: immutable adjacency structure, edge-list codec, hop-limited BFS
and the deletion overlay used by peeling procedures.
"""

import logging
from bisect import bisect_left
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import BinaryIO, Dict, Iterable, Iterator, List, Optional, TextIO, Tuple

import numpy as np

from utils.validators import ContractViolation, GraphFormatError, ParameterError

logger = logging.getLogger(__name__)

Adjacency = Tuple[Tuple[int, ...], ...]

COMMENT_PREFIXES = (b'#', b'%')
MATRIX_MARKET_BANNER = b'%%MatrixMarket'


@dataclass(frozen=True)
class Graph:
    """
    Social network with dense 0-based vertex ids.

    `out_adj[v]` / `in_adj[v]` are sorted tuples of neighbour ids; for an
    undirected graph both name the same structure and `m` counts each edge
    once. `labels[v]` is the original dataset id of internal vertex v.
    """
    n: int
    m: int
    directed: bool
    out_adj: Adjacency
    in_adj: Adjacency
    labels: Optional[Tuple[int, ...]] = None
    dropped_duplicates: int = 0
    dropped_self_loops: int = 0

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]], directed: bool = False,
                   labels: Optional[Iterable[int]] = None) -> "Graph":
        """Build a graph on vertices 0..n-1, dropping self-loops and duplicates"""
        if n < 1:
            raise GraphFormatError("graph has no vertices")
        out_sets: List[set] = [set() for _ in range(n)]
        in_sets: List[set] = out_sets if not directed else [set() for _ in range(n)]
        duplicates = self_loops = m = 0

        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
            if u == v:
                self_loops += 1
                continue
            if v in out_sets[u]:
                duplicates += 1
                continue
            out_sets[u].add(v)
            in_sets[v].add(u)
            m += 1

        out_adj = tuple(tuple(sorted(s)) for s in out_sets)
        in_adj = out_adj if not directed else tuple(tuple(sorted(s)) for s in in_sets)
        return cls(
            n=n, m=m, directed=directed, out_adj=out_adj, in_adj=in_adj,
            labels=tuple(labels) if labels is not None else None,
            dropped_duplicates=duplicates, dropped_self_loops=self_loops,
        )

    def as_undirected(self) -> "Graph":
        """Same vertices, every arc read as an undirected edge"""
        if not self.directed:
            return self
        return Graph.from_edges(self.n, self.edges(), directed=False, labels=self.labels)

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------

    @cached_property
    def union_adj(self) -> Adjacency:
        """in ∪ out neighbourhoods; the adjacency used by ranking and peeling"""
        if not self.directed:
            return self.out_adj
        return tuple(
            tuple(sorted(set(self.out_adj[v]).union(self.in_adj[v]))) for v in range(self.n)
        )

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.fromiter((len(a) for a in self.union_adj), dtype=np.int64, count=self.n)

    @cached_property
    def _label_index(self) -> Dict[int, int]:
        return {label: v for v, label in enumerate(self.vertex_labels)}

    @property
    def vertex_labels(self) -> Tuple[int, ...]:
        return self.labels if self.labels is not None else tuple(range(self.n))

    def degree(self, v: int) -> int:
        return len(self.union_adj[v])

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.union_adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        adj = self.out_adj[u]
        i = bisect_left(adj, v)
        return i < len(adj) and adj[i] == v

    def edges(self) -> Iterator[Tuple[int, int]]:
        """Arcs (directed) or edges with u < v (undirected), in id order"""
        for u, adj in enumerate(self.out_adj):
            for v in adj:
                if self.directed or u < v:
                    yield u, v

    def original_id(self, v: int) -> int:
        return self.vertex_labels[v]

    def internal_id(self, label: int) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise ParameterError(f"vertex {label} does not exist in the graph") from None

    def summary(self) -> Dict[str, object]:
        return {
            'n': self.n,
            'm': self.m,
            'directed': self.directed,
            'average_degree': (self.m / self.n) * (1 if self.directed else 2),
            'dropped_duplicates': self.dropped_duplicates,
            'dropped_self_loops': self.dropped_self_loops,
        }


# ============================================================================
# EDGE-LIST CODEC
# ============================================================================

def load_edge_list(source: BinaryIO, directed: bool = False) -> Graph:
    """
    Parse whitespace-separated vertex pairs, one edge per line.

    Lines starting with '#' or '%' are comments. Ids are remapped to dense
    0-based ids in order of first appearance. Columns after the two
    endpoints (weights, timestamps) must be numeric and are ignored. A
    MatrixMarket banner makes the first non-comment (size) line skipped.
    """
    index: Dict[int, int] = {}
    labels: List[int] = []
    edges: List[Tuple[int, int]] = []
    skip_size_line = False

    for line_number, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith(MATRIX_MARKET_BANNER):
            skip_size_line = True
            continue
        if line.startswith(COMMENT_PREFIXES):
            continue
        if skip_size_line:
            skip_size_line = False
            continue

        tokens = line.split()
        if len(tokens) < 2:
            raise GraphFormatError(f"expected two vertex ids, got {raw!r}", line_number)
        try:
            a, b = int(tokens[0]), int(tokens[1])
            for extra in tokens[2:]:
                float(extra)
        except ValueError:
            raise GraphFormatError(f"non-integer token in {raw!r}", line_number) from None

        for label in (a, b):
            if label not in index:
                index[label] = len(labels)
                labels.append(label)
        edges.append((index[a], index[b]))

    if not labels:
        raise GraphFormatError("edge list contains no edges")

    graph = Graph.from_edges(len(labels), edges, directed=directed, labels=labels)
    if graph.m == 0:
        raise GraphFormatError("edge list contains only self-loops")
    logger.debug(
        f"Loaded graph n={graph.n} m={graph.m} directed={directed} "
        f"(dropped {graph.dropped_duplicates} duplicates, {graph.dropped_self_loops} self-loops)"
    )
    return graph


def write_edge_list(graph: Graph, sink: TextIO) -> int:
    """Write the graph with original ids; returns the number of lines written"""
    labels = graph.vertex_labels
    count = 0
    for u, v in graph.edges():
        sink.write(f"{labels[u]} {labels[v]}\n")
        count += 1
    return count


# ============================================================================
# DISTANCES
# ============================================================================

def bfs_within(graph: Graph, v: int, r: int, undirected: bool = False) -> List[Tuple[int, int]]:
    """
    Every vertex u != v with d(v, u) <= r, paired with its distance.

    Follows out-edges, or the union neighbourhood when `undirected` is set.
    Results are ordered by (distance, id).
    """
    if r < 1:
        raise ParameterError(f"hop radius must be >= 1, got {r}")
    adjacency = graph.union_adj if undirected else graph.out_adj
    dist = {v: 0}
    frontier = deque([v])
    found: List[Tuple[int, int]] = []
    while frontier:
        u = frontier.popleft()
        d = dist[u]
        if d == r:
            continue
        for w in adjacency[u]:
            if w not in dist:
                dist[w] = d + 1
                found.append((w, d + 1))
                frontier.append(w)
    found.sort(key=lambda item: (item[1], item[0]))
    return found


# ============================================================================
# DELETION OVERLAY
# ============================================================================

@dataclass
class DeletionOverlay:
    """
    Vertex deletions over an immutable graph without copying it.

    Degrees are taken on the union neighbourhood. Single owner only.
    """
    base: Graph
    deleted: List[bool] = field(init=False)
    live_degree: List[int] = field(init=False)
    live_count: int = field(init=False)

    def __post_init__(self):
        self.deleted = [False] * self.base.n
        self.live_degree = [len(adj) for adj in self.base.union_adj]
        self.live_count = self.base.n

    def delete(self, v: int) -> None:
        if self.deleted[v]:
            raise ContractViolation(f"vertex {v} is already deleted")
        self.deleted[v] = True
        self.live_count -= 1
        for w in self.base.union_adj[v]:
            if not self.deleted[w]:
                self.live_degree[w] -= 1

    def is_live(self, v: int) -> bool:
        return not self.deleted[v]

    def exhausted_degree(self, v: int) -> int:
        """Neighbours of v that have already been deleted"""
        return len(self.base.union_adj[v]) - self.live_degree[v]

    def live_vertices(self) -> List[int]:
        return [v for v in range(self.base.n) if not self.deleted[v]]


def overlay_delete(overlay: DeletionOverlay, v: int) -> None:
    overlay.delete(v)
