"""
Graph builders shared by the test modules
"""

import networkx as nx
import numpy as np

from models.graph import Graph


def from_networkx(nx_graph, directed: bool = False) -> Graph:
    """Graph on nodes 0..n-1 of a networkx graph whose nodes are already integers 0..n-1"""
    return Graph.from_edges(nx_graph.number_of_nodes(), list(nx_graph.edges()), directed=directed)


def random_tiny_graph(seed: int, n_max: int = 10, m_max: int = 14, directed: bool = False):
    """(Graph, networkx graph) with 2..n_max vertices and 1..m_max edges"""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, n_max + 1))
    max_edges = n * (n - 1) if directed else n * (n - 1) // 2
    m = int(rng.integers(1, min(m_max, max_edges) + 1))
    nx_graph = nx.gnm_random_graph(n, m, seed=int(seed), directed=directed)
    return from_networkx(nx_graph, directed=directed), nx_graph


def random_graph(seed: int, n_max: int = 200, directed: bool = False):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(5, n_max + 1))
    p = float(rng.uniform(0.01, 0.15))
    nx_graph = nx.gnp_random_graph(n, p, seed=int(seed), directed=directed)
    return from_networkx(nx_graph, directed=directed), nx_graph
