"""
Shared fixtures: small hand-checkable graphs and temporary edge files
"""

import sys
from pathlib import Path

import networkx as nx
import pytest

ROOT = Path(__file__).resolve().parent.parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from models.graph import Graph  # noqa: E402
from tests.helpers import from_networkx  # noqa: E402


@pytest.fixture
def path3():
    """a-b-c as 0-1-2"""
    return Graph.from_edges(3, [(0, 1), (1, 2)])


@pytest.fixture
def star5():
    """center 0 with leaves 1..5"""
    return Graph.from_edges(6, [(0, leaf) for leaf in range(1, 6)])


@pytest.fixture
def triangle():
    return Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def two_triangles():
    return Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


@pytest.fixture
def chain3_directed():
    """a->b->c"""
    return Graph.from_edges(3, [(0, 1), (1, 2)], directed=True)


@pytest.fixture
def karate():
    return from_networkx(nx.karate_club_graph())


@pytest.fixture
def edge_file(tmp_path):
    """Writes edge-list text to a temporary file and returns its path"""
    def write(text: str, name: str = 'graph.edges') -> Path:
        path = tmp_path / name
        path.write_text(text, encoding='utf-8')
        return path
    return write


@pytest.fixture
def karate_file(tmp_path):
    """Karate club with 1-based ids, as datasets usually ship"""
    path = tmp_path / 'karate.edges'
    lines = [f"{u + 1} {v + 1}" for u, v in nx.karate_club_graph().edges()]
    path.write_text("# Zachary karate club\n" + "\n".join(lines) + "\n", encoding='utf-8')
    return path
