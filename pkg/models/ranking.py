"""
Vertex orderings produced by the ranking procedures
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from utils.validators import ContractViolation


class RankingMethod(str, Enum):
    MDD = 'mdd'
    GCI = 'gci'
    KSHELL = 'kshell'
    DEGREE = 'degree'


@dataclass(frozen=True)
class ShellIndex:
    """Shell number S(v) of every vertex"""
    shell: Tuple[int, ...]

    def __getitem__(self, v: int) -> int:
        return self.shell[v]

    def __len__(self) -> int:
        return len(self.shell)


@dataclass(frozen=True)
class VertexOrdering:
    """
    Permutation of all vertex ids, most influential first (SVet).

    `scores`, when present, is indexed by vertex id and non-increasing
    along `order`.
    """
    order: Tuple[int, ...]
    method: RankingMethod
    scores: Optional[Tuple[float, ...]] = None

    def __post_init__(self):
        n = len(self.order)
        if sorted(self.order) != list(range(n)):
            raise ContractViolation(f"{self.method.value} ordering is not a permutation of 0..{n - 1}")

    def __len__(self) -> int:
        return len(self.order)

    def top(self, k: int) -> Tuple[int, ...]:
        return self.order[:k]
