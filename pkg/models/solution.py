"""
Seed sets, populations and candidate sets
"""

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Tuple

from utils.validators import ContractViolation


@dataclass(frozen=True)
class SeedSet:
    """
    k distinct vertex ids stored as an ordered k-tuple.

    Slot order matters to the crossover operator; set semantics
    (membership, equality via `member_set`) are available alongside.
    """
    members: Tuple[int, ...]

    def __post_init__(self):
        if len(set(self.members)) != len(self.members):
            raise ContractViolation(f"seed set {self.members} repeats a vertex")

    @classmethod
    def of(cls, vertices: Iterable[int]) -> "SeedSet":
        return cls(tuple(int(v) for v in vertices))

    @property
    def k(self) -> int:
        return len(self.members)

    @property
    def member_set(self) -> frozenset:
        return frozenset(self.members)

    def __contains__(self, v: int) -> bool:
        return v in self.member_set

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def sorted(self) -> Tuple[int, ...]:
        return tuple(sorted(self.members))

    def swap(self, slot: int, vertex: int) -> "SeedSet":
        """Copy with `vertex` placed in `slot`"""
        members = list(self.members)
        members[slot] = vertex
        return SeedSet(tuple(members))


Population = Tuple[SeedSet, ...]


def check_population(population: Sequence[SeedSet], k: int, n: int, context: str) -> None:
    """Every individual holds exactly k distinct ids in [0, n)"""
    for i, individual in enumerate(population):
        if individual.k != k:
            raise ContractViolation(f"{context}: individual {i} has {individual.k} members, expected {k}")
        if any(v < 0 or v >= n for v in individual.members):
            raise ContractViolation(f"{context}: individual {i} holds an invalid vertex id")


@dataclass(frozen=True)
class CandidateSet:
    """Union of the final population, most frequent vertex first (ties by id)"""
    vertices: Tuple[int, ...]
    counts: Tuple[int, ...]

    @classmethod
    def from_population(cls, population: Sequence[SeedSet]) -> "CandidateSet":
        tally = Counter(v for individual in population for v in individual.members)
        ranked = sorted(tally.items(), key=lambda item: (-item[1], item[0]))
        return cls(
            vertices=tuple(v for v, _ in ranked),
            counts=tuple(c for _, c in ranked),
        )

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def __contains__(self, v: int) -> bool:
        return v in set(self.vertices)
