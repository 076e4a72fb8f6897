"""
Validators and exception types shared by every layer of the pipeline
"""

import math
from typing import Iterable, List, Tuple


class PheeError(Exception):
    """Root of all errors raised by the library"""


class ParameterError(PheeError, ValueError):
    """A tunable or argument lies outside its admissible range"""


class GraphFormatError(PheeError, ValueError):
    """An edge-list source could not be parsed into a graph"""

    def __init__(self, message: str, line_number: int = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class ContractViolation(PheeError, RuntimeError):
    """An internal invariant was broken"""


class IncompleteGridError(PheeError, ValueError):
    """A result table does not cover the full (dataset, algorithm, k) grid"""

    def __init__(self, missing: List[Tuple[str, str, int]]):
        self.missing = list(missing)
        shown = ", ".join(f"{d}/{a}/k={k}" for d, a, k in self.missing[:10])
        more = f" (+{len(self.missing) - 10} more)" if len(self.missing) > 10 else ""
        super().__init__(f"Missing {len(self.missing)} result cells: {shown}{more}")


def check_probability(value: float, name: str = "p") -> float:
    """Closed interval [0, 1]"""
    if value is None or math.isnan(value) or not 0.0 <= value <= 1.0:
        raise ParameterError(f"{name} must lie in [0, 1], got {value}")
    return float(value)


def check_open_probability(value: float, name: str = "p") -> float:
    """Open interval (0, 1)"""
    if value is None or math.isnan(value) or not 0.0 < value < 1.0:
        raise ParameterError(f"{name} must lie in (0, 1), got {value}")
    return float(value)


def check_positive_int(value: int, name: str) -> int:
    if isinstance(value, bool) or int(value) != value or value < 1:
        raise ParameterError(f"{name} must be a positive integer, got {value}")
    return int(value)


def check_seed_set(seeds: Iterable[int], n: int, k: int = None) -> Tuple[int, ...]:
    """
    Validate a seed set against a graph of n vertices.

    Returns the members as a tuple in the given order.
    """
    members = tuple(int(v) for v in seeds)
    if not members:
        raise ParameterError("seed set must not be empty")
    if len(set(members)) != len(members):
        raise ParameterError(f"seed set contains repeated vertices: {members}")
    bad = [v for v in members if v < 0 or v >= n]
    if bad:
        raise ParameterError(f"seed ids out of range [0, {n}): {bad[:5]}")
    if k is not None and len(members) != k:
        raise ParameterError(f"seed set has {len(members)} members, expected {k}")
    return members
