"""
Result records: spread estimates, search traces and statistical reports
"""

from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Tuple

import pandas as pd

# Fixed schema of the per-cell result table
RESULT_COLUMNS = ['dataset', 'algorithm', 'k', 'spread_mean', 'spread_stderr', 'seconds']
# Extra bookkeeping columns kept in memory next to the fixed schema
STATUS_COLUMNS = ['status', 'error', 'seeds']


@dataclass(frozen=True)
class SpreadEstimate:
    mean: float
    std_error: float
    runs: int

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


@dataclass
class GreedyTrace:
    """Picks with their marginal gains, plus the number of spread-oracle calls"""
    picks: List[Tuple[int, float]] = field(default_factory=list)
    evaluations: int = 0

    @property
    def gains(self) -> List[float]:
        return [gain for _, gain in self.picks]


@dataclass
class AnnealingTrace:
    levels: int = 0
    moves: int = 0
    accepted: int = 0
    final_temperature: float = 0.0
    initial_edv: float = 0.0
    final_edv: float = 0.0
    stalled: bool = False


@dataclass(frozen=True)
class RankReport:
    """
    Friedman-style mean ranks.

    `dataset_ranks` has one row per algorithm and one column per dataset;
    `overall` is the mean across datasets. `statistics` maps dataset to
    (chi-square, p-value) when computable.
    """
    dataset_ranks: pd.DataFrame
    overall: pd.Series
    statistics: Dict[str, Tuple[float, float]] = field(default_factory=dict)

    def to_frame(self) -> pd.DataFrame:
        frame = self.dataset_ranks.copy()
        frame['overall'] = self.overall
        frame.index.name = 'algorithm'
        return frame


@dataclass(frozen=True)
class WilcoxonRow:
    better: int
    worse: int
    ties: int
    w_plus: float
    w_minus: float
    p_value: float
    decision: str
    exact: bool
    dataset: Optional[str] = None

    def to_dict(self) -> Dict[str, object]:
        return asdict(self)


def empty_result_table() -> pd.DataFrame:
    return pd.DataFrame(columns=RESULT_COLUMNS + STATUS_COLUMNS)


@dataclass
class PheeOutcome:
    """Everything one pipeline run produced, stage by stage"""
    ordering: object = None
    csset: object = None
    initial: object = None
    seeds: object = None
    initial_edv: Optional[float] = None
    final_edv: Optional[float] = None
    rde_history: List[Tuple[float, float]] = field(default_factory=list)
    annealing: Optional[AnnealingTrace] = None
    stages_run: List[str] = field(default_factory=list)
