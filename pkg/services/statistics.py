"""
Non-parametric comparison of algorithms over a result table: Friedman
mean ranks and Wilcoxon signed-rank tests.
"""

import logging
import math
from typing import Dict, List, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy import stats

from models.reports import RankReport, WilcoxonRow
from utils.validators import IncompleteGridError, ParameterError

logger = logging.getLogger(__name__)

# Largest number of non-zero differences tested with the exact null distribution
WILCOXON_EXACT_MAX = 20
WILCOXON_MIN_PAIRS = 5

DECISION_BETTER = '+'
DECISION_WORSE = '-'
DECISION_EQUAL = '≈'


def _usable_rows(table: pd.DataFrame) -> pd.DataFrame:
    rows = table
    if 'status' in rows.columns:
        rows = rows[rows['status'].fillna('ok') == 'ok']
    return rows[rows['spread_mean'].notna()]


def spread_grid(table: pd.DataFrame, dataset: str) -> pd.DataFrame:
    """k x algorithm matrix of mean spreads for one dataset"""
    rows = _usable_rows(table)
    rows = rows[rows['dataset'] == dataset]
    grid = rows.pivot_table(index='k', columns='algorithm', values='spread_mean', aggfunc='mean')
    return grid.sort_index()


def check_complete_grid(table: pd.DataFrame) -> None:
    """Every algorithm must have a spread for every (dataset, k) present in the table"""
    algorithms = list(pd.unique(table['algorithm']))
    present = set(zip(*(_usable_rows(table)[c] for c in ('dataset', 'algorithm', 'k'))))
    missing: List[Tuple[str, str, int]] = []
    for dataset in pd.unique(table['dataset']):
        ks = sorted(set(table.loc[table['dataset'] == dataset, 'k']))
        for algorithm in algorithms:
            for k in ks:
                if (dataset, algorithm, k) not in present:
                    missing.append((dataset, algorithm, int(k)))
    if missing:
        raise IncompleteGridError(missing)


def friedman_ranks(table: pd.DataFrame) -> RankReport:
    """
    Rank algorithms per (dataset, k), best spread highest, average ranks on
    ties; mean over k per dataset, then over datasets.
    """
    check_complete_grid(table)
    algorithms = list(pd.unique(table['algorithm']))
    datasets = list(pd.unique(table['dataset']))

    per_dataset: Dict[str, pd.Series] = {}
    statistics: Dict[str, Tuple[float, float]] = {}
    for dataset in datasets:
        grid = spread_grid(table, dataset)[algorithms]
        ranks = grid.rank(axis=1, method='average')
        per_dataset[dataset] = ranks.mean(axis=0)
        if len(algorithms) >= 3 and len(grid) >= 2:
            statistic = _friedman_statistic(grid)
            if statistic is not None:
                statistics[dataset] = statistic

    dataset_ranks = pd.DataFrame(per_dataset, index=algorithms, columns=datasets)
    overall = dataset_ranks.mean(axis=1)
    return RankReport(dataset_ranks=dataset_ranks, overall=overall, statistics=statistics)


def _friedman_statistic(grid: pd.DataFrame):
    with np.errstate(divide='ignore', invalid='ignore'):
        try:
            result = stats.friedmanchisquare(*(grid[c].to_numpy() for c in grid.columns))
        except ValueError as e:
            logger.debug(f"Friedman statistic skipped: {e}")
            return None
    statistic, p_value = float(result.statistic), float(result.pvalue)
    if math.isnan(statistic) or math.isnan(p_value):
        return None
    return statistic, p_value


# ============================================================================
# WILCOXON SIGNED-RANK
# ============================================================================

def _exact_lower_tail(ranks: np.ndarray, w: float) -> float:
    """P(W+ <= w) under the null, counting subsets of doubled (integer) ranks"""
    doubled = [int(round(2 * r)) for r in ranks]
    total = sum(doubled)
    counts = [0] * (total + 1)
    counts[0] = 1
    for r in doubled:
        for s in range(total, r - 1, -1):
            counts[s] += counts[s - r]
    limit = int(round(2 * w))
    return sum(counts[:limit + 1]) / float(2 ** len(doubled))


def _normal_two_sided(ranks: np.ndarray, w_plus: float) -> float:
    n = len(ranks)
    mean = n * (n + 1) / 4.0
    _, tie_sizes = np.unique(ranks, return_counts=True)
    tie_term = float(np.sum(tie_sizes ** 3 - tie_sizes)) / 48.0
    variance = n * (n + 1) * (2 * n + 1) / 24.0 - tie_term
    if variance <= 0:
        return 1.0
    z = max(abs(w_plus - mean) - 0.5, 0.0) / math.sqrt(variance)
    return float(min(1.0, 2.0 * stats.norm.sf(z)))


def wilcoxon_signed_rank(x: Sequence[float], y: Sequence[float], alpha: float = 0.05) -> WilcoxonRow:
    """
    Two-sided paired test of x against y. Zero differences are dropped and
    tied magnitudes share average ranks; the null distribution is exact up to
    WILCOXON_EXACT_MAX non-zero pairs and normal (continuity and tie
    corrected) above.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ParameterError(f"paired samples must have equal length, got {x.shape} and {y.shape}")
    if len(x) < WILCOXON_MIN_PAIRS:
        raise ParameterError(f"need at least {WILCOXON_MIN_PAIRS} pairs, got {len(x)}")

    diff = x - y
    better = int(np.sum(diff > 0))
    worse = int(np.sum(diff < 0))
    ties = int(len(diff) - better - worse)
    nonzero = diff[diff != 0]
    if len(nonzero) == 0:
        return WilcoxonRow(better=0, worse=0, ties=ties, w_plus=0.0, w_minus=0.0,
                           p_value=1.0, decision=DECISION_EQUAL, exact=True)

    ranks = stats.rankdata(np.abs(nonzero))
    w_plus = float(np.sum(ranks[nonzero > 0]))
    w_minus = float(np.sum(ranks[nonzero < 0]))

    exact = len(nonzero) <= WILCOXON_EXACT_MAX
    if exact:
        p_value = min(1.0, 2.0 * _exact_lower_tail(ranks, min(w_plus, w_minus)))
    else:
        p_value = _normal_two_sided(ranks, w_plus)

    if p_value < alpha:
        decision = DECISION_BETTER if w_plus > w_minus else DECISION_WORSE
    else:
        decision = DECISION_EQUAL
    return WilcoxonRow(better=better, worse=worse, ties=ties, w_plus=w_plus, w_minus=w_minus,
                       p_value=p_value, decision=decision, exact=exact)


def wilcoxon_table(table: pd.DataFrame, first: str, second: str, alpha: float = 0.05) -> pd.DataFrame:
    """Per-dataset test of algorithm `first` against `second` over the seed-size grid"""
    algorithms = set(table['algorithm'])
    for name in (first, second):
        if name not in algorithms:
            raise ParameterError(f"algorithm '{name}' does not appear in the result table")
    pair = table[table['algorithm'].isin([first, second])]
    check_complete_grid(pair)

    rows = []
    for dataset in pd.unique(pair['dataset']):
        grid = spread_grid(pair, dataset)
        row = wilcoxon_signed_rank(grid[first].to_numpy(), grid[second].to_numpy(), alpha)
        rows.append({**row.to_dict(), 'dataset': dataset})
    columns = ['dataset', 'better', 'worse', 'ties', 'w_plus', 'w_minus', 'p_value', 'decision', 'exact']
    return pd.DataFrame(rows, columns=columns)
