"""
Collects experiment outputs and writes them as CSV tables plus one JSON
report that is enough to replay the run.
"""

import json
import logging
import platform
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd
import scipy

from models.params import ExperimentPlan
from models.reports import RESULT_COLUMNS, RankReport
from utils.config import APP_CONFIG, REPORT_FILES

logger = logging.getLogger(__name__)

CURVE_COLUMNS = ['dataset', 'algorithm', 'k', 'spread_mean', 'spread_stderr']


def read_results(path) -> pd.DataFrame:
    """Result table as written by emit_report (extra columns are kept)"""
    table = pd.read_csv(path, keep_default_na=True)
    missing = [c for c in ('dataset', 'algorithm', 'k', 'spread_mean') if c not in table.columns]
    if missing:
        raise ValueError(f"{path} is not a result table, missing columns {missing}")
    table['k'] = table['k'].astype(int)
    return table


def spread_curves(table: pd.DataFrame) -> pd.DataFrame:
    """Long-format k vs spread per algorithm per dataset"""
    curves = table[CURVE_COLUMNS].dropna(subset=['spread_mean'])
    return curves.sort_values(['dataset', 'algorithm', 'k'], kind='mergesort').reset_index(drop=True)


def _json_ready(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _json_ready(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_ready(v) for v in value]
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return None if np.isnan(value) else value
    if isinstance(value, datetime):
        return value.isoformat()
    return value


class ExperimentReport:
    """
    Gathers the result table, rank report, Wilcoxon tables and run
    metadata, then emits them in one go.
    """

    def __init__(self, table: pd.DataFrame, plan: Optional[ExperimentPlan] = None):
        self.table = table
        self.plan = plan
        self.ranks: Optional[RankReport] = None
        self.wilcoxon: Dict[str, pd.DataFrame] = {}
        self.errors: List[str] = []

    def add_ranks(self, ranks: RankReport):
        self.ranks = ranks

    def add_wilcoxon(self, first: str, second: str, rows: pd.DataFrame):
        self.wilcoxon[f"{first} vs {second}"] = rows

    def add_errors(self, errors: List[str]):
        self.errors.extend(errors)

    def versions(self) -> Dict[str, str]:
        return {
            APP_CONFIG['name']: APP_CONFIG['version'],
            'python': platform.python_version(),
            'numpy': np.__version__,
            'pandas': pd.__version__,
            'scipy': scipy.__version__,
        }

    def to_dict(self) -> Dict[str, Any]:
        report: Dict[str, Any] = {
            'versions': self.versions(),
            'master_seed': self.plan.master_seed if self.plan else None,
            'plan': self.plan.model_dump(mode='json') if self.plan else None,
            'results': self.table.to_dict(orient='records'),
            'errors': self.errors,
        }
        if self.ranks is not None:
            report['ranks'] = {
                'dataset_ranks': self.ranks.dataset_ranks.to_dict(),
                'overall': self.ranks.overall.to_dict(),
                'friedman_statistics': {
                    d: {'chi_square': s, 'p_value': p} for d, (s, p) in self.ranks.statistics.items()
                },
            }
        if self.wilcoxon:
            report['wilcoxon'] = {pair: rows.to_dict(orient='records') for pair, rows in self.wilcoxon.items()}
        if self.plan is None or self.plan.record_timing:
            report['generated_at'] = datetime.now()
        return _json_ready(report)

    def write(self, out_dir) -> Dict[str, Path]:
        """Write every available artefact under `out_dir`; returns the written paths"""
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        written: Dict[str, Path] = {}

        path = out_dir / REPORT_FILES['results']
        self.table[RESULT_COLUMNS].to_csv(path, index=False, na_rep='')
        written['results'] = path

        path = out_dir / REPORT_FILES['curves']
        spread_curves(self.table).to_csv(path, index=False)
        written['curves'] = path

        if self.ranks is not None:
            path = out_dir / REPORT_FILES['ranks']
            self.ranks.to_frame().to_csv(path)
            written['ranks'] = path

        if self.wilcoxon:
            frames = []
            for pair, rows in self.wilcoxon.items():
                first, second = pair.split(' vs ', 1)
                frames.append(rows.assign(first=first, second=second))
            path = out_dir / REPORT_FILES['wilcoxon']
            pd.concat(frames, ignore_index=True).to_csv(path, index=False)
            written['wilcoxon'] = path

        path = out_dir / REPORT_FILES['report']
        with path.open('w', encoding='utf-8') as fh:
            json.dump(self.to_dict(), fh, indent=2, ensure_ascii=False)
        written['report'] = path

        logger.info(f"✅ Wrote {len(written)} report files to {out_dir}")
        return written


def emit_report(table: pd.DataFrame, ranks: Optional[RankReport], wilcoxon: Optional[Dict[str, pd.DataFrame]],
                out_dir, plan: Optional[ExperimentPlan] = None, errors: Optional[List[str]] = None) -> Dict[str, Path]:
    report = ExperimentReport(table, plan)
    if ranks is not None:
        report.add_ranks(ranks)
    for pair, rows in (wilcoxon or {}).items():
        first, second = pair
        report.add_wilcoxon(first, second, rows)
    report.add_errors(errors or [])
    return report.write(out_dir)
