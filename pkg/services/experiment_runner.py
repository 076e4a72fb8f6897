"""
Experiment Runner - runs a plan of datasets x algorithms x seed sizes and
collects one result row per cell.
"""

import logging
import math
import time
import traceback
from datetime import datetime
from multiprocessing import Pool
from typing import Any, Dict, List, Optional, Sequence, Tuple

import pandas as pd
from tqdm import tqdm

from models.graph import Graph
from models.params import AlgorithmConfig, DatasetSpec, DiffusionParams, ExperimentPlan, PheeParams
from models.reports import RESULT_COLUMNS, STATUS_COLUMNS
from services.ic_diffusion import estimate_spread
from services.phee_pipeline import run_algorithm
from utils.file_handler import load_dataset
from utils.random_streams import derived_seed
from utils.validators import ParameterError

logger = logging.getLogger(__name__)

STATUS_OK = 'ok'
STATUS_FAILED = 'failed'


def expand_sweep(base, parameter: str, values: Sequence[Any]) -> List[AlgorithmConfig]:
    """One PHEE configuration per value of `parameter`, named base[parameter=value]"""
    if isinstance(base, str):
        base = AlgorithmConfig.from_name(base)
    if base.kind != 'phee':
        raise ParameterError(f"sweeps apply to PHEE variants only, got '{base.name}'")
    field = 'lam' if parameter == 'lambda' else parameter
    if field not in PheeParams.model_fields or field in ('k', 'master_seed', 'activation_probability'):
        raise ParameterError(f"'{parameter}' is not a sweepable PHEE parameter")
    if not values:
        raise ParameterError("a sweep needs at least one value")

    configs = []
    for value in values:
        if isinstance(value, (list, tuple)):
            label = ','.join(str(v) for v in value)
            value = tuple(value)
        else:
            label = str(value)
        overrides = {**base.overrides, parameter: value}
        configs.append(AlgorithmConfig(name=f"{base.name}[{parameter}={label}]", kind='phee', overrides=overrides))
    return configs


def sweep_plan(plan: ExperimentPlan, base, parameter: str, values: Sequence[Any]) -> ExperimentPlan:
    return plan.model_copy(update={'algorithms': expand_sweep(base, parameter, values)})


def _seed_labels(graph: Graph, members) -> str:
    return ' '.join(str(graph.original_id(v)) for v in members)


def run_cell(graph: Graph, dataset: DatasetSpec, algorithm: AlgorithmConfig, k: int,
             plan: ExperimentPlan, mc_workers: int = 1) -> Dict[str, Any]:
    """
    One (dataset, algorithm, k) cell. Every repetition derives its own
    algorithm seed from the plan's master seed; the spread of all
    algorithms at a dataset is measured on the same Monte-Carlo streams.
    """
    row: Dict[str, Any] = {'dataset': dataset.name, 'algorithm': algorithm.name, 'k': int(k)}
    started = time.perf_counter()
    means, errors, seed_sets = [], [], []
    spread_params = DiffusionParams(
        p=dataset.activation_probability,
        runs=plan.mc_runs,
        master_seed=derived_seed(plan.master_seed, dataset.name, 'spread'),
    )
    for repetition in range(plan.repetitions):
        seed = derived_seed(plan.master_seed, dataset.name, algorithm.name, int(k), repetition)
        seeds = run_algorithm(algorithm, graph, int(k), dataset.activation_probability, seed,
                              mc_runs=plan.mc_runs, celf_runs=plan.celf_runs, workers=mc_workers)
        estimate = estimate_spread(graph, seeds.members, spread_params, workers=mc_workers)
        means.append(estimate.mean)
        errors.append(estimate.std_error)
        seed_sets.append(_seed_labels(graph, seeds.members))

    reps = len(means)
    row['spread_mean'] = math.fsum(means) / reps
    row['spread_stderr'] = math.sqrt(math.fsum(e * e for e in errors)) / reps
    row['seconds'] = time.perf_counter() - started if plan.record_timing else float('nan')
    row['status'] = STATUS_OK
    row['error'] = ''
    row['seeds'] = ' | '.join(seed_sets)
    return row


def failed_row(dataset: str, algorithm: str, k: int, error: str) -> Dict[str, Any]:
    return {
        'dataset': dataset, 'algorithm': algorithm, 'k': int(k),
        'spread_mean': float('nan'), 'spread_stderr': float('nan'), 'seconds': float('nan'),
        'status': STATUS_FAILED, 'error': error, 'seeds': '',
    }


def _execute_cell(task: Tuple) -> Dict[str, Any]:
    graph, dataset, algorithm, k, plan, mc_workers = task
    try:
        return run_cell(graph, dataset, algorithm, k, plan, mc_workers)
    except Exception as e:
        logger.debug(traceback.format_exc())
        return failed_row(dataset.name, algorithm.name, k, f"{type(e).__name__}: {e}")


class ExperimentRunner:
    """
    Runs a plan stage by stage, collecting errors instead of aborting.

    Cells of a dataset that failed to load are reported as failed; a cell
    whose algorithm raises is reported as failed and the run continues.
    """

    def __init__(self, plan: ExperimentPlan, base_dir=None, progress: bool = True):
        self.plan = plan
        self.base_dir = base_dir
        self.progress = progress
        self.graphs: Dict[str, Graph] = {}
        self.datasets: Dict[str, DatasetSpec] = {}
        self.load_errors: Dict[str, str] = {}
        self.results = {
            'metadata': {
                'start_time': datetime.now(),
                'end_time': None,
                'duration': None,
                'cells': 0,
                'failed_cells': 0,
                'status': 'initialized',
            },
            'table': None,
            'errors': [],
        }

    def run(self) -> pd.DataFrame:
        stages = [
            ('🔍 Loading datasets', self._stage_load_datasets),
            ('🚀 Running plan cells', self._stage_run_cells),
            ('✅ Finalizing results', self._stage_finalize),
        ]
        for stage_name, stage_func in stages:
            try:
                logger.info(f"{stage_name}...")
                stage_func()
            except Exception as e:
                error_msg = f"Error in stage '{stage_name}': {e}"
                self.results['errors'].append(error_msg)
                logger.error(f"❌ {error_msg}")
                logger.debug(traceback.format_exc())
        return self.results['table']

    # ========================================================================
    # STAGE FUNCTIONS
    # ========================================================================

    def _stage_load_datasets(self):
        for spec in self.plan.datasets:
            resolved = spec.resolved()
            self.datasets[spec.name] = resolved
            try:
                self.graphs[spec.name] = load_dataset(resolved, self.base_dir)
            except Exception as e:
                message = f"{type(e).__name__}: {e}"
                self.load_errors[spec.name] = message
                self.results['errors'].append(f"Dataset '{spec.name}': {message}")
                logger.warning(f"⚠️ Dataset '{spec.name}' could not be loaded: {message}")

    def _cells(self) -> List[Tuple[DatasetSpec, AlgorithmConfig, int]]:
        return [
            (self.datasets[spec.name], algorithm, k)
            for spec in self.plan.datasets
            for algorithm in self.plan.algorithms
            for k in self.plan.seed_sizes
        ]

    def _stage_run_cells(self):
        cells = self._cells()
        rows: List[Optional[Dict[str, Any]]] = [None] * len(cells)
        tasks, slots = [], []
        for i, (dataset, algorithm, k) in enumerate(cells):
            if dataset.name in self.load_errors:
                rows[i] = failed_row(dataset.name, algorithm.name, k, self.load_errors[dataset.name])
                continue
            graph = self.graphs[dataset.name]
            if k > graph.n:
                rows[i] = failed_row(dataset.name, algorithm.name, k,
                                     f"ParameterError: k={k} exceeds n={graph.n}")
                continue
            tasks.append((graph, dataset, algorithm, k, self.plan))
            slots.append(i)

        # worker processes cannot fork Monte-Carlo pools of their own
        parallel_cells = self.plan.workers > 1 and len(tasks) > 1
        mc_workers = 1 if parallel_cells else self.plan.workers
        tasks = [task + (mc_workers,) for task in tasks]

        # disable=None lets tqdm switch itself off when stderr is not a terminal
        bar = tqdm(total=len(tasks), desc='cells', unit='cell', disable=None if self.progress else True)
        if parallel_cells:
            with Pool(processes=self.plan.workers) as pool:
                for slot, row in zip(slots, pool.imap(_execute_cell, tasks)):
                    rows[slot] = row
                    bar.update(1)
        else:
            for slot, task in zip(slots, tasks):
                rows[slot] = _execute_cell(task)
                bar.update(1)
        bar.close()

        table = pd.DataFrame(rows, columns=RESULT_COLUMNS + STATUS_COLUMNS)
        table['k'] = table['k'].astype(int)
        failed = table[table['status'] == STATUS_FAILED]
        for _, row in failed.iterrows():
            if row['dataset'] not in self.load_errors:
                self.results['errors'].append(f"Cell {row['dataset']}/{row['algorithm']}/k={row['k']}: {row['error']}")
        self.results['table'] = table
        self.results['metadata']['cells'] = len(table)
        self.results['metadata']['failed_cells'] = len(failed)

    def _stage_finalize(self):
        meta = self.results['metadata']
        meta['end_time'] = datetime.now()
        meta['duration'] = str(meta['end_time'] - meta['start_time']).split('.')[0]
        meta['status'] = 'completed' if not self.has_errors() else 'completed_with_errors'
        if meta['failed_cells']:
            logger.warning(f"⚠️ {meta['failed_cells']} of {meta['cells']} cells failed")
        logger.info(f"✅ Plan completed: {meta['cells']} cells in {meta['duration']}")

    # ========================================================================
    # HELPER METHODS
    # ========================================================================

    def has_errors(self) -> bool:
        return len(self.results['errors']) > 0

    def get_errors(self) -> List[str]:
        return self.results['errors']

    def failed_cells(self) -> int:
        return self.results['metadata']['failed_cells']


def run_plan(plan: ExperimentPlan, base_dir=None, progress: bool = False) -> pd.DataFrame:
    """Result table with exactly one row per (dataset, algorithm, k) cell"""
    return ExperimentRunner(plan, base_dir, progress).run()
