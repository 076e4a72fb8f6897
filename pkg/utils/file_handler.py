"""
Dataset and plan file handling: path resolution, (compressed) edge-list
loading with a per-process cache, seed files and TOML experiment plans.
"""

import bz2
import gzip
import logging
import lzma
import re
from pathlib import Path
from typing import Any, BinaryIO, Dict, List, Optional, Tuple

from models.graph import Graph, load_edge_list
from models.params import AlgorithmConfig, DatasetSpec, ExperimentPlan
from utils.config import COMPRESSED_SUFFIXES, PATHS, dataset_defaults, load_config_file, merge_settings
from utils.validators import ParameterError

logger = logging.getLogger(__name__)

_OPENERS = {'gzip': gzip.open, 'bz2': bz2.open, 'lzma': lzma.open}

# Plan keys that are not ExperimentPlan fields
PLAN_SECTIONS = ('datasets', 'algorithms')


def open_dataset(path) -> BinaryIO:
    """Binary handle on a dataset file, transparently decompressing .gz/.bz2/.xz"""
    path = Path(path)
    codec = COMPRESSED_SUFFIXES.get(path.suffix.lower())
    if codec is None:
        return path.open('rb')
    return _OPENERS[codec](path, 'rb')


def resolve_dataset_path(path, base_dir=None) -> Path:
    """
    First existing candidate among: relative to `base_dir` (usually the
    plan file's folder), relative to the data directory, the path itself.
    Falls back to the data-directory candidate so errors name it.
    """
    path = Path(path).expanduser()
    if path.is_absolute():
        return path
    candidates = []
    if base_dir is not None:
        candidates.append(Path(base_dir) / path)
    candidates.append(Path(PATHS['data_dir']) / path)
    candidates.append(path)
    for candidate in candidates:
        if candidate.exists():
            return candidate
    return Path(PATHS['data_dir']) / path


class GraphCache:
    """Loaded graphs keyed by (resolved path, directed, direction mode)"""

    _graphs: Dict[Tuple[str, bool, str], Graph] = {}

    @classmethod
    def get(cls, path, directed: bool, direction_mode: str = 'directed') -> Graph:
        key = (str(Path(path).resolve()), bool(directed), direction_mode)
        if key not in cls._graphs:
            cls._graphs[key] = load_graph(path, directed, direction_mode)
        return cls._graphs[key]

    @classmethod
    def clear(cls) -> None:
        cls._graphs.clear()


def load_graph(path, directed: bool = False, direction_mode: str = 'directed') -> Graph:
    """Parse an edge-list file; `as-undirected` reads every arc as an edge"""
    with open_dataset(path) as fh:
        graph = load_edge_list(fh, directed=directed)
    if graph.dropped_duplicates or graph.dropped_self_loops:
        logger.info(f"⚠️ {Path(path).name}: dropped {graph.dropped_duplicates} duplicate edges "
                    f"and {graph.dropped_self_loops} self-loops")
    if directed and direction_mode == 'as-undirected':
        graph = graph.as_undirected()
    info = graph.summary()
    logger.info(f"✅ Loaded {Path(path).name}: n={info['n']:,} m={info['m']:,} "
                f"{'directed' if info['directed'] else 'undirected'}, mean degree {info['average_degree']:.2f}")
    return graph


def load_dataset(spec: DatasetSpec, base_dir=None, cache: bool = True) -> Graph:
    spec = spec.resolved()
    path = resolve_dataset_path(spec.path, base_dir)
    if cache:
        return GraphCache.get(path, spec.directed, spec.direction_mode)
    return load_graph(path, spec.directed, spec.direction_mode)


# ============================================================================
# SEED FILES
# ============================================================================

def read_seed_file(path, graph: Graph) -> List[int]:
    """Original vertex ids separated by whitespace or commas; '#' starts a comment"""
    labels: List[int] = []
    with Path(path).open('r', encoding='utf-8') as fh:
        for line_number, line in enumerate(fh, start=1):
            line = line.split('#', 1)[0].strip()
            if not line:
                continue
            for token in re.split(r'[\s,]+', line):
                if not token:
                    continue
                try:
                    labels.append(int(token))
                except ValueError:
                    raise ParameterError(f"{path}: line {line_number}: '{token}' is not a vertex id") from None
    return [graph.internal_id(label) for label in labels]


# ============================================================================
# EXPERIMENT PLANS
# ============================================================================

def _dataset_specs(sections: Dict[str, Dict[str, Any]]) -> List[DatasetSpec]:
    specs = []
    for name, values in sections.items():
        values = dict(values or {})
        if 'path' not in values:
            known = dataset_defaults(name)
            if 'file' not in known:
                raise ParameterError(f"dataset '{name}' has no path and is not a catalogued network")
            values['path'] = known['file']
        if 'direction-mode' in values:
            values['direction_mode'] = values.pop('direction-mode')
        specs.append(DatasetSpec(name=name, **values))
    return specs


def _algorithm_configs(names: List[str], sections: Dict[str, Dict[str, Any]]) -> List[AlgorithmConfig]:
    ordered = list(names)
    for name in sections:
        if name not in ordered:
            ordered.append(name)
    return [AlgorithmConfig.from_name(name, sections.get(name)) for name in ordered]


def build_plan(values: Dict[str, Any]) -> ExperimentPlan:
    """ExperimentPlan from a parsed config mapping"""
    values = dict(values)
    datasets = values.pop('datasets', {}) or {}
    algorithms = values.pop('algorithms', []) or []
    sections: Dict[str, Dict[str, Any]] = {}
    if isinstance(algorithms, dict):
        sections = {name: dict(v or {}) for name, v in algorithms.items()}
        algorithms = []
    extra_sections = values.pop('algorithm', {}) or {}
    sections.update({name: dict(v or {}) for name, v in extra_sections.items()})
    if not datasets:
        raise ParameterError("plan lists no datasets")
    if not algorithms and not sections:
        raise ParameterError("plan lists no algorithms")
    return ExperimentPlan(
        datasets=_dataset_specs(datasets),
        algorithms=_algorithm_configs(algorithms, sections),
        **values,
    )


def load_plan(path, overrides: Optional[Dict[str, Any]] = None) -> Tuple[ExperimentPlan, Path]:
    """Read a TOML plan, apply CLI overrides; also returns the plan's folder for dataset paths"""
    path = Path(path)
    values = merge_settings(load_config_file(path), overrides or {})
    logger.info(f"🔍 Loaded plan {path.name}")
    return build_plan(values), path.parent
