"""
Application Configuration
"""

import logging
from pathlib import Path
from typing import Any, Dict, Optional

import toml
from decouple import config
from rich.logging import RichHandler


# App metadata
APP_CONFIG = {
    'name': 'phee-influence',
    'version': '1.0.0',
    'description': 'Influence maximization with ranked evolutionary search and adaptive annealing',
}

# File paths configuration
PATHS = {
    'data_dir': config('PHEE_DATA_DIR', default='data'),
    'reports_dir': config('PHEE_REPORTS_DIR', default='reports'),
}

# Recognised compressed suffixes for dataset files
COMPRESSED_SUFFIXES = {
    '.gz': 'gzip',
    '.bz2': 'bz2',
    '.xz': 'lzma',
}

# Ranking + evolutionary search defaults (parameter study settings)
PHEE_DEFAULTS = {
    'lambda': 0.7,
    'gci_radius': 3,
    'ranking': 'mdd',
    'pop': 10,
    'gmax': 100,
    'div_factor': 0.6,
    'mp': 0.1,
    'cp': 0.6,
    'p_range': (0.1, 0.5),
}

# Adaptive simulated annealing defaults
SAA_DEFAULTS = {
    'T_i': 2000.0,
    'T_f': 10.0,
    'theta': 5.0,
    'N': 15,
    'max_levels': 100000,
}

# Independent Cascade simulation defaults
DIFFUSION_DEFAULTS = {
    'activation_probability': 0.01,
    'runs': 1000,
    'celf_runs': 10000,
    'master_seed': 20240101,
    'workers': config('PHEE_WORKERS', default=1, cast=int),
}

# Benchmark networks: |V|, |E|, type (U/D) and the activation probability used for them
DATASETS = {
    'net-science': {'n': 1589, 'm': 2742, 'type': 'U', 'ap': 0.05, 'file': 'netscience.edges'},
    'email-un': {'n': 1133, 'm': 5451, 'type': 'D', 'ap': 0.05, 'file': 'email-univ.edges'},
    'ca-grqc': {'n': 5242, 'm': 14495, 'type': 'U', 'ap': 0.01, 'file': 'ca-GrQc.edges'},
    'ca-hepth': {'n': 15233, 'm': 58891, 'type': 'U', 'ap': 0.01, 'file': 'ca-HepTh.edges'},
    'ca-astroph': {'n': 18772, 'm': 198110, 'type': 'U', 'ap': 0.01, 'file': 'ca-AstroPh.edges'},
    'gnutella': {'n': 62586, 'm': 147892, 'type': 'D', 'ap': 0.01, 'file': 'p2p-Gnutella31.edges'},
    'soc-epinions1': {'n': 75888, 'm': 508837, 'type': 'D', 'ap': 0.01, 'file': 'soc-Epinions1.edges'},
    'soc-epinions2': {'n': 26594, 'm': 100126, 'type': 'D', 'ap': 0.01, 'file': 'soc-epinions.edges'},
    'slashdot': {'n': 77360, 'm': 905468, 'type': 'U', 'ap': 0.01, 'file': 'soc-Slashdot0811.edges'},
    'email-eu': {'n': 265214, 'm': 420045, 'type': 'U', 'ap': 0.05, 'file': 'email-EuAll.edges'},
}

# Seed sizes of the evaluation protocol
SEED_SIZES = [10, 20, 30, 40, 50, 60, 70, 80, 90, 100]

# Number formatting for console tables
NUMBER_FORMAT = {
    'decimal_places': 4,
    'thousands_separator': ',',
    'missing': '-',
}

# Output file names written by the report writer
REPORT_FILES = {
    'results': 'results.csv',
    'ranks': 'friedman_ranks.csv',
    'wilcoxon': 'wilcoxon.csv',
    'curves': 'spread_curves.csv',
    'report': 'report.json',
}

LOGGING_CONFIG = {
    'level': config('PHEE_LOG_LEVEL', default='INFO'),
    'format': '%(message)s',
    'datefmt': '[%X]',
}


def setup_logging(level: Optional[str] = None) -> None:
    """Install a rich console handler on the root logger (idempotent)"""
    root = logging.getLogger()
    level = (level or LOGGING_CONFIG['level']).upper()
    root.setLevel(level)
    if any(isinstance(h, RichHandler) for h in root.handlers):
        return
    handler = RichHandler(rich_tracebacks=True, show_path=False)
    handler.setFormatter(logging.Formatter(LOGGING_CONFIG['format'], datefmt=LOGGING_CONFIG['datefmt']))
    root.addHandler(handler)


def load_config_file(path) -> Dict[str, Any]:
    """Read a TOML config file (flat keys plus [datasets.*] / [algorithms.*] sections)"""
    path = Path(path)
    with path.open('r', encoding='utf-8') as fh:
        return toml.load(fh)


def merge_settings(file_values: Dict[str, Any], overrides: Dict[str, Any]) -> Dict[str, Any]:
    """CLI overrides win over file values; None means 'not given'"""
    merged = dict(file_values or {})
    for key, value in (overrides or {}).items():
        if value is not None:
            merged[key] = value
    return merged


def dataset_defaults(name: str) -> Dict[str, Any]:
    """Catalogue entry for a known benchmark network, empty dict otherwise"""
    return dict(DATASETS.get(name.lower(), {}))
