"""
Utils Package
Configuration, Validation and Random Streams

File handling and formatters depend on the models package and are imported
from their modules directly (utils.file_handler, utils.formatters).
"""

from .config import (
    APP_CONFIG,
    PATHS,
    PHEE_DEFAULTS,
    SAA_DEFAULTS,
    DIFFUSION_DEFAULTS,
    DATASETS,
    SEED_SIZES,
    REPORT_FILES,
    setup_logging,
    load_config_file,
    merge_settings,
    dataset_defaults,
)

from .validators import (
    PheeError,
    ParameterError,
    GraphFormatError,
    ContractViolation,
    IncompleteGridError,
)

from .random_streams import run_generator, derived_seed, spawn_generators

__all__ = [
    'APP_CONFIG',
    'PATHS',
    'PHEE_DEFAULTS',
    'SAA_DEFAULTS',
    'DIFFUSION_DEFAULTS',
    'DATASETS',
    'SEED_SIZES',
    'REPORT_FILES',
    'setup_logging',
    'load_config_file',
    'merge_settings',
    'dataset_defaults',
    'PheeError',
    'ParameterError',
    'GraphFormatError',
    'ContractViolation',
    'IncompleteGridError',
    'run_generator',
    'derived_seed',
    'spawn_generators',
]
