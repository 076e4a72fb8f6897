"""
Models Package
Graph, Orderings, Seed Sets, Parameters and Result Records
"""

from .graph import Graph, DeletionOverlay, load_edge_list, write_edge_list, bfs_within, overlay_delete
from .ranking import RankingMethod, ShellIndex, VertexOrdering
from .solution import SeedSet, Population, CandidateSet, check_population
from .params import (
    DiffusionParams,
    RdeParams,
    SaaParams,
    PheeParams,
    DatasetSpec,
    AlgorithmConfig,
    ExperimentPlan,
)
from .reports import (
    RESULT_COLUMNS,
    SpreadEstimate,
    GreedyTrace,
    AnnealingTrace,
    RankReport,
    WilcoxonRow,
    PheeOutcome,
    empty_result_table,
)

__all__ = [
    'Graph',
    'DeletionOverlay',
    'load_edge_list',
    'write_edge_list',
    'bfs_within',
    'overlay_delete',
    'RankingMethod',
    'ShellIndex',
    'VertexOrdering',
    'SeedSet',
    'Population',
    'CandidateSet',
    'check_population',
    'DiffusionParams',
    'RdeParams',
    'SaaParams',
    'PheeParams',
    'DatasetSpec',
    'AlgorithmConfig',
    'ExperimentPlan',
    'RESULT_COLUMNS',
    'SpreadEstimate',
    'GreedyTrace',
    'AnnealingTrace',
    'RankReport',
    'WilcoxonRow',
    'PheeOutcome',
    'empty_result_table',
]
