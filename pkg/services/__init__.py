"""
Services Package
Ranking, Diffusion, Search, Baselines and Experiment Orchestration
"""

from .vertex_ranking import kshell_decompose, sortv_mdd, sortv_gci, sortv_kshell, sortv_degree, rank_vertices
from .ic_diffusion import simulate_once, estimate_spread, exact_spread, edv
from .rand_rde import up_bound, pool_size, rrd_pool, initial_pop, rde_mutation, rde_crossover, rde_selection, RandRDE, rand_rde
from .adap_saa import construct_ss, AdaptiveAnnealer, adap_saa
from .baselines import greedy_im, celf_im, degree_topk, random_seed_set, exact_oracle, mc_oracle
from .phee_pipeline import PheePipeline, phee, run_algorithm
from .statistics import friedman_ranks, wilcoxon_signed_rank, wilcoxon_table
from .experiment_runner import ExperimentRunner, run_plan, expand_sweep, sweep_plan
from .report_writer import ExperimentReport, emit_report, read_results

__all__ = [
    'kshell_decompose',
    'sortv_mdd',
    'sortv_gci',
    'sortv_kshell',
    'sortv_degree',
    'rank_vertices',
    'simulate_once',
    'estimate_spread',
    'exact_spread',
    'edv',
    'up_bound',
    'pool_size',
    'rrd_pool',
    'initial_pop',
    'rde_mutation',
    'rde_crossover',
    'rde_selection',
    'RandRDE',
    'rand_rde',
    'construct_ss',
    'AdaptiveAnnealer',
    'adap_saa',
    'greedy_im',
    'celf_im',
    'degree_topk',
    'random_seed_set',
    'exact_oracle',
    'mc_oracle',
    'PheePipeline',
    'phee',
    'run_algorithm',
    'friedman_ranks',
    'wilcoxon_signed_rank',
    'wilcoxon_table',
    'ExperimentRunner',
    'run_plan',
    'expand_sweep',
    'sweep_plan',
    'ExperimentReport',
    'emit_report',
    'read_results',
]
