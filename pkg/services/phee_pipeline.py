"""
PHEE pipeline and the single entry point for running any seed-selection
algorithm of an experiment.
"""

import logging

import numpy as np

from models.graph import Graph
from models.params import AlgorithmConfig, DiffusionParams, PheeParams
from models.reports import PheeOutcome
from models.solution import SeedSet
from services.adap_saa import AdaptiveAnnealer, construct_ss
from services.baselines import celf_im, degree_topk, greedy_im, mc_oracle, random_seed_set
from services.ic_diffusion import edv
from services.rand_rde import RandRDE
from services.vertex_ranking import rank_vertices
from utils.config import DIFFUSION_DEFAULTS
from utils.random_streams import spawn_generators
from utils.validators import ParameterError

logger = logging.getLogger(__name__)

PIPELINE_STAGES = ('rank', 'rde', 'construct', 'saa')


class PheePipeline:
    """
    rank -> RandRDE -> ConstructSS -> AdapSAA.

    RandRDE and AdapSAA draw from two independent streams spawned from
    `params.master_seed`, so stopping early never shifts later draws.
    """

    def __init__(self, graph: Graph, params: PheeParams):
        if params.k > graph.n:
            raise ParameterError(f"seed set size k={params.k} exceeds the number of vertices n={graph.n}")
        self.graph = graph
        self.params = params
        self.outcome = PheeOutcome()
        self.rde_rng, self.saa_rng = spawn_generators(params.master_seed, 2)

    def run(self, stop_after: str = 'saa') -> PheeOutcome:
        if stop_after not in PIPELINE_STAGES:
            raise ParameterError(f"unknown stage '{stop_after}', expected one of {', '.join(PIPELINE_STAGES)}")
        stages = [
            ('rank', self._stage_rank),
            ('rde', self._stage_rde),
            ('construct', self._stage_construct),
            ('saa', self._stage_saa),
        ]
        for name, stage_func in stages:
            stage_func()
            self.outcome.stages_run.append(name)
            if name == stop_after:
                break
        return self.outcome

    def _stage_rank(self):
        p = self.params
        self.outcome.ordering = rank_vertices(self.graph, p.ranking, lam=p.lam, radius=p.gci_radius)

    def _stage_rde(self):
        search = RandRDE(self.graph, self.outcome.ordering, self.params.rde_params(), self.rde_rng)
        self.outcome.csset = search.run()
        self.outcome.rde_history = search.history

    def _stage_construct(self):
        self.outcome.initial = construct_ss(self.graph, self.params.k)
        self.outcome.initial_edv = edv(self.graph, self.outcome.initial.members,
                                       self.params.activation_probability)

    def _stage_saa(self):
        annealer = AdaptiveAnnealer(self.graph, self.outcome.csset, self.params.k, self.params.saa_params(),
                                    self.params.activation_probability, self.saa_rng)
        self.outcome.seeds = annealer.run(self.outcome.initial)
        self.outcome.annealing = annealer.trace
        self.outcome.final_edv = annealer.trace.final_edv


def phee(graph: Graph, params: PheeParams) -> SeedSet:
    return PheePipeline(graph, params).run().seeds


def run_algorithm(config: AlgorithmConfig, graph: Graph, k: int, activation_probability: float,
                  seed: int, mc_runs: int = DIFFUSION_DEFAULTS['runs'],
                  celf_runs: int = DIFFUSION_DEFAULTS['celf_runs'], workers: int = 1) -> SeedSet:
    """Seed set of size k chosen by the configured algorithm, deterministic in `seed`"""
    if config.kind == 'phee':
        params = PheeParams(k=k, activation_probability=activation_probability, master_seed=seed,
                            mc_runs=mc_runs, **config.overrides)
        return phee(graph, params)
    if config.kind == 'celf':
        runs = int(config.overrides.get('runs', celf_runs))
        oracle = mc_oracle(graph, DiffusionParams(p=activation_probability, runs=runs, master_seed=seed), workers)
        return celf_im(graph, k, oracle)[0]
    if config.kind == 'greedy':
        runs = int(config.overrides.get('runs', mc_runs))
        oracle = mc_oracle(graph, DiffusionParams(p=activation_probability, runs=runs, master_seed=seed), workers)
        return greedy_im(graph, k, oracle)[0]
    if config.kind == 'degree':
        return degree_topk(graph, k)
    if config.kind == 'random':
        return random_seed_set(graph, k, np.random.default_rng(seed))
    raise ParameterError(f"unknown algorithm kind '{config.kind}' for '{config.name}'")
