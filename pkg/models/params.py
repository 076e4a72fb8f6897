"""
Validated parameter models for diffusion, search and experiments
"""

import math
from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from models.ranking import RankingMethod
from utils.config import DIFFUSION_DEFAULTS, PHEE_DEFAULTS, SAA_DEFAULTS, SEED_SIZES, dataset_defaults

UINT64_MAX = (1 << 64) - 1

ALGORITHM_KINDS = ('phee', 'celf', 'greedy', 'degree', 'random')


class DiffusionParams(BaseModel):
    """Uniform-probability Independent Cascade simulation settings"""
    model_config = ConfigDict(frozen=True)

    p: float = Field(DIFFUSION_DEFAULTS['activation_probability'], ge=0.0, le=1.0)
    runs: int = Field(DIFFUSION_DEFAULTS['runs'], ge=1)
    master_seed: int = Field(DIFFUSION_DEFAULTS['master_seed'], ge=0, le=UINT64_MAX)


class RdeParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    k: int = Field(..., ge=1)
    pop: int = Field(PHEE_DEFAULTS['pop'], ge=1)
    gmax: int = Field(PHEE_DEFAULTS['gmax'], ge=1)
    div_factor: float = Field(PHEE_DEFAULTS['div_factor'], ge=0.0, le=1.0)
    mp: float = Field(PHEE_DEFAULTS['mp'], ge=0.0, le=1.0)
    cp: float = Field(PHEE_DEFAULTS['cp'], ge=0.0, le=1.0)
    p_range: Tuple[float, float] = PHEE_DEFAULTS['p_range']
    activation_probability: float = Field(DIFFUSION_DEFAULTS['activation_probability'], ge=0.0, le=1.0)

    @field_validator('p_range')
    @classmethod
    def _check_p_range(cls, value):
        lo, hi = value
        if not 0.0 < lo <= hi < 1.0:
            raise ValueError(f"p_range must satisfy 0 < lo <= hi < 1, got {value}")
        return (float(lo), float(hi))


class SaaParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    T_i: float = SAA_DEFAULTS['T_i']
    T_f: float = SAA_DEFAULTS['T_f']
    theta: float = Field(SAA_DEFAULTS['theta'], gt=0.0)
    N: int = Field(SAA_DEFAULTS['N'], ge=1)
    min_decrement: Optional[float] = Field(None, gt=0.0)
    max_levels: int = Field(SAA_DEFAULTS['max_levels'], ge=1)

    @model_validator(mode='after')
    def _check_temperatures(self):
        if not self.T_i > self.T_f > 0:
            raise ValueError(f"temperatures must satisfy T_i > T_f > 0, got T_i={self.T_i}, T_f={self.T_f}")
        return self

    @property
    def cooling_floor(self) -> float:
        """Smallest temperature drop per level; θ·ln 2 unless configured"""
        if self.min_decrement is not None:
            return self.min_decrement
        return self.theta * math.log(2.0)


class PheeParams(BaseModel):
    """Every tunable of the full pipeline as one flat record"""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    k: int = Field(..., ge=1)
    activation_probability: float = Field(DIFFUSION_DEFAULTS['activation_probability'], ge=0.0, le=1.0)
    ranking: RankingMethod = RankingMethod(PHEE_DEFAULTS['ranking'])
    lam: float = Field(PHEE_DEFAULTS['lambda'], alias='lambda', ge=0.0, le=1.0)
    gci_radius: int = Field(PHEE_DEFAULTS['gci_radius'], ge=1)
    pop: int = Field(PHEE_DEFAULTS['pop'], ge=1)
    gmax: int = Field(PHEE_DEFAULTS['gmax'], ge=1)
    div_factor: float = Field(PHEE_DEFAULTS['div_factor'], ge=0.0, le=1.0)
    mp: float = Field(PHEE_DEFAULTS['mp'], ge=0.0, le=1.0)
    cp: float = Field(PHEE_DEFAULTS['cp'], ge=0.0, le=1.0)
    p_range: Tuple[float, float] = PHEE_DEFAULTS['p_range']
    T_i: float = SAA_DEFAULTS['T_i']
    T_f: float = SAA_DEFAULTS['T_f']
    theta: float = SAA_DEFAULTS['theta']
    N: int = SAA_DEFAULTS['N']
    min_decrement: Optional[float] = None
    max_levels: int = SAA_DEFAULTS['max_levels']
    mc_runs: int = Field(DIFFUSION_DEFAULTS['runs'], ge=1)
    master_seed: int = Field(DIFFUSION_DEFAULTS['master_seed'], ge=0, le=UINT64_MAX)

    @model_validator(mode='after')
    def _check_stages(self):
        self.rde_params()
        self.saa_params()
        return self

    def rde_params(self) -> RdeParams:
        return RdeParams(
            k=self.k, pop=self.pop, gmax=self.gmax, div_factor=self.div_factor,
            mp=self.mp, cp=self.cp, p_range=self.p_range,
            activation_probability=self.activation_probability,
        )

    def saa_params(self) -> SaaParams:
        return SaaParams(
            T_i=self.T_i, T_f=self.T_f, theta=self.theta, N=self.N,
            min_decrement=self.min_decrement, max_levels=self.max_levels,
        )

    def diffusion_params(self) -> DiffusionParams:
        return DiffusionParams(p=self.activation_probability, runs=self.mc_runs, master_seed=self.master_seed)


class DatasetSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    path: str
    directed: Optional[bool] = None
    activation_probability: Optional[float] = None
    direction_mode: Literal['directed', 'as-undirected'] = 'directed'

    @field_validator('activation_probability')
    @classmethod
    def _check_ap(cls, value):
        if value is not None and not 0.0 < value <= 1.0:
            raise ValueError(f"activation probability must lie in (0, 1], got {value}")
        return value

    def resolved(self) -> "DatasetSpec":
        """Fill directed/activation_probability from the benchmark catalogue"""
        known = dataset_defaults(self.name)
        directed = self.directed if self.directed is not None else known.get('type') == 'D'
        ap = self.activation_probability
        if ap is None:
            ap = known.get('ap', DIFFUSION_DEFAULTS['activation_probability'])
        return self.model_copy(update={'directed': directed, 'activation_probability': ap})


class AlgorithmConfig(BaseModel):
    """
    One algorithm column of an experiment.

    `overrides` holds PheeParams keys (e.g. lambda, gmax) applied on top
    of the defaults; `name` is the label used in result tables.
    """
    model_config = ConfigDict(frozen=True)

    name: str
    kind: Literal['phee', 'celf', 'greedy', 'degree', 'random']
    overrides: Dict[str, Any] = Field(default_factory=dict)

    @classmethod
    def from_name(cls, name: str, overrides: Optional[Dict[str, Any]] = None) -> "AlgorithmConfig":
        """'phee' / 'phee-gci' / 'celf' / ... → config; 'phee-<ranking>' sets the ranking"""
        overrides = dict(overrides or {})
        base = name.split('[', 1)[0].strip().lower()
        if base == 'phee':
            base = 'phee-mdd'
        if base.startswith('phee-'):
            ranking = base[len('phee-'):]
            RankingMethod(ranking)
            overrides.setdefault('ranking', ranking)
            return cls(name=name, kind='phee', overrides=overrides)
        if base not in ALGORITHM_KINDS:
            raise ValueError(f"unknown algorithm '{name}', expected one of phee-<ranking>, {', '.join(ALGORITHM_KINDS[1:])}")
        return cls(name=name, kind=base, overrides=overrides)


class ExperimentPlan(BaseModel):
    model_config = ConfigDict(frozen=True)

    datasets: List[DatasetSpec]
    algorithms: List[AlgorithmConfig]
    seed_sizes: List[int] = Field(default_factory=lambda: list(SEED_SIZES))
    mc_runs: int = Field(DIFFUSION_DEFAULTS['runs'], ge=1)
    celf_runs: int = Field(DIFFUSION_DEFAULTS['celf_runs'], ge=1)
    master_seed: int = Field(DIFFUSION_DEFAULTS['master_seed'], ge=0, le=UINT64_MAX)
    repetitions: int = Field(1, ge=1)
    workers: int = Field(1, ge=1)
    record_timing: bool = True

    @field_validator('seed_sizes')
    @classmethod
    def _check_seed_sizes(cls, value):
        if not value:
            raise ValueError("seed_sizes must not be empty")
        if any(k < 1 for k in value):
            raise ValueError(f"seed sizes must be positive, got {value}")
        if any(b <= a for a, b in zip(value, value[1:])):
            raise ValueError(f"seed sizes must be strictly increasing, got {value}")
        return value

    @model_validator(mode='after')
    def _check_names(self):
        names = [a.name for a in self.algorithms]
        if len(set(names)) != len(names):
            raise ValueError(f"algorithm names must be unique, got {names}")
        datasets = [d.name for d in self.datasets]
        if len(set(datasets)) != len(datasets):
            raise ValueError(f"dataset names must be unique, got {datasets}")
        return self
