"""
Reproducible random streams.

Monte-Carlo runs use counter-based Philox generators keyed by
(master_seed, run index); searches and experiment cells use
SeedSequence-derived PCG64 generators.
"""

import zlib
from typing import List

import numpy as np

from utils.validators import ParameterError

_UINT64 = 1 << 64


def check_master_seed(master_seed: int) -> int:
    if int(master_seed) != master_seed or not 0 <= master_seed < _UINT64:
        raise ParameterError(f"master_seed must be an integer in [0, 2**64), got {master_seed}")
    return int(master_seed)


def run_generator(master_seed: int, run_index: int) -> np.random.Generator:
    """Independent stream for one simulation run"""
    key = (int(master_seed) << 64) | int(run_index)
    return np.random.Generator(np.random.Philox(key=key))


def stable_hash32(text: str) -> int:
    return zlib.crc32(text.encode('utf-8')) & 0xFFFFFFFF


def derived_seed(master_seed: int, *parts) -> int:
    """
    64-bit seed derived from the master seed and a path of names/integers.

    Identical inputs give identical seeds on every platform, so a single
    experiment cell can be re-run in isolation.
    """
    spawn_key = tuple(stable_hash32(p) if isinstance(p, str) else int(p) for p in parts)
    seq = np.random.SeedSequence(entropy=int(master_seed), spawn_key=spawn_key)
    return int(seq.generate_state(1, dtype=np.uint64)[0])


def spawn_generators(master_seed: int, count: int) -> List[np.random.Generator]:
    """`count` independent generators for the stages of one search"""
    children = np.random.SeedSequence(int(master_seed)).spawn(count)
    return [np.random.default_rng(child) for child in children]
