"""Eavesdropper equivocation for the nested polar code over a BEC.

For a fixed erasure pattern ``E`` at the eavesdropper,

    H(M | Z) = rank(H_S[:, E]) - rank(H_T[:, E])

where ``H_T`` checks the overall code spanned by the message and random rows
of the generator and ``H_S`` checks the sub-code spanned by the random rows
alone.  :func:`brute_force_equivocation` computes the same quantity by
enumerating every codeword, which is how the rank formula is validated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .codec import assemble_u
from .construction import RateTargeted, WiretapCodeConfig, assign_frozen_vector, select_index_sets
from .exceptions import CapacityError
from .gf2 import complete_basis, pack_rows, parity_check_from_generator, prefix_ranks
from .polar import DEFAULT_ANALYSIS_LIMIT, generator_matrix, polar_encode
from .seeding import CHANNEL, FROZEN, derive_rng, rate_key

HOMOGENEOUS = "homogeneous"
PAPER_LITERAL = "paper_literal"
VARIANTS = (HOMOGENEOUS, PAPER_LITERAL)

#: Largest ``|set_message| + |set_random|`` accepted by the enumeration oracle.
ENUMERATION_LIMIT = 20


@dataclass(frozen=True, eq=False)
class NestedCodeMatrices:
    """Parity checks of the overall code (``h_t``) and of the sub-code (``h_s``)."""

    h_t: np.ndarray
    h_s: np.ndarray
    variant: str = HOMOGENEOUS
    _columns: np.ndarray = field(init=False, repr=False)
    _split: int = field(init=False, repr=False)
    _width: int = field(init=False, repr=False)

    def __post_init__(self):
        if self.h_t.shape[1] != self.h_s.shape[1]:
            raise ValueError("h_t and h_s must have the same number of columns")
        # [h_t; ext] spans the row space of h_s, so one elimination over the
        # columns of the transpose yields both ranks.
        ext = complete_basis(self.h_t, self.h_s)
        stacked = np.vstack([self.h_t, ext]).astype(np.uint8)
        object.__setattr__(self, "_columns", pack_rows(stacked.T))
        object.__setattr__(self, "_split", self.h_t.shape[0])
        object.__setattr__(self, "_width", stacked.shape[0])

    @property
    def N(self) -> int:
        return self.h_t.shape[1]

    def erased_ranks(self, erased) -> tuple[int, int]:
        """``(rank(h_t[:, E]), rank(h_s[:, E]))`` for the erased set ``E``."""
        idx = _erased_indices(erased, self.N)
        cols = self._columns[idx]
        return prefix_ranks(cols, self._width, self._split)


def _erased_indices(erased, big_n: int) -> np.ndarray:
    arr = np.asarray(erased)
    if arr.dtype == bool:
        if arr.shape != (big_n,):
            raise ValueError(f"erasure mask must have length {big_n}")
        return np.flatnonzero(arr)
    idx = np.unique(arr.astype(np.int64).reshape(-1))
    if idx.size and (idx[0] < 0 or idx[-1] >= big_n):
        raise ValueError("erased index out of range")
    return idx


def _generator_rows(config: WiretapCodeConfig, variant: str) -> tuple[np.ndarray, np.ndarray]:
    overall = config.set_good_main
    sub = config.set_random
    if variant == PAPER_LITERAL:
        if config.frozen_vector is None:
            raise ValueError("config has no frozen vector")
        nonzero = config.set_frozen[config.frozen_vector.astype(bool)]
        overall = np.union1d(overall, nonzero)
        sub = np.union1d(sub, nonzero)
    elif variant != HOMOGENEOUS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    return overall, sub


def build_nested_matrices(config: WiretapCodeConfig, variant: str = HOMOGENEOUS,
                          limit: int = DEFAULT_ANALYSIS_LIMIT) -> NestedCodeMatrices:
    """Parity-check matrices of the overall code and the sub-code.

    ``HOMOGENEOUS`` spans the message and random rows of the generator (and
    the random rows alone for the sub-code).  ``PAPER_LITERAL`` additionally
    includes the frozen rows whose frozen bit is 1 in both codes.
    """
    if config.n > limit:
        raise CapacityError(f"n={config.n} exceeds the analysis limit n<={limit}; use a smaller block")
    g = generator_matrix(config.n, limit)
    overall, sub = _generator_rows(config, variant)
    return NestedCodeMatrices(h_t=parity_check_from_generator(g[overall]),
                              h_s=parity_check_from_generator(g[sub]),
                              variant=variant)


def equivocation_given_erasures(matrices: NestedCodeMatrices, erased) -> int:
    """``H(M | Z)`` in bits for one eavesdropper erasure pattern.

    ``erased`` is a list of erased positions or a boolean mask of length N.
    """
    rank_t, rank_s = matrices.erased_ranks(erased)
    return rank_s - rank_t


def brute_force_equivocation(config: WiretapCodeConfig, erased) -> float:
    """``H(M | Z)`` in bits by enumerating every (message, random) pair.

    The erasure pattern is fixed; the observation is the codeword restricted
    to the unerased positions.  Messages and random bits are uniform and the
    frozen vector is the one attached to ``config``.
    """
    width = config.k + config.set_random.size
    if width > ENUMERATION_LIMIT:
        raise CapacityError(f"enumeration over 2**{width} inputs exceeds 2**{ENUMERATION_LIMIT}")
    erased_idx = _erased_indices(erased, config.N)
    seen = np.setdiff1d(np.arange(config.N), erased_idx)

    total = 1 << width
    counter = np.arange(total, dtype=np.int64)
    bits = ((counter[:, None] >> np.arange(width)) & 1).astype(np.uint8)
    msg, rnd = bits[:, :config.k], bits[:, config.k:]
    x = polar_encode(assemble_u(config, msg, rnd), config.n)

    msg_id = counter & ((1 << config.k) - 1)
    if seen.size:
        _, obs_id = np.unique(x[:, seen], axis=0, return_inverse=True)
        obs_id = obs_id.reshape(-1).astype(np.int64)
    else:
        obs_id = np.zeros(total, dtype=np.int64)
    joint, joint_counts = np.unique(obs_id * (1 << config.k) + msg_id, return_counts=True)
    obs_counts = np.bincount(obs_id)
    per_obs = obs_counts[joint >> config.k] if config.k else obs_counts[joint]
    p_joint = joint_counts / total
    return float(np.sum(p_joint * np.log2(per_obs / joint_counts)))


@dataclass(frozen=True)
class EquivocationReport:
    """Equivocation and leakage rates of one code, averaged over erasure patterns.

    ``rate`` is the code's message rate ``k / N``; ``target_rate`` is the rate
    that was requested from the construction.
    """

    rate: float
    re_mean: float
    leak_mean: float
    trials: int
    re_stderr: float
    target_rate: float
    k: int
    N: int


def measure_equivocation(config: WiretapCodeConfig, trials: int, rng: np.random.Generator,
                         variant: str = HOMOGENEOUS, target_rate: float | None = None) -> EquivocationReport:
    """Average equivocation rate over ``trials`` erasure patterns of the wiretap BEC."""
    if trials < 1:
        raise ValueError("trials must be positive")
    big_n = config.N
    rate = config.rate
    if config.k == 0:
        values = np.zeros(trials)
    else:
        matrices = build_nested_matrices(config, variant)
        patterns = rng.random((trials, big_n)) < config.eps_w
        values = np.array([equivocation_given_erasures(matrices, p) for p in patterns], dtype=float)
    re = values / big_n
    re_mean = float(re.mean())
    stderr = float(re.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    return EquivocationReport(rate=rate, re_mean=re_mean, leak_mean=rate - re_mean, trials=trials,
                              re_stderr=stderr, target_rate=rate if target_rate is None else target_rate,
                              k=config.k, N=big_n)


def leakage_sweep(n: int, eps_m: float, eps_w: float, rates, trials: int = 1000, seed: int = 0,
                  variant: str = HOMOGENEOUS, sizing: str = "capacity",
                  beta: float = 0.3) -> list[EquivocationReport]:
    """Equivocation and leakage across a sweep of message rates.

    For each rate a rate-targeted code is built, a uniform frozen vector is
    drawn once and kept, and ``trials`` wiretap erasure patterns are sampled.
    Random streams derive from ``seed`` and the rate only (see
    :mod:`polar_wiretap.seeding`), so a row does not depend on the other
    rates in the list.
    """
    reports = []
    for rate in rates:
        config = select_index_sets(n, eps_m, eps_w, RateTargeted(rate, beta, sizing))
        config = assign_frozen_vector(config, derive_rng(seed, rate_key(rate), FROZEN))
        reports.append(measure_equivocation(config, trials, derive_rng(seed, rate_key(rate), CHANNEL),
                                            variant=variant, target_rate=rate))
    return reports
