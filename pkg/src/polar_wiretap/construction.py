"""Index-set selection for the nested wiretap polar code.

Each construction splits ``{0, ..., N-1}`` into three disjoint sets:

* message indices, good for the legitimate receiver and bad for the
  eavesdropper,
* random indices, good for both, carrying uniform dummy bits,
* frozen indices, bad for the legitimate receiver, carrying a fixed vector
  known to everyone.
"""

from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .exceptions import DegradednessError, InfeasibleRateError
from .gf2 import as_bits
from .polar import BecChannel, bhattacharyya_bec

DEFAULT_BETA = 0.3


@dataclass(frozen=True)
class Threshold:
    """Good sets are ``{i : z[i] <= 2**(-N**beta) / N}`` for each channel."""

    beta: float = DEFAULT_BETA

    def __post_init__(self):
        if not 0.0 < self.beta < 0.5:
            raise ValueError(f"beta must lie in (0, 1/2), got {self.beta}")


@dataclass(frozen=True)
class RateTargeted:
    """Construction hitting a prescribed message rate ``k = ceil(rate * N)``.

    ``sizing="capacity"`` (default) takes the ``floor(N * C_m)`` most reliable
    indices for the legitimate receiver as its good set and, inside it, the
    ``floor(N * C_w)`` most reliable indices for the eavesdropper.  Message
    bits fill the receiver-only part first (most reliable first) and then
    spill into the shared part starting from the index worst for the
    eavesdropper; whatever is left of the shared part carries random bits.

    ``sizing="threshold"`` fixes the random set by the threshold rule with
    ``beta`` and puts the message on the ``k`` remaining indices of
    smallest main-channel parameter.  At moderate block lengths the
    threshold set covers only a fraction of the eavesdropper's capacity and
    most of the message leaks.
    """

    rate: float
    beta: float = DEFAULT_BETA
    sizing: str = "capacity"

    def __post_init__(self):
        if not 0.0 <= self.rate < 1.0:
            raise ValueError(f"rate must lie in [0, 1), got {self.rate}")
        if not 0.0 < self.beta < 0.5:
            raise ValueError(f"beta must lie in (0, 1/2), got {self.beta}")
        if self.sizing not in ("capacity", "threshold"):
            raise ValueError(f"unknown sizing {self.sizing!r}")


def _index_array(values) -> np.ndarray:
    return np.sort(np.asarray(values, dtype=np.int64).reshape(-1))


@dataclass(frozen=True, eq=False)
class WiretapCodeConfig:
    n: int
    eps_m: float
    eps_w: float
    set_message: np.ndarray
    set_random: np.ndarray
    set_frozen: np.ndarray
    mode: Threshold | RateTargeted = field(default_factory=Threshold)
    frozen_vector: np.ndarray | None = None

    def __post_init__(self):
        for name in ("set_message", "set_random", "set_frozen"):
            arr = _index_array(getattr(self, name))
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        combined = np.concatenate([self.set_message, self.set_random, self.set_frozen])
        if combined.size != self.N or not np.array_equal(np.sort(combined), np.arange(self.N)):
            raise ValueError("message, random and frozen sets must partition range(N)")
        if self.frozen_vector is not None:
            fv = as_bits(self.frozen_vector, self.set_frozen.size)
            fv.setflags(write=False)
            object.__setattr__(self, "frozen_vector", fv)

    @property
    def N(self) -> int:
        return 1 << self.n

    @property
    def k(self) -> int:
        return int(self.set_message.size)

    @property
    def rate(self) -> float:
        return self.k / self.N

    @property
    def beta(self) -> float:
        return self.mode.beta

    @property
    def set_good_main(self) -> np.ndarray:
        """Indices decoded by the legitimate receiver (message and random)."""
        return np.union1d(self.set_message, self.set_random)

    @property
    def z_main(self) -> np.ndarray:
        return bhattacharyya_bec(self.eps_m, self.n)

    @property
    def z_wire(self) -> np.ndarray:
        return bhattacharyya_bec(self.eps_w, self.n)

    def with_frozen_vector(self, vector) -> WiretapCodeConfig:
        return dataclasses.replace(self, frozen_vector=vector)


def _check_pair(eps_m: float, eps_w: float):
    BecChannel(eps_m)
    BecChannel(eps_w)
    if eps_w < eps_m:
        raise DegradednessError(
            f"wiretap erasure probability {eps_w} is below the main channel's {eps_m}; "
            "the wiretap channel must be degraded")


def secrecy_capacity(eps_m: float, eps_w: float) -> float:
    """``C_m - C_w`` for a degraded BEC pair, i.e. ``eps_w - eps_m``."""
    _check_pair(eps_m, eps_w)
    return (1.0 - eps_m) - (1.0 - eps_w)


def threshold_value(n: int, beta: float) -> float:
    """The good-channel threshold ``2**(-N**beta) / N``."""
    big_n = 1 << n
    return 2.0 ** (-(big_n ** beta)) / big_n


def _by_value(z: np.ndarray, idx, descending: bool = False) -> np.ndarray:
    idx = np.asarray(idx, dtype=np.int64)
    key = -z[idx] if descending else z[idx]
    # lexsort: last key is primary; ties go to the lower index
    return idx[np.lexsort((idx, key))]


def message_length(rate: float, big_n: int) -> int:
    return math.ceil(round(rate * big_n, 9))


def select_index_sets(n: int, eps_m: float, eps_w: float,
                      mode: Threshold | RateTargeted | None = None) -> WiretapCodeConfig:
    """Choose message, random and frozen indices for a degraded BEC pair.

    The returned configuration has no frozen vector yet; see
    :func:`assign_frozen_vector`.
    """
    _check_pair(eps_m, eps_w)
    if mode is None:
        mode = Threshold()
    big_n = 1 << n
    z_m = bhattacharyya_bec(eps_m, n)
    z_w = bhattacharyya_bec(eps_w, n)
    everything = np.arange(big_n)

    if isinstance(mode, Threshold):
        th = threshold_value(n, mode.beta)
        good_m = z_m <= th
        good_w = z_w <= th
        message = everything[good_m & ~good_w]
        random = everything[good_w]
        frozen = everything[~(good_m | good_w)]
    elif isinstance(mode, RateTargeted):
        k = message_length(mode.rate, big_n)
        if mode.sizing == "threshold":
            random = everything[z_w <= threshold_value(n, mode.beta)]
            if k + random.size > big_n:
                raise InfeasibleRateError(
                    f"rate {mode.rate}: {k} message bits plus {random.size} random bits exceed N={big_n}")
            rest = _by_value(z_m, np.setdiff1d(everything, random))
            message = rest[:k]
            frozen = rest[k:]
        else:
            budget_m = math.floor(round(big_n * (1.0 - eps_m), 9))
            budget_w = math.floor(round(big_n * (1.0 - eps_w), 9))
            good_m = _by_value(z_m, everything)[:budget_m]
            good_w = _by_value(z_w, good_m)[:budget_w]
            if k > good_m.size:
                raise InfeasibleRateError(
                    f"rate {mode.rate}: {k} message bits exceed the {good_m.size} "
                    f"good indices of the main channel (N={big_n})")
            main_only = _by_value(z_m, np.setdiff1d(good_m, good_w))
            shared = _by_value(z_w, good_w, descending=True)
            order = np.concatenate([main_only, shared])
            message = order[:k]
            random = np.setdiff1d(good_w, message)
            frozen = np.setdiff1d(everything, good_m)
            # unused receiver-only indices stay frozen
            frozen = np.union1d(frozen, np.setdiff1d(main_only, message))
    else:
        raise TypeError(f"unsupported construction mode {mode!r}")

    return WiretapCodeConfig(n=n, eps_m=eps_m, eps_w=eps_w, set_message=message,
                             set_random=random, set_frozen=frozen, mode=mode)


def assign_frozen_vector(config: WiretapCodeConfig, source) -> WiretapCodeConfig:
    """Attach a frozen vector.

    ``source`` is either an explicit bit vector of length ``|set_frozen|`` or a
    ``numpy.random.Generator`` from which uniform bits are drawn.
    """
    size = config.set_frozen.size
    if isinstance(source, np.random.Generator):
        vector = source.integers(0, 2, size=size, dtype=np.uint8)
    else:
        vector = as_bits(np.asarray(source).reshape(-1), size)
    return config.with_frozen_vector(vector)


# -- config files -------------------------------------------------------------

def config_to_dict(config: WiretapCodeConfig) -> dict:
    mode = config.mode
    out = {"n": config.n, "eps_m": config.eps_m, "eps_w": config.eps_w}
    if isinstance(mode, Threshold):
        out.update(mode="threshold", beta=mode.beta)
    else:
        out.update(mode="rate", rate=mode.rate, beta=mode.beta, sizing=mode.sizing)
    if config.frozen_vector is not None:
        out["frozen_bits"] = "".join(map(str, config.frozen_vector.tolist()))
    return out


def mode_from_dict(d: dict) -> Threshold | RateTargeted:
    kind = d.get("mode", "threshold")
    beta = float(d.get("beta", DEFAULT_BETA))
    if kind == "threshold":
        return Threshold(beta)
    if kind == "rate":
        if "rate" not in d:
            raise ValueError("rate mode requires a 'rate' key")
        return RateTargeted(float(d["rate"]), beta, d.get("sizing", "capacity"))
    raise ValueError(f"unknown construction mode {kind!r}")


def config_from_dict(d: dict) -> WiretapCodeConfig:
    """Rebuild a configuration; the frozen vector comes from ``frozen_bits``
    or is drawn from ``frozen_seed`` when present."""
    for key in ("n", "eps_m", "eps_w"):
        if key not in d:
            raise ValueError(f"config is missing {key!r}")
    config = select_index_sets(int(d["n"]), float(d["eps_m"]), float(d["eps_w"]), mode_from_dict(d))
    if "frozen_bits" in d:
        bits = [int(ch) for ch in str(d["frozen_bits"]).strip()]
        config = assign_frozen_vector(config, np.array(bits, dtype=np.int64))
    elif "frozen_seed" in d:
        config = assign_frozen_vector(config, np.random.default_rng(int(d["frozen_seed"])))
    return config


def save_config(config: WiretapCodeConfig, path) -> None:
    Path(path).write_text(json.dumps(config_to_dict(config), indent=2) + "\n", encoding="utf-8")


def load_config(path) -> WiretapCodeConfig:
    return config_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
