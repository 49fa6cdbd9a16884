"""Command-line harness for constructions, round trips and Monte Carlo sweeps.

Subcommands: ``construct``, ``roundtrip``, ``reliability``, ``equivocation``.
Parameters come from an optional JSON config file (``--config``) with keys
``n, eps_m, eps_w, mode, rate, rates, beta, sizing, trials, seed, variant,
frozen_bits, frozen_seed``; command-line flags override file values.

Exit codes: 0 success, 2 validation error, 3 capacity/limit error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from decimal import Decimal
from pathlib import Path

import numpy as np

from .codec import block_error_rate, decode_bob, encode_secret
from .construction import (
    DEFAULT_BETA,
    RateTargeted,
    Threshold,
    assign_frozen_vector,
    config_to_dict,
    secrecy_capacity,
    select_index_sets,
    threshold_value,
)
from .exceptions import CapacityError
from .polar import DEFAULT_ANALYSIS_LIMIT, ERASED, BecChannel, transmit_bec
from .secrecy import VARIANTS, leakage_sweep, measure_equivocation
from .seeding import CHANNEL, FROZEN, PAYLOAD, derive_rng, rate_key

EQUIVOCATION_HEADER = ["rate", "re_mean", "leak_mean", "re_stderr", "trials"]
RELIABILITY_HEADER = ["rate", "p_hat", "bound", "trials"]


@dataclass
class ExperimentSpec:
    n: int
    eps_m: float
    eps_w: float
    mode: str = "threshold"
    rates: tuple = ()
    beta: float = DEFAULT_BETA
    sizing: str = "capacity"
    trials: int = 1000
    seed: int = 0
    variant: str = "homogeneous"
    out: str | None = None
    frozen_bits: str | None = None
    frozen_seed: int | None = None

    def validate(self):
        if self.n < 0:
            raise ValueError(f"n must be non-negative, got {self.n}")
        BecChannel(self.eps_m)
        BecChannel(self.eps_w)
        secrecy_capacity(self.eps_m, self.eps_w)
        if self.mode not in ("threshold", "rate"):
            raise ValueError(f"mode must be 'threshold' or 'rate', got {self.mode!r}")
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}")
        for r in self.rates:
            select_index_sets(self.n, self.eps_m, self.eps_w, self.mode_for(r))

    def mode_for(self, rate: float):
        if self.mode == "threshold":
            return Threshold(self.beta)
        return RateTargeted(rate, self.beta, self.sizing)

    def build(self, rate: float):
        """Configuration with its frozen vector for one rate."""
        config = select_index_sets(self.n, self.eps_m, self.eps_w, self.mode_for(rate))
        if self.frozen_bits is not None:
            bits = np.array([int(c) for c in self.frozen_bits.strip()], dtype=np.int64)
            return assign_frozen_vector(config, bits)
        if self.frozen_seed is not None:
            return assign_frozen_vector(config, np.random.default_rng(self.frozen_seed))
        return assign_frozen_vector(config, derive_rng(self.seed, self._key(rate), FROZEN))

    def _key(self, rate: float) -> int:
        return rate_key(rate) if self.mode == "rate" else 0


def _parse_rates(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    return tuple(float(t) for t in text.split(","))


def _spec_from_args(args) -> ExperimentSpec:
    values = {}
    if args.config:
        values.update(json.loads(Path(args.config).read_text(encoding="utf-8")))
    if "rate" in values and "rates" not in values:
        values["rates"] = [values.pop("rate")]
    values.pop("rate", None)
    flags = {
        "n": args.n, "eps_m": args.eps_m, "eps_w": args.eps_w, "mode": args.mode,
        "beta": args.beta, "sizing": args.sizing, "trials": args.trials, "seed": args.seed,
        "variant": args.variant, "out": args.out,
    }
    values.update({k: v for k, v in flags.items() if v is not None})
    if args.rates is not None:
        values["rates"] = _parse_rates(args.rates)
    elif args.rate is not None:
        values["rates"] = (args.rate,)
    for key in ("n", "eps_m", "eps_w"):
        if key not in values:
            raise ValueError(f"missing required parameter --{key.replace('_', '-')}")
    values["rates"] = tuple(float(r) for r in values.get("rates", ()))
    if "mode" not in values:
        values["mode"] = "rate" if values["rates"] else "threshold"
    known = ExperimentSpec.__dataclass_fields__
    unknown = set(values) - set(known)
    if unknown:
        raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
    spec = ExperimentSpec(**values)
    spec.n, spec.trials, spec.seed = int(spec.n), int(spec.trials), int(spec.seed)
    spec.eps_m, spec.eps_w, spec.beta = float(spec.eps_m), float(spec.eps_w), float(spec.beta)
    spec.validate()
    return spec


def _single_rate(spec: ExperimentSpec) -> float:
    if spec.mode == "rate" and not spec.rates:
        raise ValueError("rate mode needs a rate")
    return spec.rates[0] if spec.rates else 0.0


def _bits(v) -> str:
    return "".join(str(int(b)) for b in v)


def _to_hex(bits) -> str:
    k = len(bits)
    if k == 0:
        return ""
    return format(int(_bits(bits), 2), f"0{-(-k // 4)}x")


def _from_hex(text: str, k: int) -> np.ndarray:
    text = text.strip().lower()
    if text.startswith("0x"):
        text = text[2:]
    if len(text) != -(-k // 4):
        raise ValueError(f"message must have {-(-k // 4)} hex digits for k={k}, got {len(text)}")
    value = int(text, 16) if text else 0
    if value >> k:
        raise ValueError(f"message value does not fit in k={k} bits")
    return np.array([(value >> (k - 1 - i)) & 1 for i in range(k)], dtype=np.uint8)


def cmd_construct(spec: ExperimentSpec, stream) -> None:
    rate = _single_rate(spec)
    config = spec.build(rate)
    z_m, z_w = config.z_main, config.z_wire
    good_m, good_w = config.set_good_main, config.set_random
    lines = [
        f"N = {config.N}",
        f"|A_m| = {good_m.size}",
        f"|A_w| = {good_w.size}",
        f"k = {config.k}",
        f"R = {config.rate:.4f}",
        f"C_s = {secrecy_capacity(spec.eps_m, spec.eps_w):.4f}",
        f"threshold = {threshold_value(spec.n, spec.beta):.6g} (beta = {spec.beta})",
        f"max z_m over A_m = {z_m[good_m].max() if good_m.size else 0.0:.6g}",
        f"max z_w over A_w = {z_w[good_w].max() if good_w.size else 0.0:.6g}",
    ]
    stream.write("\n".join(lines) + "\n")
    if spec.out:
        d = config_to_dict(config)
        Path(spec.out).write_text(json.dumps(d, indent=2) + "\n", encoding="utf-8")


def cmd_roundtrip(spec: ExperimentSpec, message_hex: str | None, stream) -> None:
    rate = _single_rate(spec)
    config = spec.build(rate)
    payload = derive_rng(spec.seed, spec._key(rate), PAYLOAD)
    if message_hex is None:
        message = payload.integers(0, 2, size=config.k, dtype=np.uint8)
    else:
        message = _from_hex(message_hex, config.k)
    record = encode_secret(message, config, payload)
    received = transmit_bec(record.codeword, BecChannel(spec.eps_m),
                            derive_rng(spec.seed, spec._key(rate), CHANNEL))
    result = decode_bob(received, config)
    ok = bool(np.array_equal(result.message, message) and np.array_equal(result.random_bits, record.random_bits))
    shown = "".join("?" if s == ERASED else str(int(s)) for s in received)
    lines = [
        f"u        = {_bits(record.u_word)}",
        f"codeword = {_bits(record.codeword)}",
        f"received = {shown}",
        f"erasures = {int((received == ERASED).sum())}",
        f"message  = {_to_hex(message)}",
        f"decoded  = {_to_hex(result.message)}",
        f"consistent = {str(result.consistent).lower()}",
        f"success  = {str(ok).lower()}",
    ]
    stream.write("\n".join(lines) + "\n")


def _writer(stream):
    return csv.writer(stream, lineterminator="\n")


def cmd_reliability(spec: ExperimentSpec, stream) -> None:
    w = _writer(stream)
    w.writerow(RELIABILITY_HEADER)
    rates = spec.rates if spec.mode == "rate" else (_single_rate(spec),)
    for rate in rates:
        config = spec.build(rate)
        p_hat, bound = block_error_rate(config, spec.trials, derive_rng(spec.seed, spec._key(rate), CHANNEL))
        w.writerow([f"{config.rate:.4f}", f"{p_hat:.4f}", f"{bound:.6g}", spec.trials])


def cmd_equivocation(spec: ExperimentSpec, stream) -> None:
    if spec.n > DEFAULT_ANALYSIS_LIMIT:
        raise CapacityError(f"n={spec.n} exceeds the analysis limit n<={DEFAULT_ANALYSIS_LIMIT}; "
                            "choose a smaller n")
    if spec.mode == "rate" and spec.frozen_bits is None and spec.frozen_seed is None:
        reports = leakage_sweep(spec.n, spec.eps_m, spec.eps_w, spec.rates, spec.trials, spec.seed,
                                spec.variant, spec.sizing, spec.beta)
    else:
        rates = spec.rates if spec.mode == "rate" else (_single_rate(spec),)
        reports = [measure_equivocation(spec.build(r), spec.trials,
                                        derive_rng(spec.seed, spec._key(r), CHANNEL),
                                        variant=spec.variant, target_rate=r) for r in rates]
    w = _writer(stream)
    w.writerow(EQUIVOCATION_HEADER)
    for rep in reports:
        rate_s, re_s = f"{rep.rate:.4f}", f"{rep.re_mean:.4f}"
        leak_s = str(Decimal(rate_s) - Decimal(re_s))
        w.writerow([rate_s, re_s, leak_s, f"{rep.re_stderr:.4f}", rep.trials])


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file; flags override its values")
    common.add_argument("--n", type=int, help="block exponent, N = 2**n")
    common.add_argument("--eps-m", type=float, help="main-channel erasure probability")
    common.add_argument("--eps-w", type=float, help="wiretap-channel erasure probability")
    common.add_argument("--mode", choices=("threshold", "rate"),
                        help="defaults to 'rate' when a rate is given, else 'threshold'")
    common.add_argument("--rate", type=float, help="target message rate (rate mode)")
    common.add_argument("--rates", help="comma-separated target rates; overrides --rate")
    common.add_argument("--beta", type=float, help="polarization exponent in (0, 1/2)")
    common.add_argument("--sizing", choices=("capacity", "threshold"),
                        help="how rate mode sizes the good sets")
    common.add_argument("--trials", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--variant", choices=VARIANTS)
    common.add_argument("--out", help="output file (config for construct, CSV otherwise)")

    parser = argparse.ArgumentParser(prog="polar-wiretap", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("construct", parents=[common], help="select index sets and print a summary")
    rt = sub.add_parser("roundtrip", parents=[common], help="encode, transmit and decode one message")
    rt.add_argument("--message", help="message as hex, ceil(k/4) digits; random if omitted")
    sub.add_parser("reliability", parents=[common], help="block error rate sweep (CSV)")
    sub.add_parser("equivocation", parents=[common], help="equivocation / leakage sweep (CSV)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        spec = _spec_from_args(args)
        if args.command == "construct":
            cmd_construct(spec, sys.stdout)
            return 0
        if args.command == "roundtrip":
            cmd_roundtrip(spec, args.message, sys.stdout)
            return 0
        run = cmd_reliability if args.command == "reliability" else cmd_equivocation
        if spec.out:
            buf = io.StringIO()
            run(spec, buf)
            Path(spec.out).write_text(buf.getvalue(), encoding="utf-8", newline="\n")
        else:
            run(spec, sys.stdout)
        return 0
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
