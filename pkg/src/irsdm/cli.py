"""Command-line entry point: `irsdm sweep|flops|verify`."""

from __future__ import annotations

import argparse
import sys

from . import verify as verify_mod
from .sweep import emit_csv, flops_table, load_config, run_sweep


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="irsdm",
        description="Secrecy-rate beamforming sweeps for an IRS-aided network",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="run a configured parameter sweep")
    sweep.add_argument("--config", required=True, help="YAML experiment config")
    sweep.add_argument("--out", required=True, help="output CSV path")
    sweep.add_argument("--seed", type=int, default=None, help="override master seed")
    sweep.add_argument("--threads", type=int, default=1)

    flops = sub.add_parser("flops", help="tabulate FLOP counts of both methods")
    flops.add_argument("--na", type=int, required=True)
    flops.add_argument("--ns-list", type=int, nargs="+", required=True)
    flops.add_argument("--d1", type=int, required=True)
    flops.add_argument("--d2", type=int, required=True)
    flops.add_argument("--out", required=True)

    verify = sub.add_parser("verify", help="run the oracle property suite")
    verify.add_argument("--seed", type=int, default=12345)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "sweep":
            cfg = load_config(args.config)
            if args.seed is not None:
                cfg.master_seed = args.seed
            emit_csv(run_sweep(cfg, threads=args.threads), args.out)
        elif args.command == "flops":
            emit_csv(flops_table(args.na, args.ns_list, args.d1, args.d2), args.out)
        else:
            if not verify_mod.run_all(args.seed):
                return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
