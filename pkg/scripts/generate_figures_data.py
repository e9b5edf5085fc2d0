#!/usr/bin/env python3
"""Run every preset sweep and drop its CSV into results/.

The CSVs are the input contract of the figures package (frontend/);
regenerate them after any change to the simulation code.
"""

import argparse
import pathlib
import sys
import time

from irsdm.sweep import emit_csv, load_config, run_sweep

PRESETS = (
    "fig2_sr_vs_ns",
    "fig3_sr_vs_snr",
    "fig4_sr_vs_dab",
    "fig5to7_sr_vs_theta_cm",
    "fig8_mrt_variants",
    "fig9_flops",
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--threads", type=int, default=4)
    parser.add_argument("--only", nargs="*", choices=PRESETS, default=None)
    parser.add_argument(
        "--out-dir", default=None, help="output directory (default: <repo>/results)"
    )
    args = parser.parse_args()

    root = pathlib.Path(__file__).resolve().parent.parent
    out_dir = pathlib.Path(args.out_dir) if args.out_dir else root / "results"
    out_dir.mkdir(parents=True, exist_ok=True)

    for preset in args.only or PRESETS:
        cfg = load_config(str(root / "configs" / f"{preset}.yaml"))
        out = out_dir / f"{preset}.csv"
        start = time.perf_counter()
        emit_csv(run_sweep(cfg, threads=args.threads), str(out))
        print(f"{out.name}: {time.perf_counter() - start:.1f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
