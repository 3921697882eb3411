#!/usr/bin/env python3
"""Overlay the online and batch coefficient-norm trajectories of a trace.csv.

Input schema: step,nrrls_w_l2,batch_w_l2,rel_diff (the converge command's
output). The legend carries each series' mean +- std and the chart is
annotated with the maximum of the rel_diff column; the same value is
printed to stdout as ``max_gap=...`` for scripted checks.

Usage: plots/plot_convergence.py --in trace.csv --out trace.svg [--png]
"""

import argparse
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from csv_tools import MissingColumnError, output_path, read_columns

REQUIRED = ("step", "nrrls_w_l2", "batch_w_l2", "rel_diff")


def render(in_path, out_path, raster=False):
    cols = read_columns(in_path, REQUIRED)
    step = cols["step"]
    online = cols["nrrls_w_l2"]
    batch = cols["batch_w_l2"]
    max_gap = float(cols["rel_diff"].max())

    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(step, batch, lw=3.0, color="#c44e52", alpha=0.65,
            label=f"batch ({batch.mean():.4g} $\\pm$ {batch.std():.2g})")
    ax.plot(step, online, lw=1.2, color="#4c72b0", linestyle="--",
            label=f"online ({online.mean():.4g} $\\pm$ {online.std():.2g})")
    ax.set_xlabel("training samples")
    ax.set_ylabel(r"$\|w\|_2$")
    ax.set_title("Online vs batch coefficient-norm trajectory")
    ax.legend(loc="best")
    ax.annotate(f"max relative gap = {max_gap:.3e}",
                xy=(0.02, 0.02), xycoords="axes fraction", fontsize=9)
    fig.tight_layout()
    target = output_path(out_path, raster)
    fig.savefig(target)
    plt.close(fig)
    return target, max_gap


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--in", dest="in_path", required=True, help="trace.csv path")
    ap.add_argument("--out", dest="out_path", required=True, help="image path")
    ap.add_argument("--png", action="store_true", help="raster output fallback")
    args = ap.parse_args(argv)
    try:
        target, max_gap = render(args.in_path, args.out_path, raster=args.png)
    except (MissingColumnError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {target}")
    print(f"max_gap={max_gap:.17g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
