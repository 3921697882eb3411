#!/usr/bin/env python3
"""Per-step wall-time curves of the online learner vs the batch baseline.

Input schema: step,nrrls_nanos,batch_nanos (the bench command's output).
With --summary pointing at the matching bench_summary.json, the chart is
annotated with the decile ratios the benchmark computed.

Usage: plots/plot_timing.py --in bench.csv --out bench.svg
       [--summary bench_summary.json] [--png]
"""

import argparse
import json
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from csv_tools import MissingColumnError, output_path, read_columns

REQUIRED = ("step", "nrrls_nanos", "batch_nanos")


def render(in_path, out_path, summary_path=None, raster=False):
    cols = read_columns(in_path, REQUIRED)
    step = cols["step"]

    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(step, cols["batch_nanos"] / 1e6, lw=0.7, color="#c44e52",
            alpha=0.8, label="batch recompute")
    ax.plot(step, cols["nrrls_nanos"] / 1e6, lw=0.7, color="#4c72b0",
            alpha=0.8, label="online step")
    ax.set_yscale("log")
    ax.set_xlabel("training samples")
    ax.set_ylabel("step time (ms)")
    ax.set_title("Per-step training cost")
    ax.legend(loc="upper left")
    if summary_path:
        summary = json.loads(open(summary_path, "r", encoding="utf-8").read())
        ax.annotate(
            "last/first decile ratio: "
            f"online {summary['nrrls']['ratio']:.2f}, "
            f"batch {summary['batch']['ratio']:.1f}",
            xy=(0.02, 0.02), xycoords="axes fraction", fontsize=9)
    fig.tight_layout()
    target = output_path(out_path, raster)
    fig.savefig(target)
    plt.close(fig)
    return target


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--in", dest="in_path", required=True, help="bench.csv path")
    ap.add_argument("--out", dest="out_path", required=True, help="image path")
    ap.add_argument("--summary", help="bench_summary.json for ratio annotations")
    ap.add_argument("--png", action="store_true", help="raster output fallback")
    args = ap.parse_args(argv)
    try:
        target = render(args.in_path, args.out_path, summary_path=args.summary,
                        raster=args.png)
    except (MissingColumnError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {target}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
