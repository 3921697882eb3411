#!/usr/bin/env python3
"""Decision boundaries from a demo score grid, drawn over the sample scatter.

Input schema: x1,x2,ls_score,ter_score on a dense rectangular grid (the
demo2d command's demo_grid_order{r}.csv). The zero level set of each score
column is drawn as a contour; --points adds the demo_points.csv scatter
(x1,x2,y).

Usage: plots/plot_boundary.py --in demo_grid_order1.csv --out boundary.svg
       [--points demo_points.csv] [--png]
"""

import argparse
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from csv_tools import MissingColumnError, output_path, read_columns

REQUIRED = ("x1", "x2", "ls_score", "ter_score")


def _pivot(cols):
    """Reshape the row-major grid columns into 2-d arrays."""
    x1 = np.unique(cols["x1"])
    x2 = np.unique(cols["x2"])
    if x1.size * x2.size != cols["x1"].size:
        raise MissingColumnError(
            f"grid is not rectangular: {x1.size} x {x2.size} != {cols['x1'].size}"
        )
    shape = (x1.size, x2.size)
    return x1, x2, cols["ls_score"].reshape(shape), cols["ter_score"].reshape(shape)


def render(in_path, out_path, points_path=None, raster=False):
    cols = read_columns(in_path, REQUIRED)
    x1, x2, ls, ter = _pivot(cols)

    fig, ax = plt.subplots(figsize=(5.5, 5.5))
    ax.contour(x1, x2, ls.T, levels=[0.0], colors="#c44e52",
               linestyles="--", linewidths=1.6)
    ax.contour(x1, x2, ter.T, levels=[0.0], colors="#4c72b0", linewidths=1.6)
    ax.plot([], [], color="#c44e52", linestyle="--", label="plain fit")
    ax.plot([], [], color="#4c72b0", label="rebalanced fit")

    if points_path:
        pts = read_columns(points_path, ("x1", "x2", "y"))
        neg = pts["y"] < 0
        ax.scatter(pts["x1"][neg], pts["x2"][neg], marker="s", s=45,
                   facecolor="none", edgecolor="#222222", label="negative")
        ax.scatter(pts["x1"][~neg], pts["x2"][~neg], marker="o", s=38,
                   color="#888888", alpha=0.8, label="positive")

    ax.set_xlim(x1.min(), x1.max())
    ax.set_ylim(x2.min(), x2.max())
    ax.set_xlabel("$x_1$")
    ax.set_ylabel("$x_2$")
    ax.set_title("Zero-level decision boundaries")
    ax.legend(loc="lower right", fontsize=8)
    fig.tight_layout()
    target = output_path(out_path, raster)
    fig.savefig(target)
    plt.close(fig)
    return target


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--in", dest="in_path", required=True, help="grid csv path")
    ap.add_argument("--out", dest="out_path", required=True, help="image path")
    ap.add_argument("--points", help="scatter csv (x1,x2,y)")
    ap.add_argument("--png", action="store_true", help="raster output fallback")
    args = ap.parse_args(argv)
    try:
        target = render(args.in_path, args.out_path, points_path=args.points,
                        raster=args.png)
    except (MissingColumnError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {target}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
