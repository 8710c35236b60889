"""Van der Pol plot data for several mu, plus a PNG per mu when matplotlib is present.

    python3 scripts/vdp_figures.py --mu 1 3 5 --out out/vdp
"""
import argparse
import csv
from pathlib import Path

import numpy as np

from hhd_kit.report import write_vdp_casestudy
from hhd_kit.stability import Grid


def read_csv(path):
    with open(path) as fh:
        rows = list(csv.DictReader(fh))
    return rows


def plot(outdir: Path, mu: float, grid: Grid):
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        return None
    fig, ax = plt.subplots(figsize=(5, 5))
    sign = read_csv(outdir / "wdot_sign.csv")
    z = np.array([float(r["wdot"]) for r in sign]).reshape(grid.ny, grid.nx)
    xs, ys = grid.axes()
    ax.contour(xs, ys, z, levels=[0], colors="tab:red", linewidths=1)
    lines: dict = {}
    for r in read_csv(outdir / "levelsets.csv"):
        lines.setdefault(r["polyline"], []).append((float(r["x"]), float(r["y"])))
    for pts in lines.values():
        ax.plot(*np.array(pts).T, color="tab:blue", lw=0.8)
    for name, color in (("gamma.csv", "tab:green"), ("nullcline.csv", "tab:orange")):
        pts = np.array([[float(v) for v in r.values()] for r in read_csv(outdir / name)])
        if len(pts):
            ax.plot(pts[:, 0], pts[:, 1], color=color, lw=1.2)
    ax.set_xlim(grid.xmin, grid.xmax)
    ax.set_ylim(grid.ymin, grid.ymax)
    ax.set_title(f"mu = {mu:g}")
    path = outdir / "overlay.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--mu", type=float, nargs="+", default=[1.0, 3.0, 5.0])
    ap.add_argument("--levels", type=float, nargs="*", default=[-0.5, -1.0, -2.0])
    ap.add_argument("--grid", default="-4,4,-4,4,201,201")
    ap.add_argument("--out", default="out/vdp")
    args = ap.parse_args()
    grid = Grid.parse(args.grid)
    for mu in args.mu:
        outdir = Path(args.out) / f"mu_{mu:g}"
        files = write_vdp_casestudy(mu, grid, args.levels, outdir)
        png = plot(outdir, mu, grid)
        print(f"mu={mu:g}: {len(files)} files in {outdir}" + (f", {png.name}" if png else ""))


if __name__ == "__main__":
    main()
