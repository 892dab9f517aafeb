"""Write normalized trade-off curves for several n and the (5,4,4) dominance table.

    python scripts/reproduce_tradeoff.py --out results/ [--ns 4 5 6 7] [--beta-max 12]

Produces curves_n{N}.csv (same columns as `regenbound bounds`) and dominance_544.csv.
With matplotlib installed, --plot also renders curves_n{N}.png.
"""

import argparse
import csv
from pathlib import Path

from regenbound import bounds
from regenbound.cli import CSV_FIELDS


def write_curves(n: int, out: Path) -> Path:
    path = out / f"curves_n{n}.csv"
    with path.open("w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=CSV_FIELDS)
        w.writeheader()
        for curve in bounds.all_curves(n):
            w.writerows(curve.to_rows())
    return path


def write_dominance(beta_max: int, out: Path) -> tuple[Path, int, int]:
    rows = bounds.dominance_grid(beta_max)
    path = out / "dominance_544.csv"
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["alpha", "beta", "theorem1", "sassenkum", "duursma", "strict"])
        for a, b, t1, sk, du in rows:
            w.writerow([a, b, t1, sk, du, int(t1 < min(sk, du))])
    strict = sum(t1 < min(sk, du) for _, _, t1, sk, du in rows)
    violations = sum(t1 > min(sk, du) for _, _, t1, sk, du in rows)
    return path, strict, violations


def plot_curves(n: int, out: Path) -> Path:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5, 4))
    for curve in bounds.all_curves(n):
        xs = [float(x) for x, _ in curve.points]
        ys = [float(y) for _, y in curve.points]
        style = "o" if curve.label == "achievable" else "-"
        ax.plot(xs, ys, style, label=curve.label, markersize=4)
    ax.set_xlabel("alpha / B")
    ax.set_ylabel("beta / B")
    ax.set_title(f"n = {n}, k = d = n-1")
    ax.legend()
    path = out / f"curves_n{n}.png"
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--ns", type=int, nargs="+", default=[4, 5, 6, 7])
    ap.add_argument("--beta-max", type=int, default=12)
    ap.add_argument("--plot", action="store_true")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    for n in args.ns:
        path = write_curves(n, args.out)
        report = bounds.region_match(n)
        print(f"n={n}: {path}  region_match={'pass' if report.passed else 'FAIL'}")
        for x, y in bounds.achievable_points(n):
            print(f"    ({x}, {y})")
        if args.plot:
            print(f"    plot: {plot_curves(n, args.out)}")

    path, strict, violations = write_dominance(args.beta_max, args.out)
    print(f"(5,4,4) dominance: {path}  strictly tighter at {strict} points, violations {violations}")


if __name__ == "__main__":
    main()
