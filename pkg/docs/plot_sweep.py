"""Render a sweep CSV as the three-curve benchmark comparison.

Reads the output of ``copula-mi sweep --format csv`` and plots the
analytic mutual information (black), the KSG estimate (red), and the
copula-entropy estimate (blue) against rho, with one-standard-deviation
error bars on the estimated curves.

Requires matplotlib, which is deliberately not a dependency of the
package itself::

    pip install matplotlib
    python3 docs/plot_sweep.py sweep.csv --output sweep.png

Without --output the figure opens in an interactive window.
"""

from __future__ import annotations

import argparse
import csv
import sys

FIELDS = ("rho", "analytic_mi", "copent_mean", "copent_sd", "ksg_mean", "ksg_sd")


def read_sweep(path: str) -> dict[str, list[float]]:
    """Read a sweep CSV into column lists, skipping comment lines."""
    columns: dict[str, list[float]] = {name: [] for name in FIELDS}
    with open(path, newline="") as handle:
        rows = (r for r in csv.reader(handle) if r and not r[0].lstrip().startswith("#"))
        header = next(rows, None)
        if header is None or tuple(h.strip() for h in header) != FIELDS:
            raise SystemExit(f"{path}: expected header {','.join(FIELDS)}")
        for row in rows:
            if len(row) != len(FIELDS):
                raise SystemExit(f"{path}: malformed row {row!r}")
            for name, cell in zip(FIELDS, row):
                columns[name].append(float(cell))
    if not columns["rho"]:
        raise SystemExit(f"{path}: no data rows")
    return columns


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("csv_path", help="sweep CSV produced by 'copula-mi sweep'")
    parser.add_argument("--output", help="write the figure here instead of showing it")
    args = parser.parse_args(argv)

    import matplotlib

    if args.output:
        matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    data = read_sweep(args.csv_path)
    rho = data["rho"]

    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    ax.plot(rho, data["analytic_mi"], color="black", label="analytic")
    ax.errorbar(
        rho, data["ksg_mean"], yerr=data["ksg_sd"],
        color="red", marker="o", markersize=4, capsize=3, label="KSG",
    )
    ax.errorbar(
        rho, data["copent_mean"], yerr=data["copent_sd"],
        color="blue", marker="s", markersize=4, capsize=3, label="copula entropy",
    )
    ax.set_xlabel("correlation rho")
    ax.set_ylabel("mutual information (nats)")
    ax.set_title("Bivariate Gaussian benchmark")
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()

    if args.output:
        fig.savefig(args.output, dpi=150)
        print(f"wrote {args.output}")
    else:
        plt.show()
    return 0


if __name__ == "__main__":
    sys.exit(main())
