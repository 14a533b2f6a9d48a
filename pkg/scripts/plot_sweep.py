#!/usr/bin/env python3
"""Plot a sweep CSV produced by ``bcsjj sweep``.

Usage: plot_sweep.py SWEEP_CSV [OUTPUT_PNG]

Plots the pair current against the swept value; failed points (if any) are
marked separately.
"""

import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def main(argv):
    if len(argv) < 2:
        print(__doc__, file=sys.stderr)
        return 2
    path = argv[1]
    out = argv[2] if len(argv) > 2 else "sweep.png"
    values, currents, failed_values = [], [], []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            v = float(row["value"])
            if row.get("failed", "0") == "1":
                failed_values.append(v)
                continue
            values.append(v)
            currents.append(float(row["josephson"]))
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(values, currents, "o-", markersize=3, label="pair current")
    if failed_values:
        for v in failed_values:
            ax.axvline(v, color="red", alpha=0.3)
        ax.plot([], [], color="red", alpha=0.3, label="not converged")
    ax.axhline(0.0, color="gray", linewidth=0.5)
    ax.set_xlabel("swept value")
    ax.set_ylabel("pair current density")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
