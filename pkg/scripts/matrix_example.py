"""Sample the geodesic between the two 2x2 example spectra and summarize it.

Besides the surface CSV and heatmaps produced by ``specgeo example matrix``,
prints the distance, the determinant log-linearity error along the path and
the divergences between the endpoints on a grid fine enough for D2.

    python scripts/matrix_example.py --out-dir results/matrix
"""
import argparse
from pathlib import Path

import numpy as np

from specgeo.cli import main
from specgeo.divergences import Measure, divergence
from specgeo.examples import matrix_example
from specgeo.geometry import geodesic_distance, psd_geodesic
from specgeo.psd import FrequencyGrid


def summarize(n):
    f0, f1 = matrix_example(FrequencyGrid(n))
    det0, det1 = (np.linalg.det(f.values).real for f in (f0, f1))
    worst = 0.0
    for tau in np.linspace(0, 1, 11):
        d = np.linalg.det(psd_geodesic(f0, f1, tau).values).real
        worst = max(worst, np.max(np.abs(d / (det0 ** (1 - tau) * det1**tau) - 1)))
    print(f"N={n}: geodesic distance {geodesic_distance(f0, f1):.10f}")
    print(f"N={n}: max relative det log-linearity error {worst:.2e}")
    for m in Measure:
        print(f"N={n}: {m.value:>9s} {divergence(m.value, f0, f1).value:.10f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", default="results/matrix")
    ap.add_argument("--n", type=int, default=512)
    ap.add_argument("--summary-n", type=int, default=2048, help="grid for the divergence summary")
    args = ap.parse_args()
    Path(args.out_dir).mkdir(parents=True, exist_ok=True)
    main(["example", "matrix", "--out-dir", args.out_dir, "--n", str(args.n), "--svg"])
    summarize(args.summary_n)
