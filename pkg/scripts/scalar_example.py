"""Compare AR-coefficient, straight-line and geodesic interpolation of two AR(6) spectra.

Writes the PSD pair, log-spectrum tables, the root locus of the interpolated
AR polynomial and an admissibility summary, plus SVG plots.

    python scripts/scalar_example.py --out-dir results/scalar
"""
import argparse
import sys

from specgeo.cli import main

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", default="results/scalar")
    ap.add_argument("--n", type=int, default=512)
    args = ap.parse_args()
    sys.exit(main(["example", "scalar", "--out-dir", args.out_dir, "--n", str(args.n), "--svg"]))
