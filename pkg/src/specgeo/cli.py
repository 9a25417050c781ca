"""``specgeo`` command line interface.

Exit codes: 0 success, 2 input/validation error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import examples, svg
from .divergences import Measure, NumericalInconsistencyError, divergence
from .factorization import (
    FactorizationError,
    ar_denominator,
    factorize_matrix,
    factorize_scalar,
    factorization_residual,
    szego_kolmogorov_check,
)
from .geometry import geodesic_distance, psd_geodesic
from .hermitian import AsymmetryError, DomainError
from .io import PsdFormatError, read_psd, write_csv, write_factor, write_psd, write_text
from .psd import (
    FrequencyGrid,
    GridMismatchError,
    Inadmissible,
    ar_path_psd,
    ar_stability,
    ar_coefficient_path,
    linear_psd_path,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3


class InputError(Exception):
    pass


def parse_taus(text):
    """Comma-separated reals; fractions such as ``4/3`` are accepted."""
    try:
        return [float(Fraction(tok.strip())) for tok in text.split(",") if tok.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad --tau list {text!r}: {exc}") from None


def _fmt(value):
    if abs(value) < 5e-13:
        value = 0.0
    return f"{value:.12f}"


def cmd_divergence(args):
    f1, f2 = read_psd(args.f1), read_psd(args.f2)
    res = divergence(args.measure, f1, f2)
    print(_fmt(res.value))
    if args.per_frequency:
        details = res.details
        rows = [(th, float(v)) for th, v in zip(f1.grid.theta, details)]
        write_csv(args.per_frequency, ("theta", "integrand"), rows)
    return EXIT_OK


def _admissibility(f0, f1, taus, compare):
    entries = []
    if "linear" in compare:
        for t in taus:
            s = linear_psd_path(f0, f1, t)
            e = {"path": "linear", "tau": t, "admissible": not isinstance(s, Inadmissible)}
            if isinstance(s, Inadmissible):
                e["negative_frequencies"] = int(s.theta.size)
                e["min_eigenvalue"] = float(s.min_eigenvalue.min())
            entries.append(e)
    if "ar" in compare:
        if f0.m != 1:
            raise InputError("--compare ar needs scalar spectra (m = 1)")
        try:
            a0, a1 = ar_denominator(f0), ar_denominator(f1)
        except ValueError as exc:
            raise InputError(f"--compare ar: {exc}") from None
        for t in taus:
            s = ar_path_psd(a0, a1, t, f0.grid)
            rho = ar_stability(ar_coefficient_path(a0, a1, t))
            entries.append({
                "path": "ar",
                "tau": t,
                "admissible": not isinstance(s, Inadmissible),
                "max_root_modulus": rho,
            })
    return entries


def cmd_geodesic(args):
    f0, f1 = read_psd(args.f0), read_psd(args.f1)
    f0.check_compatible(f1)
    taus = parse_taus(args.tau)
    compare = {c.strip() for c in (args.compare or "").split(",") if c.strip()}
    unknown = compare - {"linear", "ar"}
    if unknown:
        raise InputError(f"unknown --compare path(s): {', '.join(sorted(unknown))}")
    out = Path(args.out_dir)
    index = []
    for i, t in enumerate(taus):
        name = f"geodesic_{i:03d}.psd"
        write_psd(out / name, psd_geodesic(f0, f1, t))
        index.append((i, t, name))
    write_csv(out / "taus.csv", ("index", "tau", "file"), index)
    d = geodesic_distance(f0, f1)
    write_text(out / "distance.txt", f"{d!r}\n")
    print(_fmt(d))
    if compare:
        report = _admissibility(f0, f1, taus, compare)
        write_text(out / "admissibility.json", json.dumps(report, indent=2) + "\n")
        for e in report:
            status = "admissible" if e["admissible"] else "INADMISSIBLE"
            print(f"{e['path']:>8s} tau={e['tau']:.6g}: {status}")
    return EXIT_OK


def _scalar_example(out, n, do_svg):
    ex = examples.scalar_example(FrequencyGrid(n))
    write_psd(out / "f0.psd", ex.f0)
    write_psd(out / "f1.psd", ex.f1)
    for path in examples.PATHS:
        write_csv(
            out / f"logspec_{path}.csv",
            ("tau", "theta", "log_abs_f", "admissible"),
            examples.log_spectrum_rows(ex, path),
        )
    locus = examples.root_locus_rows()
    write_csv(out / "root_locus.csv", ("tau", "index", "re", "im", "modulus"), locus)
    report = ex.report()
    write_text(out / "admissibility.json", json.dumps(report, indent=2) + "\n")
    for e in report:
        if not e["admissible"]:
            print(f"inadmissible: {e['path']} at tau={e['tau']:.6g} ({e['reason']})")
    if do_svg:
        theta = ex.f0.grid.theta
        half = theta >= 0
        for path in examples.PATHS:
            series = []
            for tau, s in zip(ex.taus, ex.samples[path]):
                if isinstance(s, Inadmissible):
                    if path != "linear":
                        continue
                    v = (1 - tau) * ex.f0.values[:, 0, 0].real + tau * ex.f1.values[:, 0, 0].real
                    pos = np.where(v > 0, np.log(np.abs(v)), np.nan)
                    neg = np.where(v <= 0, np.log(np.abs(v)), np.nan)
                    series.append((f"tau={tau:.3g}", theta[half], pos[half], False))
                    series.append((f"tau={tau:.3g} (|log|, f<0)", theta[half], neg[half], True))
                else:
                    series.append((f"tau={tau:.3g}", theta[half], np.log(s.values[half, 0, 0].real), False))
            write_text(out / f"logspec_{path}.svg", svg.line_plot(series, f"log f, {path} path", "theta", "log f"))
        pts = {}
        for tau, _, re, im, _ in locus:
            pts.setdefault("a_tau roots", []).append(re + 1j * im)
        write_text(out / "root_locus.svg", svg.scatter_plot([("a_tau roots, tau in [0,1]", pts["a_tau roots"])]))


def _matrix_example(out, n, n_tau, do_svg):
    f0, f1 = examples.matrix_example(FrequencyGrid(n))
    write_psd(out / "f0.psd", f0)
    write_psd(out / "f1.psd", f1)
    taus = np.linspace(0.0, 1.0, n_tau)
    rows = examples.geodesic_surface_rows(f0, f1, taus)
    write_csv(out / "geodesic_surface.csv", ("tau", "theta", "entry", "value"), rows)
    write_text(out / "distance.txt", f"{geodesic_distance(f0, f1)!r}\n")
    if do_svg:
        theta = f0.grid.theta
        for eid in examples.ENTRY_IDS:
            z = np.array([examples.surface_values(psd_geodesic(f0, f1, t))[eid] for t in taus])
            # thin the frequency axis to keep the files small
            step = max(1, len(theta) // 128)
            label = "phase" if eid == "21" else "log-magnitude"
            write_text(
                out / f"geodesic_{eid}.svg",
                svg.heatmap(z[:, ::step], theta[::step], taus, f"entry ({eid[0]},{eid[1]}) {label}"),
            )


def cmd_example(args):
    out = Path(args.out_dir)
    try:
        FrequencyGrid(args.n)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.which == "scalar":
        _scalar_example(out, args.n, args.svg)
    else:
        _matrix_example(out, args.n, args.n_tau, args.svg)
    return EXIT_OK


def cmd_factorize(args):
    f = read_psd(args.f)
    method = args.method
    if method == "auto":
        method = "cepstral" if f.m == 1 else "wilson"
    if method == "cepstral":
        if f.m != 1:
            raise InputError("the cepstral method needs a scalar spectrum")
        sf = factorize_scalar(f)
        iterations, residual, converged = 0, factorization_residual(sf.factor_values, f.values), True
    else:
        sf, rep = factorize_matrix(f)
        iterations, residual, converged = rep.iterations, rep.residual, rep.converged
    if not converged:
        print(
            f"error: factorization did not converge ({iterations} iterations, residual {residual:.3g})",
            file=sys.stderr,
        )
        return EXIT_NUMERIC
    write_factor(args.out, sf)
    if args.report:
        print(f"method: {method}")
        print(f"iterations: {iterations}")
        print(f"residual: {residual:.3e}")
        print(f"szego_kolmogorov_error: {szego_kolmogorov_check(f, sf.omega):.3e}")
    return EXIT_OK


def cmd_selftest(args):
    from .selftest import run

    ok = run(seed=args.seed, trials=args.trials)
    return EXIT_OK if ok else EXIT_NUMERIC


def build_parser():
    p = argparse.ArgumentParser(prog="specgeo", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("divergence", help="divergence between two PSD files")
    d.add_argument("--measure", required=True, choices=[m.value for m in Measure])
    d.add_argument("--f1", required=True)
    d.add_argument("--f2", required=True)
    d.add_argument("--per-frequency", metavar="CSV")
    d.set_defaults(func=cmd_divergence)

    g = sub.add_parser("geodesic", help="sample the g1-geodesic between two PSD files")
    g.add_argument("--f0", required=True)
    g.add_argument("--f1", required=True)
    g.add_argument("--tau", required=True, help="comma-separated, e.g. 0,1/3,2/3,1,4/3")
    g.add_argument("--out-dir", required=True)
    g.add_argument("--compare", help="linear,ar")
    g.set_defaults(func=cmd_geodesic)

    e = sub.add_parser("example", help="regenerate the worked examples")
    e.add_argument("which", choices=("scalar", "matrix"))
    e.add_argument("--out-dir", required=True)
    e.add_argument("--n", type=int, default=512)
    e.add_argument("--n-tau", type=int, default=21)
    e.add_argument("--svg", action="store_true")
    e.set_defaults(func=cmd_example)

    f = sub.add_parser("factorize", help="canonical left spectral factor of a PSD file")
    f.add_argument("--f", required=True)
    f.add_argument("--out", required=True)
    f.add_argument("--method", choices=("auto", "wilson", "cepstral"), default="auto")
    f.add_argument("--report", action="store_true")
    f.set_defaults(func=cmd_factorize)

    s = sub.add_parser("selftest", help="randomized property checks")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--trials", type=int, default=20)
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FactorizationError, NumericalInconsistencyError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (
        InputError,
        PsdFormatError,
        DomainError,
        AsymmetryError,
        GridMismatchError,
        OSError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
