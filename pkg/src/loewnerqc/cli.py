"""Command-line front end.

Subcommands
-----------
check      run a criterion sweep; quasiconformal kinds also build the
           matching chain, verify it and sample the Becker extension
chain      build a chain variant and run the chain verification only
extend     sample the Becker extension of a chain (report + CSV)
normalize  rotation / time-change diagnostics of a chain
plot       emit SVG plots from prior artifacts or a chain spec

Exit codes: 0 all checks passed, 1 a criterion failed or a falsification
occurred, 2 an input could not be parsed.  All output files are
byte-deterministic for a fixed command line; ``--seed`` offsets the oracle's
low-discrepancy sequence.

Function specs are either inline (``identity``, ``koebe``, ``half-plane``,
``spiral-koebe:0.5``, ``polynomial:0,1,0.5``, ``series:0,1,-0.25``) or a path
to a flat key = value file with fields ``kind``, ``alpha``, ``beta``,
``coeffs``, ``h_coeffs``.  Complex numbers use Python syntax (``0.5+0.25j``).
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys

import numpy as np

from . import chains as chains_mod
from .chains import make_chain, normalize_chain, verify_chain
from .criteria import (
    CRITERION_KINDS,
    DISK_KINDS,
    GridSpec,
    evaluate_criterion,
)
from .errors import LoewnerError
from .extension import DEFAULT_EXTERIOR_RADII, dilatation_report
from .functions import (
    AnalyticFunction,
    HalfPlane,
    Identity,
    Koebe,
    Polynomial,
    SeriesBacked,
    SpiralKoebe,
)
from .oracle import univalence_scan
from .plotting import curves_svg, mu_heatmap_svg
from .report import write_document
from .series import PowerSeries

__all__ = ["main", "parse_function_spec"]


class SpecError(Exception):
    """A function spec (inline or file) could not be parsed."""


# -- function specs -------------------------------------------------------------


def _parse_complex_list(text: str) -> list[complex]:
    out = []
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        try:
            out.append(complex(piece))
        except ValueError as exc:
            raise SpecError(f"bad coefficient {piece!r}") from exc
    return out


def _build_inline(kind: str, arg: str | None) -> AnalyticFunction:
    if kind == "identity":
        return Identity()
    if kind == "koebe":
        return Koebe()
    if kind == "half-plane":
        return HalfPlane()
    if kind == "spiral-koebe":
        if arg is None:
            raise SpecError("spiral-koebe needs an angle, e.g. spiral-koebe:0.5")
        try:
            return SpiralKoebe(float(arg))
        except (ValueError, LoewnerError) as exc:
            raise SpecError(str(exc)) from exc
    if kind in ("polynomial", "series"):
        if arg is None:
            raise SpecError(f"{kind} needs coefficients, e.g. {kind}:0,1,0.5")
        coeffs = _parse_complex_list(arg)
        try:
            if kind == "polynomial":
                return Polynomial(coeffs)
            return SeriesBacked(PowerSeries(coeffs))
        except LoewnerError as exc:
            raise SpecError(str(exc)) from exc
    raise SpecError(f"unknown function kind {kind!r}")


def _parse_spec_file(path: str) -> tuple[AnalyticFunction, dict]:
    fields: dict[str, str] = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise SpecError(f"{path}:{lineno}: expected 'key = value'")
                key, _, value = line.partition("=")
                fields[key.strip()] = value.strip()
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc}") from exc
    if "kind" not in fields:
        raise SpecError(f"{path}: missing 'kind'")
    kind = fields["kind"]
    arg = None
    if kind == "spiral-koebe":
        arg = fields.get("alpha")
    elif kind in ("polynomial", "series"):
        arg = fields.get("coeffs")
    fn = _build_inline(kind, arg)
    return fn, fields


def parse_function_spec(spec: str) -> tuple[AnalyticFunction, dict]:
    """Inline shorthand or spec-file path -> (function, raw fields)."""
    if os.path.exists(spec):
        return _parse_spec_file(spec)
    kind, _, arg = spec.partition(":")
    return _build_inline(kind, arg or None), {}


def _h_series(args, file_fields: dict, order: int = 64) -> PowerSeries:
    text = args.h_coeffs or file_fields.get("h_coeffs") or "1"
    coeffs = _parse_complex_list(text)
    return PowerSeries(coeffs).truncate(order)


# -- shared argument plumbing -----------------------------------------------------


def _grid_from(args) -> GridSpec:
    if args.radii:
        radii = tuple(float(x) for x in args.radii.split(","))
    else:
        radii = GridSpec().radii
    if args.rmax is not None:
        radii = tuple(r for r in radii if r < args.rmax) + (args.rmax,)
    return GridSpec(radii=radii, angles=args.angles, refinement=8)


def _times_from(args) -> tuple[float, ...]:
    if args.times:
        return tuple(float(x) for x in args.times.split(","))
    return chains_mod.DEFAULT_TIMES


def _chain_for_criterion(kind, fn, g, h, alpha, beta):
    if kind == "starlike-tilted":
        return make_chain("spirallike-standard", f=fn, alpha=alpha)
    if kind == "spiral":
        return make_chain("exponential", f=fn, c=np.exp(-1j * alpha))
    if kind == "bazilevic1":
        return make_chain("sheil-small", f=fn, alpha=alpha, beta=beta)
    if kind == "bazilevic2":
        return make_chain("bazilevic-integral", g=g, h=h, alpha=alpha, beta=beta)
    return None


def _build_chain_from_args(args) -> chains_mod.LoewnerChain:
    fn, fields = parse_function_spec(args.fn)
    variant = args.variant
    if variant == "convex-combination":
        return make_chain(variant, f=fn, alpha=complex(args.alpha_complex or args.alpha))
    if variant == "spirallike-standard":
        return make_chain(variant, f=fn, alpha=args.alpha)
    if variant == "exponential":
        c = complex(args.c) if args.c else np.exp(-1j * args.alpha)
        return make_chain(variant, f=fn, c=c)
    if variant == "sheil-small":
        return make_chain(variant, f=fn, alpha=args.alpha, beta=args.beta)
    if variant == "bazilevic-integral":
        h = _h_series(args, fields)
        return make_chain(variant, g=fn, h=h, alpha=args.alpha, beta=args.beta)
    raise SpecError(f"unknown chain variant {variant!r}")


def _write_samples_csv(path: str, samples) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\r\n")
        writer.writerow(["r", "theta", "h_re", "h_im", "mu_re", "mu_im", "mu_abs"])
        for s in samples:
            writer.writerow([repr(float(x)) for x in s.csv_row()])


def _emit(out_dir: str, name: str, text: str) -> str:
    path = os.path.join(out_dir, name)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return path


# -- subcommands ---------------------------------------------------------------


def _cmd_check(args) -> int:
    os.makedirs(args.out, exist_ok=True)
    fn = g = h = None
    fields: dict = {}
    if args.kind == "bazilevic2":
        g, fields = parse_function_spec(args.fn)
        h = _h_series(args, fields)
    else:
        fn, fields = parse_function_spec(args.fn)
    grid = _grid_from(args)
    report = evaluate_criterion(
        args.kind, f=fn, g=g, h=h, alpha=args.alpha, beta=args.beta, grid=grid,
    )
    write_document(os.path.join(args.out, "criterion.txt"), report.document_fields())

    stages = [("criterion", report.passed)]
    chain = _chain_for_criterion(args.kind, fn, g, h, args.alpha, args.beta)
    ext = None
    if chain is not None:
        chain_report = verify_chain(chain, grid, times=_times_from(args))
        write_document(os.path.join(args.out, "chain.txt"),
                       chain_report.document_fields())
        stages.append(("chain", chain_report.passed))
        ext = dilatation_report(chain, angles=args.ext_angles)
        write_document(os.path.join(args.out, "extension.txt"),
                       ext.document_fields())
        _write_samples_csv(os.path.join(args.out, "samples.csv"), ext.samples)
        subject = chain.subject()
    else:
        subject = fn
    if not args.skip_oracle:
        verdict = univalence_scan(
            subject, min(0.95, grid.r_max), image_samples=16,
            n_points=args.oracle_points, fprime=subject.derivative,
            offset=args.seed,
        )
        oracle_fields = [
            ("report", "oracle"),
            ("falsified", verdict.falsified),
            ("method", verdict.method),
        ]
        if verdict.witness is not None:
            oracle_fields += [
                ("witness_z1", verdict.witness.z1),
                ("witness_z2", verdict.witness.z2),
                ("witness_gap", verdict.witness.image_gap),
            ]
        write_document(os.path.join(args.out, "oracle.txt"), oracle_fields)
        stages.append(("oracle", not verdict.falsified))

    if args.emit_plots and chain is not None:
        _plot_curves(chain, args.out)
        if ext is not None:
            _emit(args.out, "mu.svg",
                  mu_heatmap_svg([s.csv_row() for s in ext.samples]))

    summary = [("report", "summary"), ("kind", args.kind)]
    ok = True
    for stage, passed in stages:
        summary.append((f"stage_{stage}", "pass" if passed else "fail"))
        ok = ok and passed
    summary.append(("exit", 0 if ok else 1))
    write_document(os.path.join(args.out, "summary.txt"), summary)
    for stage, passed in stages:
        print(f"{'PASS' if passed else 'FAIL'} {stage}")
    return 0 if ok else 1


def _cmd_chain(args) -> int:
    os.makedirs(args.out, exist_ok=True)
    chain = _build_chain_from_args(args)
    grid = _grid_from(args)
    report = verify_chain(chain, grid, times=_times_from(args))
    write_document(os.path.join(args.out, "chain.txt"), report.document_fields())
    print(f"{'PASS' if report.passed else 'FAIL'} chain "
          f"(herglotz_margin={report.herglotz_margin:.6g})")
    return 0 if report.passed else 1


def _cmd_extend(args) -> int:
    os.makedirs(args.out, exist_ok=True)
    chain = _build_chain_from_args(args)
    radii = (
        tuple(float(x) for x in args.radii_ext.split(","))
        if args.radii_ext else DEFAULT_EXTERIOR_RADII
    )
    ext = dilatation_report(chain, radii=radii, angles=args.ext_angles,
                            window=args.window)
    write_document(os.path.join(args.out, "extension.txt"), ext.document_fields())
    _write_samples_csv(os.path.join(args.out, "samples.csv"), ext.samples)
    if args.emit_plots:
        _emit(args.out, "mu.svg", mu_heatmap_svg([s.csv_row() for s in ext.samples]))
    print(f"sup|mu| = {ext.sup_mu!r} over {len(ext.samples)} samples")
    return 0 if ext.sup_mu < 1.0 else 1


def _cmd_normalize(args) -> int:
    os.makedirs(args.out, exist_ok=True)
    chain = _build_chain_from_args(args)
    fields = [("report", "normalize"), ("variant", chain.variant)]
    worst = 0.0
    for t in _times_from(args):
        frame = normalize_chain(chain, t)
        h1 = complex(frame.dz(0.0))
        gap = abs(h1 - math.exp(t))
        worst = max(worst, gap)
        fields += [
            (f"t_{t:g}_lambda", frame.lam),
            (f"t_{t:g}_s", frame.s),
            (f"t_{t:g}_h1", h1),
            (f"t_{t:g}_gap", gap),
        ]
    fields.append(("max_gap", worst))
    write_document(os.path.join(args.out, "normalize.txt"), fields)
    print(f"max |h'(0,t) - e^t| = {worst!r}")
    return 0


def _plot_curves(chain, out_dir, radius=0.95, times=(0.0, 0.5, 1.0), points=512):
    theta = np.linspace(0.0, 2.0 * np.pi, points, endpoint=False)
    z = radius * np.exp(1j * theta)
    curves, labels = [], []
    for t in times:
        vals = np.atleast_1d(chain.f(z, t))
        curves.append(vals)
        labels.append(f"t={t:g}")
    return _emit(out_dir, "curves.svg", curves_svg(curves, labels))


def _cmd_plot(args) -> int:
    os.makedirs(args.out, exist_ok=True)
    wrote = []
    if args.samples:
        if not os.path.exists(args.samples):
            print(f"missing artifact: {args.samples}", file=sys.stderr)
            return 2
        with open(args.samples, "r", encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader)
            if header[:2] != ["r", "theta"]:
                print(f"{args.samples}: not an extension sample CSV", file=sys.stderr)
                return 2
            rows = [tuple(float(x) for x in row) for row in reader]
        if not rows:
            print(f"{args.samples}: no samples", file=sys.stderr)
            return 2
        wrote.append(_emit(args.out, "mu.svg", mu_heatmap_svg(rows)))
    if args.fn and args.variant:
        chain = _build_chain_from_args(args)
        wrote.append(_plot_curves(chain, args.out, radius=args.plot_radius,
                                  times=_times_from(args)[:4]))
    if not wrote:
        print("nothing to plot: pass --samples and/or --variant with --fn",
              file=sys.stderr)
        return 2
    for path in wrote:
        print(f"wrote {path}")
    return 0


# -- parser ---------------------------------------------------------------------


def _add_common(sub, with_chain_params=True):
    sub.add_argument("--fn", help="function spec (inline shorthand or file path)")
    sub.add_argument("--alpha", type=float, default=0.0)
    sub.add_argument("--beta", type=float, default=0.0)
    sub.add_argument("--h-coeffs", dest="h_coeffs",
                     help="comma-separated h coefficients, h(0)=1")
    sub.add_argument("--radii", help="comma-separated grid radii in (0,1)")
    sub.add_argument("--rmax", type=float, help="append/trim the grid at this radius")
    sub.add_argument("--angles", type=int, default=512)
    sub.add_argument("--times", help="comma-separated chain times")
    sub.add_argument("--out", default="out", help="output directory")
    sub.add_argument("--seed", type=int, default=0,
                     help="low-discrepancy sequence offset for the oracle")
    sub.add_argument("--emit-plots", action="store_true")
    sub.add_argument("--ext-angles", dest="ext_angles", type=int, default=720)
    if with_chain_params:
        sub.add_argument("--variant", choices=sorted(
            ("convex-combination", "spirallike-standard", "exponential",
             "sheil-small", "bazilevic-integral")))
        sub.add_argument("--c", help="complex constant for the exponential chain")
        sub.add_argument("--alpha-complex", dest="alpha_complex",
                         help="complex alpha for the convex-combination chain")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="loewnerqc",
        description="Loewner chains, univalence criteria and Becker extensions",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_check = subs.add_parser("check", help="run a criterion (plus chain pipeline)")
    p_check.add_argument("--kind", required=True, choices=sorted(CRITERION_KINDS))
    p_check.add_argument("--skip-oracle", action="store_true")
    p_check.add_argument("--oracle-points", dest="oracle_points", type=int,
                         default=4096)
    _add_common(p_check, with_chain_params=False)

    p_chain = subs.add_parser("chain", help="verify a chain variant")
    _add_common(p_chain)

    p_ext = subs.add_parser("extend", help="sample the Becker extension")
    p_ext.add_argument("--radii-ext", dest="radii_ext",
                       help="comma-separated exterior radii > 1")
    p_ext.add_argument("--window", type=float, default=1e-3,
                       help="angular exclusion window around singular rays")
    _add_common(p_ext)

    p_norm = subs.add_parser("normalize", help="normalization diagnostics")
    _add_common(p_norm)

    p_plot = subs.add_parser("plot", help="emit SVG plots")
    p_plot.add_argument("--samples", help="extension samples CSV from 'extend'")
    p_plot.add_argument("--plot-radius", dest="plot_radius", type=float,
                        default=0.95)
    _add_common(p_plot)
    return parser


_COMMANDS = {
    "check": _cmd_check,
    "chain": _cmd_chain,
    "extend": _cmd_extend,
    "normalize": _cmd_normalize,
    "plot": _cmd_plot,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    needs_fn = args.command in ("check", "chain", "extend", "normalize")
    if needs_fn and not args.fn:
        print("error: --fn is required", file=sys.stderr)
        return 2
    try:
        return _COMMANDS[args.command](args)
    except SpecError as exc:
        print(f"spec error: {exc}", file=sys.stderr)
        return 2
    except LoewnerError as exc:
        print(f"error ({args.command} stage): {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
