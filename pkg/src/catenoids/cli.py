"""Command-line interface: ``catenoids <subcommand> ...``.

Exit status is 0 on success, 1 when a verification fails and 2 on usage or
configuration errors.  ``CATENOID_LOG`` sets the log level (a name such as
``debug`` or a number).
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .errors import CatenoidError
from .export import bundle_summary, export, fmt, format_from_path, write_meta
from .lorentz import minkowski_inner
from .mesh import PROJECTIONS, RunConfig, curve_polyline, default_jobs, sample_and_mesh
from .singular import (
    TYPE_I_SCENARIOS,
    TYPE_II_SCENARIOS,
    classify_regions,
    cone_point,
    limit_of_sequence,
    limit_table,
    scenario_sequence,
    singular_residual,
)
from .surfaces import Family, SurfaceSpec, evaluate
from .trochoid import (
    fit_hypotrochoid,
    fit_planar_constant,
    gamma,
    hypotrochoid,
    trochoid_params,
)

log = logging.getLogger("catenoids")

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def configure_logging(stream=None) -> None:
    raw = os.environ.get("CATENOID_LOG", "warning").strip()
    level = int(raw) if raw.isdigit() else logging.getLevelName(raw.upper())
    if not isinstance(level, int):
        level = logging.WARNING
    handler = logging.StreamHandler(stream or sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    log.handlers[:] = [handler]
    log.setLevel(level)
    log.propagate = False


def _spec(args) -> SurfaceSpec:
    return SurfaceSpec(args.family, args.m)


def _tuple(values) -> str:
    return "(" + ", ".join(fmt(v) for v in values) + ")"


# --- subcommands ------------------------------------------------------------


def cmd_eval(args) -> int:
    spec = _spec(args)
    u = args.s if spec.family is Family.ADS and args.s is not None else args.r
    if u is None:
        raise UsageError("eval needs --r (or --s for AdS)")
    p = evaluate(spec, u, args.theta)
    target = -1.0 if spec.family is Family.ADS else 1.0
    from .verify import signature_of

    residual = abs(float(minkowski_inner(p, p, signature_of(spec))) - target)
    if args.json:
        print(json.dumps({"surface": str(spec), "u": u, "theta": args.theta, "point": p.tolist(), "residual": residual}))
    else:
        print(f"f = {_tuple(p)}")
        print(f"membership residual = {fmt(residual)}")
    return EXIT_OK


def cmd_singular(args) -> int:
    spec = _spec(args)
    m = spec.m
    outdir = Path(args.output_dir) if args.output_dir else None
    if outdir:
        outdir.mkdir(parents=True, exist_ok=True)
    files = []
    if spec.family is Family.I:
        for c in range(2 * m):
            line = curve_polyline("singular_image", args.samples, args.projection, m=m, component=c)
            print(f"component {c}: {len(line.points)} points, ends {_tuple(line.points[0])} .. {_tuple(line.points[-1])}")
            if outdir:
                files.append(export(line, "csv", outdir / f"sigma_{c}.csv"))
    elif spec.family is Family.II:
        for k in range(2 * m):
            print(f"ray theta = alpha_{k} -> cone point {_tuple(cone_point(m, k))}")
    else:
        raise UsageError("singular supports families I and II")

    n = args.grid
    theta = 2 * np.pi * np.arange(n) / n
    if spec.family is Family.I:
        half = np.geomspace(math.exp(-2), math.exp(2), n // 2)
        r = np.concatenate([-half[::-1], half])
        labels = np.vectorize(lambda x: x.value)(classify_regions(m, *np.meshgrid(r, theta, indexing="ij")))
    else:
        r = np.geomspace(math.exp(-2), math.exp(2), n)
        c = np.cos(m * np.meshgrid(r, theta, indexing="ij")[1])
        labels = np.where(c > 0, "cos+", "cos-")
    counts = {lab: int((labels == lab).sum()) for lab in sorted(set(labels.ravel()))}
    print("region map: " + ", ".join(f"{k}={v}" for k, v in counts.items()))
    if outdir:
        R, T = np.meshgrid(r, theta, indexing="ij")
        res = singular_residual(spec, R, T)
        path = outdir / "regions.csv"
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write("r,theta,region,residual\n")
            for a, b, lab, q in zip(R.ravel(), T.ravel(), labels.ravel(), res.ravel()):
                fh.write(f"{fmt(a)},{fmt(b)},{lab},{fmt(q)}\n")
        files.append(path)
        write_meta(outdir / "singular.json", {"surface": str(spec), "samples": args.samples, "grid": n}, files)
    return EXIT_OK


def cmd_trochoid(args) -> int:
    m = args.m
    fit = fit_hypotrochoid(m, n=args.fit_samples)
    params = trochoid_params(m)
    c, c_res = fit_planar_constant(m)
    print(f"gamma_{m}: fixed circle {fit.fixed} (radius {fmt(getattr(params, fit.fixed))}), "
          f"rolling radius {fmt(params.r_m if fit.fixed == 'r_c' else params.r_c)}, d = {fmt(params.d)}")
    print("hausdorff: " + ", ".join(f"fixed={k} {fmt(v)}" for k, v in sorted(fit.candidates.items())))
    print(f"planar constant c = {fmt(c)} (max residual {fmt(c_res)})")
    if args.output:
        theta = 2 * np.pi * np.arange(args.samples) / args.samples
        g = gamma(m, theta)
        s = (m + 1) * theta
        h = hypotrochoid(params, s, fixed=fit.fixed)
        path = Path(args.output)
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write("theta,x,y,s,hx,hy\n")
            for row in zip(theta, g[:, 0], g[:, 1], s, h[:, 0], h[:, 1]):
                fh.write(",".join(fmt(v) for v in row) + "\n")
        print(f"wrote {path}")
    return EXIT_OK


def cmd_limits(args) -> int:
    spec = _spec(args)
    if spec.family is Family.ADS:
        raise UsageError("limits supports families I and II")
    scenarios = TYPE_I_SCENARIOS if spec.family is Family.I else TYPE_II_SCENARIOS
    rng = np.random.default_rng(args.seed)
    js = np.array([1e4, 1e5, 1e6])
    ok = True
    print(f"limit table for {spec}")
    for sc in scenarios:
        target = limit_table(spec, sc)
        hits, worst = 0, 0.0
        for _ in range(args.sequences):
            res = limit_of_sequence(spec, scenario_sequence(spec, sc, rng, js))
            hits += res.status == "ideal" and res.ideal == target
            worst = max(worst, res.distance)
        status = "PASS" if hits == args.sequences else "FAIL"
        ok &= hits == args.sequences
        print(f"  {sc.value:<14} -> {target.tag.value:<3} {_tuple(target.coords)}  "
              f"{status} {hits}/{args.sequences} max distance {fmt(worst)}")
    return EXIT_OK if ok else EXIT_FAILED


def _config_from_args(args) -> RunConfig:
    theta_range = tuple(args.theta_range) if args.theta_range else None
    return RunConfig(
        family=args.family,
        m=args.m,
        r_min=math.exp(args.log_r_min),
        r_max=math.exp(args.log_r_max),
        n_r=args.n_r,
        n_theta=args.n_theta,
        projection=args.projection,
        theta_range=theta_range,
        second_sheet=args.second_sheet,
        include_lines=args.lines,
        refine=not args.no_refine,
        jobs=args.jobs,
    )


def cmd_mesh(args) -> int:
    config = _config_from_args(args)
    bundle = sample_and_mesh(config)
    fmt_ = args.format or format_from_path(args.output)
    path = export(bundle, fmt_, args.output)
    summary = bundle_summary(bundle)
    print(f"wrote {path}: " + ", ".join(f"{k}={v}" for k, v in summary.items()))
    if args.meta:
        write_meta(args.meta, config.to_dict(), [path], {"counts": summary, "format": fmt_})
        print(f"wrote {args.meta}")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import run_suite

    report = run_suite(_spec(args), seed=args.seed, quick=args.quick)
    text = json.dumps(report, sort_keys=True, indent=2)
    if args.report:
        Path(args.report).write_text(text + "\n", encoding="ascii")
    print(text)
    return EXIT_OK if report["passed"] else EXIT_FAILED


def cmd_figures(args) -> int:
    from .figures import make_figures

    result = make_figures(args.output_dir, png=not args.no_png, jobs=args.jobs)
    for name, digest in sorted(result["files"].items()):
        print(f"{digest}  {name}")
    print(f"manifest: {result['manifest']}")
    return EXIT_OK


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="catenoids", description="Exceptional CMC-1 catenoids in de Sitter space.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--jobs", type=int, default=default_jobs(), help="worker threads (default: CPU count)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def surface(p, families=("I", "II", "AdS")):
        p.add_argument("--family", required=True, choices=families)
        p.add_argument("--m", type=int, required=True)

    p = sub.add_parser("eval", help="evaluate the surface at one point")
    surface(p)
    p.add_argument("--r", type=float)
    p.add_argument("--s", type=float, help="AdS parameter s")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("singular", help="singular curves, cone points and the region map")
    surface(p, ("I", "II"))
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--grid", type=int, default=64)
    p.add_argument("--projection", choices=("hollowball", "none"), default="hollowball")
    p.add_argument("--output-dir")
    p.set_defaults(func=cmd_singular)

    p = sub.add_parser("trochoid", help="limit curve and its fitted hypo-trochoid")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--fit-samples", type=int, default=10_000)
    p.add_argument("--output", help="CSV path")
    p.set_defaults(func=cmd_trochoid)

    p = sub.add_parser("limits", help="limit table with randomized sequence validation")
    surface(p, ("I", "II"))
    p.add_argument("--sequences", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_limits)

    p = sub.add_parser("mesh", help="sample, triangulate and export a surface")
    surface(p)
    p.add_argument("--n-r", type=int, default=64)
    p.add_argument("--n-theta", type=int, default=128)
    p.add_argument("--log-r-min", type=float, default=-4.0)
    p.add_argument("--log-r-max", type=float, default=4.0)
    p.add_argument("--theta-range", type=float, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--projection", choices=PROJECTIONS)
    p.add_argument("--second-sheet", action="store_true")
    p.add_argument("--lines", action="store_true", help="add the light-like lines as polylines")
    p.add_argument("--no-refine", action="store_true")
    p.add_argument("--format", choices=("obj", "ply", "csv", "json"))
    p.add_argument("--output", required=True)
    p.add_argument("--meta", help="also write a JSON sidecar here")
    p.set_defaults(func=cmd_mesh)

    p = sub.add_parser("verify", help="run the property suite and print a JSON report")
    surface(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--quick", action="store_true")
    p.add_argument("--report", help="also write the report here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("figures", help="regenerate all figure artifacts")
    p.add_argument("--output-dir", required=True)
    p.add_argument("--no-png", action="store_true")
    p.set_defaults(func=cmd_figures)
    return parser


def main(argv=None) -> int:
    configure_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    if args.jobs < 1:
        print("catenoids: error: --jobs must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"catenoids: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CatenoidError as exc:
        print(f"catenoids: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"catenoids: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
