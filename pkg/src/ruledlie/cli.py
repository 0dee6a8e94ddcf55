"""Command-line front end.  Exit codes: 0 ok, 1 failed check, 2 usage or config error."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import algebra, config, example, frenet, invariants, report, verify
from .errors import ConfigError, RuledLieError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

CSV_COLUMNS = ["s", "v", "E", "F", "G", "e", "f", "g", "K", "H", "lambda",
               "kappa_g", "kappa_n", "tau_g", "point_type", "pipeline", "singular"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _emit(obj, out_dir: Path | None, filename: str | None):
    text = report.dumps(obj)
    sys.stdout.write(text)
    if out_dir is not None and filename:
        report.write_json(out_dir / filename, obj)


def _scenario(args) -> config.ScenarioConfig:
    if args.config is None:
        raise ConfigError(f"{args.command} needs --config PATH")
    return config.load(args.config).validate()


def _out(args) -> Path | None:
    return None if args.out is None else Path(args.out)


# --- subcommands -------------------------------------------------------------

def cmd_validate(args) -> int:
    sc = _scenario(args)
    tol = args.tol if args.tol is not None else sc.tol("algebra")
    rep = algebra.validate(sc.build_algebra(), tol)
    _emit(rep.to_dict(), _out(args), "validate.json")
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_frenet(args) -> int:
    sc = _scenario(args)
    alg, curve = sc.build_algebra(), sc.build_curve()
    grid = sc.s_grid()
    records, _ = frenet.frame_field(alg, curve, grid)
    res = verify.frenet_residuals(alg, curve, grid)
    frame_tol = args.tol if args.tol is not None else sc.tol("frenet")
    bracket_tol = sc.tol("bracket")
    passed = (max(res["frenet_T"], res["frenet_N"], res["frenet_B"]) <= frame_tol
              and max(res["bracket_TN"], res["bracket_TB"]) <= bracket_tol)
    out = _out(args)
    if out is not None:
        header = ["s", "T1", "T2", "T3", "N1", "N2", "N3", "B1", "B2", "B3", "kappa", "tau", "tau_G", "sigma"]
        rows = [[r.s, *r.T, *r.N, *r.B, r.kappa, r.tau, r.tau_G, r.sigma] for r in records]
        report.write_csv(out / sc.outputs["frenet_csv"], header, rows)
    _emit({"scenario": sc.name, "algebra": alg.name, "curve": curve.name, "points": len(records),
           "residuals": res, "tol": {"frenet": frame_tol, "bracket": bracket_tol}, "passed": passed},
          out, "frenet.json")
    return EXIT_OK if passed else EXIT_FAIL


def _record_row(rec: invariants.InvariantRecord, tol: float) -> list:
    ff = rec.forms
    forms = [ff.E, ff.F, ff.G, ff.e, ff.f, ff.g] if ff is not None else [None] * 6
    if rec.singular:
        vals = [None] * 6
    else:
        vals = [rec.K, rec.H, "degenerate" if rec.lam is None else rec.lam,
                rec.kappa_g, rec.kappa_n, rec.tau_g]
    return [rec.s, rec.v, *forms, *vals, rec.point_type(tol), rec.pipeline, rec.singular]


def _lambda_summary(spec, s_grid):
    """Single value when lambda is constant along the grid, otherwise its range."""
    vals = [invariants.distribution_parameter(spec, s) for s in s_grid]
    finite = [x for x in vals if x is not None]
    if not finite:
        return "degenerate"
    lo, hi = min(finite), max(finite)
    if len(finite) == len(vals) and hi - lo <= 1e-12 * (1.0 + abs(hi)):
        return finite[0]
    return {"min": lo, "max": hi, "degenerate_count": len(vals) - len(finite)}


def cmd_surface_report(args) -> int:
    sc = _scenario(args)
    spec = sc.build_surface()
    s_grid, v_grid = sc.s_grid(), sc.v_grid()
    tol = args.tol if args.tol is not None else sc.tol("classify")
    pipelines = list(sc.outputs.get("pipelines", ["definitional"]))
    if args.paper_compat and "closed_form" not in pipelines:
        pipelines.append("closed_form")
    by_pipe = {p: invariants.evaluate_grid(spec, s_grid, v_grid, p, args.jobs) for p in pipelines}

    rows = []
    nv = len(v_grid)
    for idx in range(len(s_grid) * nv):
        for p in pipelines:
            rows.append(_record_row(by_pipe[p][idx], tol))

    defn = by_pipe.get("definitional") or invariants.evaluate_grid(spec, s_grid, v_grid, "definitional", args.jobs)
    cls = invariants.classify(spec, s_grid, v_grid, tol, records=defn)
    summary = {
        "scenario": sc.name,
        "family": spec.family.value,
        "algebra": spec.alg.name,
        "curve": spec.curve.name,
        "grid": {"s": sc.grid.s.to_json(), "v": sc.grid.v.to_json()},
        "lambda": _lambda_summary(spec, s_grid),
        "classification": cls.to_dict(),
        "singular_cells": {p: sum(r.singular for r in recs) for p, recs in by_pipe.items()},
    }
    if "closed_form" in pipelines:
        reps = verify.compare_pipelines(spec, s_grid, v_grid, sc.tol("compare"), args.jobs)
        summary["comparison"] = [r.to_dict() for r in reps.values()]
    out = _out(args) or Path(".")
    report.write_csv(out / sc.outputs["surface_csv"], CSV_COLUMNS, rows)
    report.write_json(out / sc.outputs["scenario"], sc.to_dict())
    _emit(summary, out, sc.outputs["summary"])
    return EXIT_OK


def cmd_classify(args) -> int:
    sc = _scenario(args)
    spec = sc.build_surface()
    tol = args.tol if args.tol is not None else sc.tol("classify")
    s_grid, v_grid = sc.s_grid(), sc.v_grid()
    recs = invariants.evaluate_grid(spec, s_grid, v_grid, "definitional", args.jobs)
    cls = invariants.classify(spec, s_grid, v_grid, tol, records=recs)
    _emit({"scenario": sc.name, "family": spec.family.value, **cls.to_dict()}, _out(args), "classify.json")
    return EXIT_OK


def mesh_obj(spec, s_grid, v_grid) -> str:
    """Wavefront text: one vertex per (s, v), s-major, then quads with 1-based indices."""
    ns, nv = len(s_grid), len(v_grid)
    lines = [f"# ruled surface {spec!r}", f"# grid {ns} x {nv} (s-major)"]
    for s in s_grid:
        for v in v_grid:
            p = spec.evaluate(float(s), float(v))
            lines.append("v " + " ".join(report.fmt_float(c) for c in p))
    for i in range(ns - 1):
        for j in range(nv - 1):
            a = i * nv + j + 1
            lines.append(f"f {a} {a + nv} {a + nv + 1} {a + 1}")
    return "\n".join(lines) + "\n"


def cmd_mesh(args) -> int:
    sc = _scenario(args)
    spec = sc.build_surface()
    out = _out(args) or Path(".")
    out.mkdir(parents=True, exist_ok=True)
    path = out / sc.outputs["mesh"]
    path.write_text(mesh_obj(spec, sc.s_grid(), sc.v_grid()))
    ns, nv = sc.grid.s.n, sc.grid.v.n
    print(report.dumps({"mesh": str(path), "vertices": ns * nv, "faces": (ns - 1) * (nv - 1)}), end="")
    return EXIT_OK


def cmd_verify(args) -> int:
    sc = _scenario(args)
    alg, curve = sc.build_algebra(), sc.build_curve()
    spec = sc.build_surface(alg, curve)
    s_grid, v_grid = sc.s_grid(), sc.v_grid()
    tol = args.tol if args.tol is not None else sc.tol("compare")
    seed = args.seed if args.seed is not None else sc.seed

    failures = []
    alg_rep = algebra.validate(alg, sc.tol("algebra"))
    if not alg_rep.passed:
        failures.append(f"algebra {alg.name}: violates {', '.join(alg_rep.violations())}")
    reps = verify.compare_pipelines(spec, s_grid, v_grid, tol, args.jobs)
    for r in reps.values():
        if r.asserting and not r.passed:
            failures.append(f"{r.quantity}: rel deviation {r.max_rel:.3g} > {tol:g} at (s, v) = {r.worst}")

    res = verify.frenet_residuals(alg, curve, s_grid)
    ftol = sc.tol("frenet") if args.tol is None else tol
    for k in ("frenet_T", "frenet_N", "frenet_B"):
        if res[k] > ftol:
            failures.append(f"{k}: residual {res[k]:.3g} > {ftol:g}")
    for k in ("bracket_TN", "bracket_TB", "orthonormality"):
        if res[k] > sc.tol("bracket"):
            failures.append(f"{k}: residual {res[k]:.3g} > {sc.tol('bracket'):g}")

    alt = [verify.tau_G_alt_check(alg, curve, s) for s in s_grid]
    for a in alt:
        if not a.skipped and a.residual > sc.tol("alt_tau_G"):
            failures.append(f"alt tau_G: residual {a.residual:.3g} at s = {a.s}")

    suite = verify.property_suite(seed, int(sc.verify.get("n_cases", 100)))
    failures += [f"property {c.name}: {c.value:.3g} > {c.tol:g} at {c.worst}" for c in suite.checks if not c.passed]

    out = {
        "scenario": sc.name,
        "seed": seed,
        "passed": not failures,
        "failures": failures,
        "algebra": alg_rep.to_dict(),
        "comparison": [r.to_dict() for r in reps.values()],
        "frenet_residuals": res,
        "alt_tau_G": [vars(a) for a in alt],
        "property_suite": suite.to_dict(),
    }
    _emit(out, _out(args), sc.outputs["verify"])
    for f in failures:
        print(f"FAIL {f}", file=sys.stderr)
    return EXIT_OK if not failures else EXIT_FAIL


def cmd_example_cylinder(args) -> int:
    rep = example.example_cylinder(compat=args.paper_compat)
    _emit(rep, _out(args), "example_cylinder.json")
    return EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "frenet": cmd_frenet,
    "surface-report": cmd_surface_report,
    "classify": cmd_classify,
    "mesh": cmd_mesh,
    "verify": cmd_verify,
    "example-cylinder": cmd_example_cylinder,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="scenario JSON file")
    common.add_argument("--out", metavar="DIR", help="output directory")
    common.add_argument("--jobs", type=int, default=1, metavar="N", help="worker threads for grid evaluation")
    common.add_argument("--tol", type=float, metavar="X", help="override the command's main tolerance")
    common.add_argument("--seed", type=int, metavar="N", help="override the scenario seed")
    common.add_argument("--paper-compat", action="store_true",
                        help="include the A := 1 reproduction of the printed example values")
    parser = _Parser(prog="ruledlie", description="Ruled surfaces in 3D Lie groups with bi-invariant metrics.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.jobs < 1:
        print("ruledlie: error: --jobs must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, RuledLieError) as exc:
        print(f"ruledlie: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
