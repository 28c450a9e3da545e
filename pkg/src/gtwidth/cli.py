"""``gtwidth`` command line.

Exit codes: 0 ok, 1 a verification check failed, 2 bad input, 3 the orbit is
a point, 4 an internal invariant broke.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import oracle, serialize
from .errors import GTWidthError, InternalInvariantError, InvalidWeight, NotRegular, PointOrbit
from .exact import parse
from .lie import Family, Weight, exact_width, indecomposable_upper_bound, lower_bound
from .polytope import certificate, edges, hrep, vertex_V

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_POINT, EXIT_INTERNAL = 0, 1, 2, 3, 4
COMMANDS = ("bound", "certificate", "verify")


class BadInput(GTWidthError, ValueError):
    pass


def default_seed() -> int:
    raw = os.environ.get("GTWIDTH_SEED")
    if raw is None or raw == "":
        return 0
    try:
        return int(raw)
    except ValueError:
        raise BadInput(f"GTWIDTH_SEED must be an integer, got {raw!r}") from None


def parse_weight(group: str, n, values) -> Weight:
    try:
        family = Family(group)
    except ValueError:
        raise BadInput(f"unknown group {group!r}; expected one of u, so-odd, so-even") from None
    if isinstance(values, str):
        values = [v for v in values.split(",") if v.strip()]
    try:
        n = int(n)
        lam = [parse(v) for v in values]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise BadInput(str(exc)) from None
    if len(lam) != n:
        raise BadInput(f"lambda has {len(lam)} entries but n = {n}")
    return Weight.of(family, lam)


# --- pipelines -------------------------------------------------------------


def _exact_width(w):
    return exact_width(w) if w.family is Family.U else None


def _upper(w):
    try:
        return indecomposable_upper_bound(w)
    except NotRegular:
        return None


def run_bound(w: Weight) -> dict:
    lower_bound(w)  # raises PointOrbit before anything is printed
    return {"command": "bound", **serialize.bound_fields(w, _exact_width(w), _upper(w))}


def run_certificate(w: Weight, emit_hrep=None) -> dict:
    report = run_bound(w)
    report["command"] = "certificate"
    report.update(serialize.certificate_json(certificate(w)))
    if emit_hrep:
        Path(emit_hrep).write_text(serialize.dumps(serialize.polytope_json(hrep(w))) + "\n")
        report["hrep_path"] = str(emit_hrep)
    return report


def run_verify(w: Weight, samples=1000, tol=oracle.MEMBERSHIP_TOL, seed=0, psi=None,
               psi_points=1000) -> dict:
    report = run_bound(w)
    report["command"] = "verify"
    p = hrep(w)
    V = vertex_V(w)
    checks = {}
    edge_rows = []
    for e in edges(w):
        c = oracle.edge_check(p, e, V)
        edge_rows.append({
            "box": serialize.box(e.box),
            "length": serialize.rat(e.length),
            "lp_interval": None if c.lp_interval is None else serialize.rats(c.lp_interval),
            "active_rank": c.active_rank,
            "pass": c.ok,
        })
    checks["edges"] = {"items": edge_rows, "pass": all(r["pass"] for r in edge_rows)}
    checks["vertex"] = {"pass": oracle.is_vertex(p, V)}
    rep = oracle.montecarlo_membership(w, samples, tol, seed)
    checks["membership"] = {
        "samples": rep.samples,
        "max_violation": serialize.float_or_none(rep.max_violation),
        "seed": rep.seed,
        "tolerance": rep.tolerance,
        "pass": rep.passed,
    }
    if w.group.is_orthogonal and not report["condition_star"]:
        rc = oracle.distinguished_check(w)
        checks["distinguished_coordinate"] = {
            "box": None if rc.box is None else serialize.box(rc.box),
            "lp_max": None if rc.lp_max is None else serialize.rat(rc.lp_max),
            "lp_min": None if rc.lp_min is None else serialize.rat(rc.lp_min),
            "pass": rc.ok,
        }
    if psi is not None:
        dev = oracle.psi_symplectic_check(int(psi), psi_points, seed)
        checks["psi"] = {
            "N": int(psi),
            "points": psi_points,
            "max_deviation": dev,
            "tolerance": oracle.JACOBIAN_TOL,
            "pass": dev < oracle.JACOBIAN_TOL,
        }
    report["checks"] = checks
    report["pass"] = all(c["pass"] for c in checks.values())
    return report


def run_job(job: dict):
    """``(exit_code, report)`` for one job; never raises."""
    try:
        if not isinstance(job, dict):
            raise BadInput("job must be a JSON object")
        cmd = job.get("command", "bound")
        if cmd not in COMMANDS:
            raise BadInput(f"unknown command {cmd!r}")
        w = parse_weight(job.get("group"), job.get("n"), job.get("lambda", []))
        opts = job.get("options") or {}
        if cmd == "bound":
            return EXIT_OK, run_bound(w)
        if cmd == "certificate":
            return EXIT_OK, run_certificate(w, opts.get("emit_hrep"))
        seed = opts.get("seed")
        report = run_verify(
            w,
            samples=int(opts.get("samples", 1000)),
            tol=float(opts.get("tol", oracle.MEMBERSHIP_TOL)),
            seed=default_seed() if seed is None else int(seed),
            psi=opts.get("psi"),
        )
        return (EXIT_OK if report["pass"] else EXIT_FAIL), report
    except PointOrbit as exc:
        return EXIT_POINT, error_report(exc, EXIT_POINT, "orbit is a point")
    except InternalInvariantError as exc:
        return EXIT_INTERNAL, error_report(exc, EXIT_INTERNAL)
    except (InvalidWeight, BadInput, ValueError, TypeError) as exc:
        return EXIT_INPUT, error_report(exc, EXIT_INPUT)


def error_report(exc, code, message=None) -> dict:
    text = str(exc) if message is None else f"{message} ({exc})"
    return {"command": "error", "error": type(exc).__name__, "message": text, "exit_code": code}


# --- argparse ------------------------------------------------------------------


def _add_weight_args(sp):
    sp.add_argument("group", help="u, so-odd or so-even")
    sp.add_argument("n", help="rank n (lambda has n entries)")
    sp.add_argument("weight", help="comma separated entries, integers or p/q")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gtwidth", description="Gromov width lower bounds from Gelfand-Tsetlin polytopes.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("bound", help="r, r' and dimensions")
    _add_weight_args(sp)

    sp = sub.add_parser("certificate", help="vertex, edge matrix and simplex")
    _add_weight_args(sp)
    sp.add_argument("--emit-hrep", metavar="PATH", help="also write the H-representation")

    sp = sub.add_parser("verify", help="run the exact and sampling oracles")
    _add_weight_args(sp)
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--tol", type=float, default=oracle.MEMBERSHIP_TOL)
    sp.add_argument("--seed", type=int, default=None, help="default: $GTWIDTH_SEED or 0")
    sp.add_argument("--psi", type=int, metavar="N", help="also check the map psi in dimension 2N")

    sp = sub.add_parser("batch", help="one JSON job per line in, one report per line out")
    sp.add_argument("--input", required=True)
    sp.add_argument("--output", required=True)
    sp.add_argument("--jobs", type=int, default=1)
    return ap


def _job_from_args(args) -> dict:
    job = {"command": args.command, "group": args.group, "n": args.n, "lambda": args.weight}
    if args.command == "certificate":
        job["options"] = {"emit_hrep": args.emit_hrep}
    elif args.command == "verify":
        job["options"] = {"samples": args.samples, "tol": args.tol, "seed": args.seed, "psi": args.psi}
    return job


def run_batch(inp, out, jobs: int) -> int:
    lines = Path(inp).read_text().splitlines()
    parsed = []
    for line in lines:
        if not line.strip():
            continue
        try:
            parsed.append(json.loads(line))
        except json.JSONDecodeError as exc:
            parsed.append({"__bad__": str(exc)})

    def results():
        todo = [j for j in parsed if "__bad__" not in j]
        if jobs > 1 and len(todo) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as ex:
                done = iter(ex.map(run_job, todo))
        else:
            done = iter(map(run_job, todo))
        for j in parsed:
            if "__bad__" in j:
                yield EXIT_INPUT, error_report(BadInput(j["__bad__"]), EXIT_INPUT)
            else:
                yield next(done)

    worst = EXIT_OK
    with open(out, "w") as fh:
        for code, report in results():
            report = {**report, "exit_code": code}
            fh.write(serialize.dumps(report) + "\n")
            worst = max(worst, code)
    return worst


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "batch":
        try:
            return run_batch(args.input, args.output, max(1, args.jobs))
        except OSError as exc:
            print(f"gtwidth: {exc}", file=sys.stderr)
            return EXIT_INPUT
    try:
        default_seed()
    except BadInput as exc:
        print(f"gtwidth: {exc}", file=sys.stderr)
        return EXIT_INPUT
    code, report = run_job(_job_from_args(args))
    if report.get("command") == "error":
        print(f"gtwidth: {report['message']}", file=sys.stderr)
    print(json.dumps(report, sort_keys=True, indent=2))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
