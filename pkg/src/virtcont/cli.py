"""Command-line front end: parse inputs, dispatch, emit deterministic reports.

Every duality-backed command re-verifies its own certificates through the
same independent checker exposed by the `check` subcommand before printing
anything; a failed re-check is an internal invariant violation (exit 2),
while malformed inputs exit 1.  Reports are byte-stable for a fixed input,
mode, and seed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .checkers import _CHECKS, check_report
from .coupling import max_bistochastic_mass
from .fileio import (dumps_matrix, function_to_obj, jsonable, load_matrix,
                     load_metric, load_vector, metric_to_obj, plan_to_obj,
                     set_to_obj, space_to_obj)
from .flows import InfeasibleError
from .model import (DEFAULT_TOL, Plan, ProductFunction, ProductSet,
                    ValidationError, all_exact, parse_number)
from .srnorm import sr_norm
from .tau import tau_distance
from .thickness import thickness
from .transport import kantorovich, kr_norm
from .vcdiag import (FAMILIES, matrix_distribution_exact,
                     matrix_distribution_sample, refinement_study,
                     step_fit_exists, vc_profile)


class _CliParser(argparse.ArgumentParser):
    def error(self, message):  # malformed invocations are input errors
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _add_global_flags(p, suppress: bool):
    # the same flags hang off the main parser and every subparser so they can
    # appear on either side of the subcommand; subparsers must not clobber
    # values already parsed, hence SUPPRESS defaults there
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--mode", choices=("exact", "float"),
                   default=d or "exact",
                   help="arithmetic regime (default: exact rationals)")
    p.add_argument("--tol", type=float, default=d or DEFAULT_TOL,
                   help="tolerance for float mode (default 1e-9)")
    p.add_argument("--seed", type=int, default=d or 0,
                   help="seed for sampling and heuristic restarts")
    p.add_argument("--format", choices=("json", "csv", "text"),
                   default=d or "json", help="report format (default json)")


def _build_parser() -> argparse.ArgumentParser:
    p = _CliParser(prog="virtcont",
                   description="Thickness, tau-distance, regulator norms, "
                               "transport duality, and step-fit diagnostics "
                               "on finite product measure spaces.")
    _add_global_flags(p, suppress=False)
    sub = p.add_subparsers(dest="command", required=True,
                           parser_class=_CliParser)

    s = sub.add_parser("thickness", help="minimal cross-cover weight of a set")
    s.add_argument("set", help="product set CSV")
    s = sub.add_parser("tau", help="tau-distance between two functions")
    s.add_argument("f")
    s.add_argument("g")
    s = sub.add_parser("srnorm", help="separable-regulator norm with dual plan")
    s.add_argument("function")
    s = sub.add_parser("hall", help="maximal bistochastic mass on a set")
    s.add_argument("set")
    s = sub.add_parser("transport", help="optimal transport between two weightings")
    s.add_argument("metric")
    s.add_argument("mu1")
    s.add_argument("mu2")
    s = sub.add_parser("krnorm", help="transport norm of a balanced signed vector")
    s.add_argument("metric")
    s.add_argument("signed")
    s = sub.add_parser("stepfit", help="N-block step fit within eps, if any")
    s.add_argument("function")
    s.add_argument("--blocks", type=int, required=True)
    s.add_argument("--eps", required=True)
    s = sub.add_parser("vcprofile", help="least eps admitting an N-block step fit")
    s.add_argument("function")
    s.add_argument("--blocks", type=int, required=True)
    s = sub.add_parser("refine", help="profile of a study family across grids")
    s.add_argument("--family", choices=FAMILIES, required=True)
    s.add_argument("--grids", required=True, help="comma-separated grid sizes")
    s.add_argument("--blocks", type=int, required=True)
    s = sub.add_parser("matdist", help="distance-matrix distribution of a metric")
    s.add_argument("metric")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--samples", type=int, default=None,
                   help="draw this many seeded samples instead of enumerating")
    s = sub.add_parser("check", help="re-verify the certificates in a report")
    s.add_argument("report", help="previously emitted JSON report")
    for child in sub.choices.values():
        _add_global_flags(child, suppress=True)
    return p


# ------------------------------------------------------------------ commands

def _fit_obj(fit):
    return {"x_blocks": fit.x_blocks, "y_blocks": fit.y_blocks,
            "levels": fit.levels, "epsilon": fit.epsilon, "exact": fit.exact}


def _run_thickness(args, exact):
    z = load_matrix(args.set, exact)
    if not isinstance(z, ProductSet):
        raise ValidationError("thickness expects a set matrix")
    res = thickness(z)
    zero = res.value * 0
    mass = [[zero] * z.y_space.size for _ in range(z.x_space.size)]
    for (i, j), fl in zip(res.cells, res.flow):
        mass[i][j] = fl
    plan = Plan(z.x_space, z.y_space, mass)
    return {"value": res.value, "primal": res.value, "dual": plan.total(),
            "gap": res.value - plan.total(),
            "cover_x": res.cover_x, "cover_y": res.cover_y,
            "fractional_f": res.fractional_f, "fractional_g": res.fractional_g,
            "plan": plan_to_obj(plan), "inputs": {"set": set_to_obj(z)}}


def _run_tau(args, exact):
    f = load_matrix(args.f, exact)
    g = load_matrix(args.g, exact)
    if not isinstance(f, ProductFunction) or not isinstance(g, ProductFunction):
        raise ValidationError("tau expects two function matrices")
    res = tau_distance(f, g)
    return {"value": res.value,
            "witness_set_thickness": res.witness_set_thickness,
            "inputs": {"f": function_to_obj(f), "g": function_to_obj(g)}}


def _run_srnorm(args, exact):
    f = load_matrix(args.function, exact)
    if not isinstance(f, ProductFunction):
        raise ValidationError("srnorm expects a function matrix")
    res = sr_norm(f)
    return {"value": res.value, "primal": res.value, "dual": res.dual_value,
            "dual_value": res.dual_value, "gap": res.value - res.dual_value,
            "majorant": {"a": list(res.majorant.a), "b": list(res.majorant.b)},
            "dual_plan": plan_to_obj(res.dual_plan),
            "inputs": {"function": function_to_obj(f)}}


def _run_hall(args, exact):
    z = load_matrix(args.set, exact)
    if not isinstance(z, ProductSet):
        raise ValidationError("hall expects a set matrix")
    res = max_bistochastic_mass(z)
    cert = res.thickness_certificate
    return {"mass": res.mass, "thickness_value": cert.value,
            "primal": res.mass, "dual": cert.value, "gap": cert.value - res.mass,
            "cover_x": cert.cover_x, "cover_y": cert.cover_y,
            "plan": plan_to_obj(res.plan), "inputs": {"set": set_to_obj(z)}}


def _run_transport(args, exact, tol):
    rho = load_metric(args.metric, exact)
    mu1 = load_vector(args.mu1, exact)
    mu2 = load_vector(args.mu2, exact)
    res = kantorovich(mu1, mu2, rho, tol)
    dual = sum(u * (a - b) for u, a, b in zip(res.potential, mu1, mu2))
    return {"cost": res.cost, "primal": res.cost, "dual": dual,
            "gap": res.cost - dual, "potential": res.potential,
            "plan": plan_to_obj(res.plan),
            "inputs": {"metric": metric_to_obj(rho), "mu1": mu1, "mu2": mu2}}


def _run_krnorm(args, exact, tol):
    rho = load_metric(args.metric, exact)
    signed = load_vector(args.signed, exact)
    res = kr_norm(signed, rho, tol)
    dual = sum(u * s for u, s in zip(res.potential, signed))
    return {"value": res.value, "primal": res.value, "dual": dual,
            "gap": res.value - dual, "potential": res.potential,
            "plan": res.plan,
            "inputs": {"metric": metric_to_obj(rho), "signed": signed}}


def _run_stepfit(args, exact, seed):
    f = load_matrix(args.function, exact)
    if not isinstance(f, ProductFunction):
        raise ValidationError("stepfit expects a function matrix")
    eps = parse_number(args.eps, exact)
    fit = step_fit_exists(f, args.blocks, eps, seed)
    rep = {"found": fit is not None, "blocks": args.blocks, "epsilon": eps,
           "inputs": {"function": function_to_obj(f)}}
    if fit is not None:
        rep["fit"] = _fit_obj(fit)
    return rep


def _run_vcprofile(args, exact, seed):
    f = load_matrix(args.function, exact)
    if not isinstance(f, ProductFunction):
        raise ValidationError("vcprofile expects a function matrix")
    res = vc_profile(f, args.blocks, seed)
    return {"value": res.value, "exact_optimum": res.exact,
            "blocks": args.blocks, "witness": _fit_obj(res.witness),
            "inputs": {"function": function_to_obj(f)}}


def _run_refine(args, seed):
    try:
        grids = [int(s) for s in args.grids.split(",")]
    except ValueError:
        raise ValidationError("grid sizes must be comma-separated integers") from None
    table = refinement_study(args.family, grids, args.blocks, seed)
    return {"family": args.family, "blocks": args.blocks, "table": table}


def _run_matdist(args, exact, seed):
    rho = load_metric(args.metric, exact)
    if args.samples is None:
        dist = matrix_distribution_exact(rho, args.order)
        support = [{"matrix": [list(row) for row in mat], "probability": p}
                   for mat, p in dist.support]
        return {"order": dist.k, "support": support,
                "inputs": {"metric": metric_to_obj(rho)}}
    mats = matrix_distribution_sample(rho, args.order, args.samples, seed)
    return {"order": args.order, "count": args.samples, "seed": seed,
            "samples": [[list(row) for row in mat] for mat in mats]}


def _run_check(args, tol):
    try:
        with open(args.report, "r", encoding="utf-8") as fh:
            rep = json.load(fh)
    except OSError as e:
        raise ValidationError(f"cannot read {args.report}: {e}") from None
    except json.JSONDecodeError as e:
        raise ValidationError(f"{args.report}: bad JSON: {e}") from None
    violations = check_report(rep, tol)
    return {"checked_command": rep.get("command"), "violations": violations}


# ------------------------------------------------------------------ emission

def _report_csv(rep) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if "table" in rep:
        writer.writerow(["n", "blocks", "value", "kind"])
        for row in rep["table"]:
            writer.writerow([row["n"], row["blocks"], row["value"], row["kind"]])
        return buf.getvalue()
    if "plan" in rep and isinstance(rep["plan"], dict):
        plan = rep["plan"]
        writer.writerow([""] + list(plan["y_space"]["labels"]))
        for label, row in zip(plan["x_space"]["labels"], plan["mass"]):
            writer.writerow([label] + list(row))
        return buf.getvalue()
    raise ValidationError("csv format needs a matrix or table payload")


def _report_text(rep) -> str:
    lines = []
    for key in sorted(rep):
        val = rep[key]
        if isinstance(val, (dict, list)):
            lines.append(f"{key}: {json.dumps(val, sort_keys=True)}")
        else:
            lines.append(f"{key}: {val}")
    return "\n".join(lines) + "\n"


def emit_report(rep: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rep, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        return _report_csv(rep)
    return _report_text(rep)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    exact = args.mode == "exact"
    tol = args.tol
    if not tol > 0:
        print("error: tolerance must be positive", file=sys.stderr)
        return 1
    try:
        if args.command == "thickness":
            rep = _run_thickness(args, exact)
        elif args.command == "tau":
            rep = _run_tau(args, exact)
        elif args.command == "srnorm":
            rep = _run_srnorm(args, exact)
        elif args.command == "hall":
            rep = _run_hall(args, exact)
        elif args.command == "transport":
            rep = _run_transport(args, exact, tol)
        elif args.command == "krnorm":
            rep = _run_krnorm(args, exact, tol)
        elif args.command == "stepfit":
            rep = _run_stepfit(args, exact, args.seed)
        elif args.command == "vcprofile":
            rep = _run_vcprofile(args, exact, args.seed)
        elif args.command == "refine":
            rep = _run_refine(args, args.seed)
        elif args.command == "matdist":
            rep = _run_matdist(args, exact, args.seed)
        else:
            rep = _run_check(args, tol)
    except (ValidationError, InfeasibleError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1

    rep["mode"] = args.mode
    rep["tolerance"] = tol
    rep["command"] = args.command
    rep = jsonable(rep)
    if args.command in _CHECKS:
        violations = check_report(rep, tol)
        if violations:
            print("internal invariant violation:", file=sys.stderr)
            for v in violations:
                print(f"  {v}", file=sys.stderr)
            return 2
    if args.command == "check" and rep["violations"]:
        sys.stdout.write(emit_report(rep, args.format))
        return 2
    sys.stdout.write(emit_report(rep, args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
