"""Solver-independent re-verification of emitted reports.

Every duality-backed report carries both sides of the duality (a cover and a
plan, a majorant and a plan, a plan and a potential).  Checking feasibility
of both sides plus value equality certifies optimality by weak duality, with
no reference to how the solver found them.
"""

from __future__ import annotations

from .fileio import (_parse_weight, function_from_obj, metric_from_obj,
                     plan_from_obj, set_from_obj, space_from_obj)
from .model import DEFAULT_TOL, ValidationError, all_exact, close, level_set, nonneg
from .model import Plan, SeparableMajorant
from .srnorm import SrNormResult, verify_sr_certificates
from .thickness import ThicknessResult, verify_thickness_result
from .transport import TransportResult, verify_transport_result
from .vcdiag import StepFit, step_fit_violations


def _nums(seq, exact):
    return [_parse_weight(v, exact) for v in seq]


def _check_thickness(rep, exact, tol):
    z = set_from_obj(rep["inputs"]["set"], exact)
    value = _parse_weight(rep["value"], exact)
    res = ThicknessResult(value, list(rep["cover_x"]), list(rep["cover_y"]),
                          _nums(rep["fractional_f"], exact),
                          _nums(rep["fractional_g"], exact), [], [])
    problems = verify_thickness_result(z, res, tol)
    plan = plan_from_obj(rep["plan"], exact)
    if not plan.is_subbistochastic(tol):
        problems.append("witness plan is not subbistochastic")
    member = set(z.cells())
    on_z = plan.mass[0][0] * 0
    off_z = on_z
    for i in range(z.x_space.size):
        for j in range(z.y_space.size):
            if (i, j) in member:
                on_z += plan.mass[i][j]
            else:
                off_z += abs(plan.mass[i][j])
    if not close(off_z, 0, tol):
        problems.append("witness plan carries mass off the set")
    if not close(on_z, value, tol):
        problems.append("witness plan mass != cover weight (duality gap)")
    return problems


def _check_hall(rep, exact, tol):
    z = set_from_obj(rep["inputs"]["set"], exact)
    mass = _parse_weight(rep["mass"], exact)
    th = _parse_weight(rep["thickness_value"], exact)
    plan = plan_from_obj(rep["plan"], exact)
    problems = []
    if not plan.is_bistochastic(tol):
        problems.append("plan is not bistochastic")
    on_z = sum((plan.mass[i][j] for (i, j) in z.cells()), plan.mass[0][0] * 0)
    if not close(on_z, mass, tol):
        problems.append("plan mass on set != reported mass")
    if not close(mass, th, tol):
        problems.append("mass != thickness value")
    cx, cy = set(rep["cover_x"]), set(rep["cover_y"])
    for (i, j) in z.cells():
        if i not in cx and j not in cy:
            problems.append(f"cell ({i},{j}) not covered")
            break
    cover_w = (sum((z.x_space.weights[i] for i in cx), on_z * 0)
               + sum((z.y_space.weights[j] for j in cy), on_z * 0))
    if not close(cover_w, th, tol):
        problems.append("cover weight != thickness value")
    return problems


def _check_srnorm(rep, exact, tol):
    f = function_from_obj(rep["inputs"]["function"], exact)
    res = SrNormResult(
        _parse_weight(rep["value"], exact),
        SeparableMajorant(_nums(rep["majorant"]["a"], exact),
                          _nums(rep["majorant"]["b"], exact)),
        plan_from_obj(rep["dual_plan"], exact),
        _parse_weight(rep["dual_value"], exact))
    problems = verify_sr_certificates(f, res, tol)
    if not close(res.value, res.dual_value, tol):
        problems.append("primal value != dual value")
    return problems


def _check_tau(rep, exact, tol):
    f = function_from_obj(rep["inputs"]["f"], exact)
    g = function_from_obj(rep["inputs"]["g"], exact)
    value = _parse_weight(rep["value"], exact)
    witness = _parse_weight(rep["witness_set_thickness"], exact)
    from .thickness import thickness
    d = f.sub(g).abs()
    th = thickness(level_set(d, value, ">")).value
    problems = []
    if not close(th, witness, tol):
        problems.append("witness thickness does not match the exceedance set")
    if not nonneg(value - th, tol):
        problems.append("reported value is not feasible (set too thick)")
    return problems


def _check_transport(rep, exact, tol):
    rho = metric_from_obj(rep["inputs"]["metric"], exact)
    mu1 = _nums(rep["inputs"]["mu1"], exact)
    mu2 = _nums(rep["inputs"]["mu2"], exact)
    res = TransportResult(_parse_weight(rep["cost"], exact),
                          plan_from_obj(rep["plan"], exact),
                          _nums(rep["potential"], exact))
    return verify_transport_result(mu1, mu2, rho, res, tol)


def _check_krnorm(rep, exact, tol):
    rho = metric_from_obj(rep["inputs"]["metric"], exact)
    signed = _nums(rep["inputs"]["signed"], exact)
    value = _parse_weight(rep["value"], exact)
    u = _nums(rep["potential"], exact)
    plan = [_nums(row, exact) for row in rep["plan"]]
    n = rho.space.size
    zero = value * 0
    problems = []
    for i in range(n):
        for j in range(n):
            if not nonneg(rho.dist[i][j] - abs(u[i] - u[j]), tol):
                problems.append(f"potential not 1-Lipschitz at ({i},{j})")
    pairing = sum(ui * s for ui, s in zip(u, signed))
    if not close(pairing, value, tol):
        problems.append("potential pairing != value")
    pos = [max(s, zero) for s in signed]
    neg = [max(-s, zero) for s in signed]
    rows = [sum(plan[i]) for i in range(n)]
    cols = [sum(plan[i][j] for i in range(n)) for j in range(n)]
    if not all(close(r, p, tol) for r, p in zip(rows, pos)):
        problems.append("plan rows != positive part")
    if not all(close(c, q, tol) for c, q in zip(cols, neg)):
        problems.append("plan columns != negative part")
    cost = sum(rho.dist[i][j] * plan[i][j] for i in range(n) for j in range(n))
    if not close(cost, value, tol):
        problems.append("plan cost != value")
    return problems


def _fit_from_obj(obj, exact):
    return StepFit([list(b) for b in obj["x_blocks"]],
                   [list(b) for b in obj["y_blocks"]],
                   [[_parse_weight(v, exact) for v in row] for row in obj["levels"]],
                   _parse_weight(obj["epsilon"], exact),
                   bool(obj["exact"]))


def _check_stepfit(rep, exact, tol):
    if not rep["found"]:
        return []
    f = function_from_obj(rep["inputs"]["function"], exact)
    return step_fit_violations(f, _fit_from_obj(rep["fit"], exact), strict=True)


def _check_vcprofile(rep, exact, tol):
    f = function_from_obj(rep["inputs"]["function"], exact)
    # the witness attains the optimum, so its bounds hold non-strictly
    return step_fit_violations(f, _fit_from_obj(rep["witness"], exact),
                               strict=False)


def _check_matdist(rep, exact, tol):
    if "support" not in rep:
        return []
    probs = [_parse_weight(e["probability"], exact) for e in rep["support"]]
    problems = []
    if any(not nonneg(p, tol) or close(p, 0, tol) for p in probs):
        problems.append("nonpositive probability in support")
    one = 1 if all_exact(probs) else 1.0
    if not close(sum(probs), one, tol):
        problems.append("probabilities do not sum to 1")
    return problems


_CHECKS = {
    "thickness": _check_thickness,
    "hall": _check_hall,
    "srnorm": _check_srnorm,
    "tau": _check_tau,
    "transport": _check_transport,
    "krnorm": _check_krnorm,
    "stepfit": _check_stepfit,
    "vcprofile": _check_vcprofile,
    "matdist": _check_matdist,
}


def check_report(rep: dict, tol: float = DEFAULT_TOL) -> list[str]:
    """Re-verify the certificates inside a report dict; list of violations."""
    cmd = rep.get("command")
    if cmd not in _CHECKS:
        raise ValidationError(f"no certificate checker for command {cmd!r}")
    exact = rep.get("mode", "exact") == "exact"
    return _CHECKS[cmd](rep, exact, tol)
