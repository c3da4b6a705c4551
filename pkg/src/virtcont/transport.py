"""Optimal transportation on one metric space, with dual certificates.

kantorovich moves mu1 to mu2 at metric cost; the common mass stays in place
(valid whenever the cost satisfies the triangle inequality) and only the
Jordan decomposition of mu1 - mu2 is shipped.  The Lipschitz potential comes
from a c-transform of the transportation duals, so complementary slackness
holds exactly on the support of the optimal plan.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .flows import InfeasibleError, TransportationInstance, solve_transportation
from .model import (MetricMatrix, Number, Plan, ValidationError, all_exact,
                    close, validate_semimetric)


@dataclass
class TransportResult:
    cost: Number
    plan: Plan             # marginals mu1, mu2
    potential: list        # u with |u(x)-u(y)| <= rho(x,y), u(0) = 0


@dataclass
class KrNormResult:
    value: Number
    potential: list        # 1-Lipschitz, pairs with the signed vector to value
    plan: list             # ships the positive part onto the negative part


@dataclass
class TwoLevelReport:
    primal: Number         # inf over plans of the rho-cost
    dual: Number           # sup of mu.w1 + nu.w2 with w1 + w2 <= rho
    gap: Number
    plan: list
    w1: list
    w2: list


def _check_metric(rho: MetricMatrix, tol: float):
    kind, witness = validate_semimetric(rho, tol)
    if kind == "invalid":
        raise ValidationError(f"invalid semimetric: {witness}")


def kantorovich(mu1, mu2, rho: MetricMatrix, tol: float = 1e-9) -> TransportResult:
    """Optimal plan and Lipschitz dual potential between two weight vectors."""
    n = rho.space.size
    mu1, mu2 = list(mu1), list(mu2)
    if len(mu1) != n or len(mu2) != n:
        raise ValidationError("weight vectors do not match the space")
    exact = all_exact(mu1 + mu2) and all(all_exact(r) for r in rho.dist)
    zero = Fraction(0) if exact else 0.0
    _check_metric(rho, tol)
    if not close(sum(mu1), sum(mu2), tol):
        raise InfeasibleError("marginal totals differ")

    common = [min(a, b) for a, b in zip(mu1, mu2)]
    pos = [a - c for a, c in zip(mu1, common)]   # excess to ship out
    neg = [b - c for b, c in zip(mu2, common)]   # deficit to fill
    mass = [[zero] * n for _ in range(n)]
    for i, cm in enumerate(common):
        mass[i][i] += cm
    moved = sum(pos, zero)
    if (moved > 0) if exact else moved > tol:
        inst = TransportationInstance(pos, neg, rho.dist, mode="min-cost")
        res = solve_transportation(inst)
        cost = res.value
        for i in range(n):
            for j in range(n):
                mass[i][j] += res.plan[i][j]
        v = res.v
    else:
        cost = zero
        v = [zero] * n
    # c-transform of the sink potential: 1-Lipschitz by the triangle inequality,
    # tight on the support of the shipped mass
    u = [min(rho.dist[i][k] - v[k] for k in range(n)) for i in range(n)]
    shift = u[0]
    u = [x - shift for x in u]
    plan = Plan(rho.space, rho.space, mass)
    return TransportResult(cost, plan, u)


def kr_norm(signed, rho: MetricMatrix, tol: float = 1e-9) -> KrNormResult:
    """Transport-cost norm of a balanced signed weight vector."""
    signed = list(signed)
    exact = all_exact(signed) and all(all_exact(r) for r in rho.dist)
    zero = Fraction(0) if exact else 0.0
    if not close(sum(signed), zero, tol):
        raise ValidationError("signed weights do not sum to zero")
    _check_metric(rho, tol)
    pos = [max(s, zero) for s in signed]
    neg = [max(-s, zero) for s in signed]
    n = rho.space.size
    total = sum(pos, zero)
    if (total == 0) if exact else total <= tol:
        return KrNormResult(zero, [zero] * n, [[zero] * n for _ in range(n)])
    inst = TransportationInstance(pos, neg, rho.dist, mode="min-cost")
    res = solve_transportation(inst)
    u = [min(rho.dist[i][k] - res.v[k] for k in range(n)) for i in range(n)]
    shift = u[0]
    u = [x - shift for x in u]
    return KrNormResult(res.value, u, res.plan)


def two_level_duality_check(rho_matrix, mu, nu, z=None,
                            tol: float = 1e-9) -> TwoLevelReport:
    """Equality of the plan-cost infimum and the separable-minorant supremum.

    rho_matrix is any finite cost matrix over X x Y atoms; the primal ships mu
    to nu at that cost, the dual maximizes mu.w1 + nu.w2 subject to
    w1(i) + w2(j) <= rho(i,j).  An optional z = (z1, z2) of positive factor
    reweightings replaces the marginals by (z1*mu, z2*nu); the default is the
    all-ones pair.
    """
    mu, nu = list(mu), list(nu)
    if z is not None:
        z1, z2 = z
        if any(not v > 0 for v in list(z1) + list(z2)):
            raise ValidationError("reweighting factors must be positive")
        mu = [a * b for a, b in zip(z1, mu)]
        nu = [a * b for a, b in zip(z2, nu)]
    rho = [list(r) for r in rho_matrix]
    if len(rho) != len(mu) or any(len(r) != len(nu) for r in rho):
        raise ValidationError("cost matrix dimensions do not match weights")
    inst = TransportationInstance(mu, nu, rho, mode="min-cost")
    res = solve_transportation(inst)
    dual = sum(m * w for m, w in zip(mu, res.u)) + sum(m * w for m, w in zip(nu, res.v))
    return TwoLevelReport(res.value, dual, res.value - dual, res.plan, res.u, res.v)


def verify_transport_result(mu1, mu2, rho: MetricMatrix, res: TransportResult,
                            tol: float = 1e-9) -> list[str]:
    """Solver-independent certificate check for a kantorovich result."""
    problems = []
    n = rho.space.size
    exact = all_exact(list(mu1) + list(mu2)) and all(all_exact(r) for r in rho.dist)

    def eq(x, y):
        return (x == y) if exact else abs(x - y) <= tol

    rows = res.plan.row_marginals()
    cols = res.plan.col_marginals()
    if not all(eq(r, m) for r, m in zip(rows, mu1)):
        problems.append("plan row marginals != mu1")
    if not all(eq(c, m) for c, m in zip(cols, mu2)):
        problems.append("plan column marginals != mu2")
    u = res.potential
    for i in range(n):
        for j in range(n):
            gap = rho.dist[i][j] - abs(u[i] - u[j])
            if (gap < 0) if exact else gap < -tol:
                problems.append(f"potential not 1-Lipschitz at ({i},{j})")
    support_resid = max(
        (abs(u[i] - u[j] - rho.dist[i][j])
         for i in range(n) for j in range(n)
         if i != j and res.plan.mass[i][j] > (0 if exact else tol)),
        default=0)
    if not eq(support_resid, 0):
        problems.append(f"complementary slackness residual {support_resid}")
    pairing = sum(ui * (a - b) for ui, a, b in zip(u, mu1, mu2))
    if not eq(pairing, res.cost):
        problems.append("dual pairing != cost")
    plan_cost = sum(rho.dist[i][j] * res.plan.mass[i][j]
                    for i in range(n) for j in range(n))
    if not eq(plan_cost, res.cost):
        problems.append("plan cost != reported cost")
    return problems
