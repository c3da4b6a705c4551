"""The separable-regulator norm and its subbistochastic dual.

Primal: the least integral of a separable majorant a(x) + b(y) >= |f(x,y)|.
Dual: the largest mass-weighted integral of |f| over subbistochastic plans.
Both come out of one max-profit transportation solve (profits |f|, supplies
mu, demands nu, slack marginals); strong duality is exact in rational mode.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .flows import TransportationInstance, solve_transportation
from .model import (Number, Plan, ProductFunction, SeparableMajorant,
                    ValidationError, all_exact, close)
from .thickness import thickness_of_level_set


@dataclass
class SrNormResult:
    value: Number
    majorant: SeparableMajorant
    dual_plan: Plan        # mass lambda_ij = h_ij * mu_i * nu_j, subbistochastic
    dual_value: Number


def sr_norm(f: ProductFunction) -> SrNormResult:
    """Optimal majorant and subbistochastic witness for |f|.

    The dual potentials of the transportation solve give the majorant; they
    are shifted so that min(a) = 0 (the optimum is invariant under the
    exchange (a + c, b - c)).
    """
    mu, nu = f.x_space.weights, f.y_space.weights
    absf = [[abs(v) for v in row] for row in f.values]
    inst = TransportationInstance(mu, nu, absf, mode="max-profit")
    res = solve_transportation(inst)
    a, b = list(res.u), list(res.v)
    shift = min(a)
    a = [v - shift for v in a]
    b = [max(v + shift, v * 0) for v in b]
    majorant = SeparableMajorant(a, b)
    plan = Plan(f.x_space, f.y_space, res.plan)
    dual_value = sum(absf[i][j] * res.plan[i][j]
                     for i in range(f.x_space.size) for j in range(f.y_space.size))
    primal_value = majorant.weight(f.x_space, f.y_space)
    return SrNormResult(primal_value, majorant, plan, dual_value)


def layer_cake_integral(f: ProductFunction) -> Number:
    """Integral over lam of th({|f| >= lam}): piecewise constant, summed exactly."""
    zero = Fraction(0) if all(all_exact(row) for row in f.values) else 0.0
    levels = sorted({abs(v) for row in f.values for v in row} - {zero})
    total = zero
    prev = zero
    for w in levels:
        total += (w - prev) * thickness_of_level_set(f, w)
        prev = w
    return total


def cutoff(f: ProductFunction, n: Number) -> ProductFunction:
    """Two-sided cut-off: clamp entries to [-N, N]."""
    if n < 0:
        raise ValidationError("cut-off level must be nonnegative")
    return f.map(lambda v: min(max(v, -n), n))


def nuclear_bound(rank_one_terms, x_space, y_space):
    """Trace-norm bound for a kernel sum s_k * u_k(x) * v_k(y).

    Requires each factor normalized in its weighted 2-norm.  Returns
    (sum |s_k|, explicit majorant (sum |s_k| u_k^2)/2 + (sum |s_k| v_k^2)/2),
    which dominates |K| pointwise by AM-GM.
    """
    mu, nu = x_space.weights, y_space.weights
    zero = Fraction(0)
    for (s, u, v) in rank_one_terms:
        un = sum(w * q * q for w, q in zip(mu, u))
        vn = sum(w * q * q for w, q in zip(nu, v))
        if not close(un, 1) or not close(vn, 1):
            raise ValidationError("rank-one factors must be normalized in the weighted 2-norm")
    bound = sum((abs(s) for (s, _, _) in rank_one_terms), zero)
    a = [sum(abs(s) * u[i] * u[i] for (s, u, _) in rank_one_terms) / 2
         for i in range(x_space.size)]
    b = [sum(abs(s) * v[j] * v[j] for (s, _, v) in rank_one_terms) / 2
         for j in range(y_space.size)]
    if not rank_one_terms:
        a = [zero] * x_space.size
        b = [zero] * y_space.size
    return bound, SeparableMajorant(a, b)


def kernel_from_terms(rank_one_terms, x_space, y_space) -> ProductFunction:
    zero = Fraction(0)
    values = [[sum((s * u[i] * v[j] for (s, u, v) in rank_one_terms), zero)
               for j in range(y_space.size)] for i in range(x_space.size)]
    return ProductFunction(x_space, y_space, values)


def verify_sr_certificates(f: ProductFunction, res: SrNormResult,
                           tol: float = 1e-9) -> list[str]:
    """Solver-independent re-check of both optimality certificates."""
    problems = []
    exact = all(all_exact(row) for row in f.values) and \
        all_exact(f.x_space.weights + f.y_space.weights)

    def eq(x, y):
        return (x == y) if exact else abs(x - y) <= tol

    if not res.majorant.dominates(f, tol):
        problems.append("majorant does not dominate |f|")
    if not eq(res.majorant.weight(f.x_space, f.y_space), res.value):
        problems.append("majorant weight != reported value")
    if not res.dual_plan.is_subbistochastic(tol):
        problems.append("dual plan is not subbistochastic")
    pairing = sum(abs(f[i, j]) * res.dual_plan.mass[i][j]
                  for i in range(f.x_space.size) for j in range(f.y_space.size))
    if not eq(pairing, res.value):
        problems.append("dual pairing != reported value (duality gap)")
    return problems
