"""Bistochastic plans: maximal mass on a set, completion, traces, QB norm.

The discrete Hall identity: the largest mass a bistochastic plan can place on
a set Z equals the thickness of Z.  The max-flow that computes thickness also
builds the optimal subbistochastic plan supported on Z; a northwest-corner
fill of the marginal deficits completes it to a bistochastic plan.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .flows import BipartiteCoverInstance, min_weighted_vertex_cover
from .model import (Number, Plan, ProductFunction, ProductSet,
                    ValidationError, all_exact, nonneg)
from .thickness import ThicknessResult, thickness


@dataclass
class HallResult:
    mass: Number
    plan: Plan                       # fully bistochastic
    thickness_certificate: ThicknessResult


def max_bistochastic_mass(z: ProductSet) -> HallResult:
    """max over bistochastic plans of the mass placed on Z; equals th(Z)."""
    mu, nu = z.x_space.weights, z.y_space.weights
    zero = Fraction(0) if all_exact(mu + nu) else 0.0
    cert = thickness(z)
    mass_on_z = [[zero] * z.y_space.size for _ in range(z.x_space.size)]
    for (i, j), fl in zip(cert.cells, cert.flow):
        mass_on_z[i][j] = fl
    sub = Plan(z.x_space, z.y_space, mass_on_z)
    full = complete_to_bistochastic(sub)
    total_on_z = sum(mass_on_z[i][j] for (i, j) in z.cells())
    return HallResult(total_on_z, full, cert)


def complete_to_bistochastic(sub: Plan) -> Plan:
    """Dominating bistochastic plan: route the marginal deficits northwest-corner."""
    if sub.signed:
        raise ValidationError("cannot complete a signed plan")
    if not sub.is_subbistochastic():
        raise ValidationError("input plan is not subbistochastic")
    mu, nu = sub.x_space.weights, sub.y_space.weights
    zero = Fraction(0) if all_exact(mu + nu) else 0.0
    row_def = [w - r for w, r in zip(mu, sub.row_marginals())]
    col_def = [w - c for w, c in zip(nu, sub.col_marginals())]
    mass = [list(row) for row in sub.mass]
    i = j = 0
    nr, nc = sub.x_space.size, sub.y_space.size
    while i < nr and j < nc:
        step = min(row_def[i], col_def[j])
        if step > 0:
            mass[i][j] += step
            row_def[i] -= step   # x - min(x, y) is exactly 0 for the smaller
            col_def[j] -= step
        # advance past exhausted lines; ties advance the row first
        if row_def[i] == 0:
            i += 1
        else:
            j += 1
    return Plan(sub.x_space, sub.y_space, mass)


def integrate_against_plan(f: ProductFunction, plan: Plan) -> Number:
    """Sum of f * mass over atom pairs (signed masses allowed)."""
    if f.shape != (plan.x_space.size, plan.y_space.size):
        raise ValidationError("factor dimension mismatch")
    return sum(f[i, j] * plan.mass[i][j]
               for i in range(f.x_space.size) for j in range(f.y_space.size))


def qb_norm(eta: Plan) -> Number:
    """max of the two marginal-density sup-norms of |eta|."""
    mu, nu = eta.x_space.weights, eta.y_space.weights
    row = max(r / w for r, w in zip(eta.abs_row_marginals(), mu))
    col = max(c / w for c, w in zip(eta.abs_col_marginals(), nu))
    return max(row, col)
