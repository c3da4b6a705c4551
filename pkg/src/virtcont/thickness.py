"""Thickness of product sets.

The thickness of Z in X x Y is the least weight mu(X~) + nu(Y~) of a cross
cover (X~ x Y) u (X x Y~) containing Z.  On atomic spaces this is exactly a
weighted bipartite vertex cover, solved by max-flow; the fractional relaxation
attains the same optimum (total unimodularity), so the integral cover doubles
as the optimal fractional pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .flows import BipartiteCoverInstance, min_weighted_vertex_cover
from .model import (Number, ProductFunction, ProductSet, ValidationError,
                    all_exact, level_set)

BRUTE_FORCE_LIMIT = 22


@dataclass
class ThicknessResult:
    value: Number
    cover_x: list          # indices of X-atoms in the cover
    cover_y: list          # indices of Y-atoms in the cover
    fractional_f: list     # per-X values in [0,1]
    fractional_g: list     # per-Y values in [0,1]
    flow: list             # max-flow certificate aligned with member cells
    cells: list            # member cells, sorted


def thickness(z: ProductSet) -> ThicknessResult:
    """Exact minimum cover weight with integral and fractional certificates."""
    mu, nu = z.x_space.weights, z.y_space.weights
    zero = Fraction(0) if all_exact(mu + nu) else 0.0
    one = zero + 1
    cells = sorted(z.cells())
    if not cells:
        return ThicknessResult(zero, [], [],
                               [zero] * len(mu), [zero] * len(nu), [], [])
    inst = BipartiteCoverInstance(mu, nu, cells)
    res = min_weighted_vertex_cover(inst)
    f = [one if i in set(res.rows) else zero for i in range(len(mu))]
    g = [one if j in set(res.cols) else zero for j in range(len(nu))]
    return ThicknessResult(res.value, res.rows, res.cols, f, g,
                           res.flow, list(inst.edges))


def thickness_bruteforce(z: ProductSet) -> Number:
    """Independent oracle: scan all row subsets; for each, the cheapest valid
    column set is forced (columns of cells whose row is uncovered)."""
    nr, nc = z.x_space.size, z.y_space.size
    if nr + nc > BRUTE_FORCE_LIMIT:
        raise ValidationError(
            f"instance too large for brute force (|X|+|Y| = {nr + nc} > {BRUTE_FORCE_LIMIT})")
    mu, nu = z.x_space.weights, z.y_space.weights
    zero = Fraction(0) if all_exact(mu + nu) else 0.0
    colmask = [0] * nr
    for (i, j) in z.cells():
        colmask[i] |= 1 << j
    # subset weights by popcount-accumulation
    def subset_weights(weights):
        table = [zero] * (1 << len(weights))
        for s in range(1, 1 << len(weights)):
            low = (s & -s).bit_length() - 1
            table[s] = table[s & (s - 1)] + weights[low]
        return table

    wrow = subset_weights(mu)
    wcol = subset_weights(nu)
    best = None
    for rows in range(1 << nr):
        forced = 0
        for i in range(nr):
            if not (rows >> i) & 1:
                forced |= colmask[i]
        total = wrow[rows] + wcol[forced]
        if best is None or total < best:
            best = total
    return best


def thickness_of_level_set(f: ProductFunction, lam: Number) -> Number:
    """th({|f| >= lam}), the integrand of the layer-cake bound."""
    return thickness(level_set(f.abs(), lam, ">=")).value


def verify_thickness_result(z: ProductSet, res: ThicknessResult,
                            tol: float = 1e-9) -> list[str]:
    """Re-check a thickness certificate without the solver; list of violations."""
    problems = []
    mu, nu = z.x_space.weights, z.y_space.weights
    cx, cy = set(res.cover_x), set(res.cover_y)
    for (i, j) in z.cells():
        if i not in cx and j not in cy:
            problems.append(f"cell ({i},{j}) not covered")
    total = sum(mu[i] for i in cx) + sum(nu[j] for j in cy)
    exact = all_exact(mu + nu)
    if (total != res.value) if exact else abs(total - res.value) > tol:
        problems.append(f"cover weight {total} != reported value {res.value}")
    for (i, j) in z.cells():
        s = res.fractional_f[i] + res.fractional_g[j]
        if (s < 1) if exact else s < 1 - tol:
            problems.append(f"fractional pair below 1 on cell ({i},{j})")
    fw = sum(w * v for w, v in zip(mu, res.fractional_f)) + \
        sum(w * v for w, v in zip(nu, res.fractional_g))
    if (fw != res.value) if exact else abs(fw - res.value) > tol:
        problems.append("fractional pair weight != value")
    return problems


def cover_lp_data(z: ProductSet):
    """The fractional cover LP in max-form for the dense oracle.

    Variables (f_1..f_nr, g_1..g_nc); maximize -(mu.f + nu.g) subject to
    -f_i - g_j <= -1 on member cells and f, g <= 1.
    """
    nr, nc = z.x_space.size, z.y_space.size
    mu, nu = z.x_space.weights, z.y_space.weights
    nvar = nr + nc
    A, b = [], []
    one = Fraction(1) if all_exact(mu + nu) else 1.0
    for (i, j) in sorted(z.cells()):
        row = [0] * nvar
        row[i] = -one
        row[nr + j] = -one
        A.append(row)
        b.append(-one)
    for k in range(nvar):
        row = [0] * nvar
        row[k] = one
        A.append(row)
        b.append(one)
    c = [-w for w in mu] + [-w for w in nu]
    return A, b, c
