"""Dense two-phase simplex, used only as an independent oracle.

Solves   maximize c.x  subject to  A.x <= b,  x >= 0
with Bland's rule (guaranteed termination) and exact rational pivoting when
the data are Fractions.  Production code paths use the flow solvers; this
module exists to cross-check them.
"""

from __future__ import annotations

from fractions import Fraction

from .model import all_exact

PIVOT_EPS = 1e-11


class LPInfeasible(ValueError):
    pass


class LPUnbounded(ValueError):
    pass


def _pivot(T, basis, r, e):
    piv = T[r][e]
    T[r] = [v / piv for v in T[r]]
    for k in range(len(T)):
        if k != r and T[k][e] != 0:
            coef = T[k][e]
            T[k] = [a - coef * b for a, b in zip(T[k], T[r])]
    basis[r] = e


def _bland(T, basis, ncols, tol):
    """Minimize: pivot while some reduced cost (last row) is negative."""
    m = len(T) - 1
    while True:
        obj = T[-1]
        enter = -1
        for j in range(ncols):
            if obj[j] < -tol:
                enter = j
                break
        if enter < 0:
            return
        leave, best = -1, None
        for r in range(m):
            if T[r][enter] > tol:
                ratio = T[r][-1] / T[r][enter]
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    best, leave = ratio, r
        if leave < 0:
            raise LPUnbounded("objective unbounded")
        _pivot(T, basis, leave, enter)


def dense_lp_solve(A, b, c, tol: float = PIVOT_EPS):
    """Maximize c.x s.t. A.x <= b, x >= 0.  Returns (value, x, y).

    y are the dual multipliers of the rows: y >= 0, y.b = value, y.A >= c.
    Raises LPInfeasible / LPUnbounded.
    """
    m, n = len(A), len(c)
    exact = all_exact(b) and all_exact(c) and all(all_exact(r) for r in A)
    if exact:
        A = [[Fraction(v) for v in row] for row in A]
        b = [Fraction(v) for v in b]
        c = [Fraction(v) for v in c]
        zero, one = Fraction(0), Fraction(1)
        tol = 0
    else:
        A = [[float(v) for v in row] for row in A]
        b = [float(v) for v in b]
        c = [float(v) for v in c]
        zero, one = 0.0, 1.0

    # columns: x (n) | slacks (m) | artificials (for rows with negative rhs)
    row_sign = [one if b[i] >= 0 else -one for i in range(m)]
    art_rows = [i for i in range(m) if b[i] < 0]
    n_art = len(art_rows)
    ncols = n + m + n_art
    art_col = {i: n + m + k for k, i in enumerate(art_rows)}
    T = []
    basis = []
    for i in range(m):
        row = [row_sign[i] * v for v in A[i]]
        slack = [zero] * m
        slack[i] = row_sign[i]
        art = [zero] * n_art
        if i in art_col:
            art[art_col[i] - n - m] = one
        T.append(row + slack + art + [row_sign[i] * b[i]])
        basis.append(art_col[i] if i in art_col else n + i)

    if n_art:
        # phase 1: minimize the sum of artificials
        obj = [zero] * (ncols + 1)
        for i in art_rows:
            obj = [o - t for o, t in zip(obj, T[i])]
        for k in range(n_art):
            obj[n + m + k] = zero
        T.append(obj)
        _bland(T, basis, ncols, tol)
        residue = -T[-1][-1]
        T.pop()
        if (exact and residue != 0) or (not exact and abs(residue) > 1e-8):
            raise LPInfeasible("empty feasible set")
        # drive leftover zero-level artificials out of the basis; a pivot on
        # any nonzero x/slack entry exists because B^-1 rows are nonzero
        for r in range(m):
            if basis[r] >= n + m:
                piv = next(j for j in range(n + m)
                           if (T[r][j] != 0 if exact else abs(T[r][j]) > 1e-12))
                _pivot(T, basis, r, piv)

    # phase 2: minimize -c.x (never let artificials re-enter)
    obj = [-v for v in c] + [zero] * (len(T[0]) - n)
    for r, bv in enumerate(basis):
        if obj[bv] != 0:
            coef = obj[bv]
            obj = [a - coef * t for a, t in zip(obj, T[r])]
    T.append(obj)
    _bland(T, basis, n + m, tol)

    x = [zero] * n
    for r, bv in enumerate(basis):
        if bv < n:
            x[bv] = T[r][-1]
    # dual of row i = reduced cost of its slack column, sign-corrected for
    # rows negated during setup
    obj = T[-1]
    y = [row_sign[i] * obj[n + i] for i in range(m)]
    value = sum(ci * xi for ci, xi in zip(c, x))
    return value, x, y
