"""Shared generators and independent oracles for the test suite.

Everything here is deliberately naive: brute-force enumeration and direct
definitions, so agreement with the library is meaningful evidence.
"""

from fractions import Fraction

from virtcont import DiscreteSpace, MetricMatrix, ProductFunction, ProductSet


def rand_weights(rng, n):
    """Positive rational weights summing to exactly 1."""
    parts = [rng.randint(1, 9) for _ in range(n)]
    total = sum(parts)
    return [Fraction(p, total) for p in parts]


def rand_space(rng, n, prefix="a"):
    return DiscreteSpace(tuple(f"{prefix}{i}" for i in range(n)),
                         tuple(rand_weights(rng, n)))


def fn_on(xs, ys, fn):
    """ProductFunction from an index function fn(i, j)."""
    return ProductFunction(xs, ys, [[fn(i, j) for j in range(ys.size)]
                                    for i in range(xs.size)])


def rand_set(rng, xs, ys, density=0.5):
    member = tuple(tuple(rng.random() < density for _ in range(ys.size))
                   for _ in range(xs.size))
    return ProductSet(xs, ys, member)


def rand_function(rng, xs, ys, denom=12, lo=-3, hi=3):
    vals = tuple(tuple(Fraction(rng.randint(lo * denom, hi * denom), denom)
                       for _ in range(ys.size))
                 for _ in range(xs.size))
    return ProductFunction(xs, ys, vals)


def rand_metric(rng, space, denom=6, hi=4):
    """Random shortest-path-closed metric: symmetric seed, then closure."""
    n = space.size
    d = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d[i][j] = d[j][i] = Fraction(rng.randint(1, hi * denom), denom)
    for k in range(n):
        for i in range(n):
            for j in range(n):
                via = d[i][k] + d[k][j]
                if via < d[i][j]:
                    d[i][j] = via
    return MetricMatrix(space, tuple(tuple(row) for row in d))


def brute_tau(f, g):
    """tau by direct definition: scan every candidate level exhaustively."""
    from virtcont import level_set, thickness
    d = f.sub(g).abs()
    vals = sorted({v for row in d.values for v in row} | {Fraction(0)})
    return min(max(v, thickness(level_set(d, v, ">")).value) for v in vals)


def _partitions_upto(items, max_blocks):
    """All partitions of items into at most max_blocks nonempty blocks."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _partitions_upto(rest, max_blocks):
        for i in range(len(part)):
            yield [blk + [first] if j == i else list(blk)
                   for j, blk in enumerate(part)]
        if len(part) < max_blocks:
            yield [[first]] + [list(blk) for blk in part]


def _splits(items, max_blocks):
    """(exceptional subset, partition of the rest into <= max_blocks blocks)."""
    items = list(items)
    n = len(items)
    for mask in range(1 << n):
        exc = [items[i] for i in range(n) if mask >> i & 1]
        rest = [items[i] for i in range(n) if not mask >> i & 1]
        for part in _partitions_upto(rest, max_blocks):
            yield exc, part


def brute_step_fit_exists(f, n_blocks, eps):
    """Independent exhaustive check for a strict (n_blocks, eps) step fit."""
    xs, ys = f.x_space, f.y_space
    for ax, xpart in _splits(range(xs.size), n_blocks):
        if not sum((xs.weights[i] for i in ax), Fraction(0)) < eps:
            continue
        for by, ypart in _splits(range(ys.size), n_blocks):
            if not sum((ys.weights[j] for j in by), Fraction(0)) < eps:
                continue
            ok = True
            for xb in xpart:
                for yb in ypart:
                    cell = [f[(i, j)] for i in xb for j in yb]
                    if not max(cell) - min(cell) < 2 * eps:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return True
    return False


def brute_max_plan_mass(z):
    """LP-free upper check is hard; use the dense LP from the library's
    simplex only via an entirely separate model in the caller.  Here we give
    the combinatorial cover side instead: min over all (A, B) covering z."""
    xs, ys = z.x_space, z.y_space
    cells = list(z.cells())
    best = None
    for mask in range(1 << xs.size):
        rows = {i for i in range(xs.size) if mask >> i & 1}
        cols = {j for (i, j) in cells if i not in rows}
        w = (sum((xs.weights[i] for i in rows), Fraction(0))
             + sum((ys.weights[j] for j in cols), Fraction(0)))
        if best is None or w < best:
            best = w
    return best
