"""Core data model: discrete measure spaces, product functions/sets, plans, metrics.

All quantities live on finite atomic probability spaces.  Numbers are either
`fractions.Fraction` (exact mode) or `float` (tolerance mode); every operation
is agnostic to which one it gets.  Objects are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

Number = Union[Fraction, float, int]

DEFAULT_TOL = 1e-9


def parse_number(text: str, exact: bool = True) -> Number:
    """Parse a numeric literal, accepting 'p/q' rationals and decimal strings."""
    s = str(text).strip()
    if exact:
        return Fraction(s)
    if "/" in s:
        return float(Fraction(s))
    return float(s)


def is_exact(x: Number) -> bool:
    return isinstance(x, (Fraction, int))


def all_exact(values: Iterable[Number]) -> bool:
    return all(is_exact(v) for v in values)


def close(a: Number, b: Number, tol: float = DEFAULT_TOL) -> bool:
    """Equality in the active regime: exact if both operands are rational."""
    if is_exact(a) and is_exact(b):
        return a == b
    return abs(a - b) <= tol


def nonneg(x: Number, tol: float = DEFAULT_TOL) -> bool:
    if is_exact(x):
        return x >= 0
    return x >= -tol


class ValidationError(ValueError):
    """A model invariant is violated."""


@dataclass(frozen=True)
class DiscreteSpace:
    """A finite measure space: atoms with strictly positive weights summing to 1."""

    labels: tuple
    weights: tuple

    def __init__(self, labels: Sequence, weights: Sequence[Number]):
        object.__setattr__(self, "labels", tuple(labels))
        object.__setattr__(self, "weights", tuple(weights))

    @property
    def size(self) -> int:
        return len(self.labels)

    def total(self) -> Number:
        return sum(self.weights)

    @staticmethod
    def uniform(n: int, prefix: str = "a") -> "DiscreteSpace":
        w = Fraction(1, n)
        return DiscreteSpace([f"{prefix}{i}" for i in range(n)], [w] * n)


def validate_space(space: DiscreteSpace, tol: float = DEFAULT_TOL) -> list[str]:
    """Return the list of violated invariants (empty list means pass)."""
    problems = []
    if len(space.labels) != len(space.weights):
        problems.append("label/weight count mismatch")
        return problems
    if space.size == 0:
        problems.append("space has no atoms")
        return problems
    for i, w in enumerate(space.weights):
        if is_exact(w):
            if w <= 0:
                problems.append(f"nonpositive weight at index {i}")
        elif w <= tol:
            problems.append(f"nonpositive weight at index {i}")
    total = space.total()
    if not close(total, Fraction(1) if all_exact(space.weights) else 1.0, tol):
        problems.append(f"weights sum != 1 (sum = {total})")
    if len(set(space.labels)) != len(space.labels):
        problems.append("duplicate label")
    return problems


def require_valid_space(space: DiscreteSpace, tol: float = DEFAULT_TOL) -> None:
    problems = validate_space(space, tol)
    if problems:
        raise ValidationError("; ".join(problems))


@dataclass(frozen=True)
class ProductFunction:
    """A real value per atom pair: f(x_i, y_j) on X x Y."""

    x_space: DiscreteSpace
    y_space: DiscreteSpace
    values: tuple  # tuple of row tuples

    def __init__(self, x_space, y_space, values):
        rows = tuple(tuple(row) for row in values)
        if len(rows) != x_space.size or any(len(r) != y_space.size for r in rows):
            raise ValidationError("function matrix dimensions do not match factors")
        for row in rows:
            for v in row:
                if not is_exact(v) and not (v == v and abs(v) != float("inf")):
                    raise ValidationError("non-finite function value")
        object.__setattr__(self, "x_space", x_space)
        object.__setattr__(self, "y_space", y_space)
        object.__setattr__(self, "values", rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.x_space.size, self.y_space.size)

    def __getitem__(self, ij):
        i, j = ij
        return self.values[i][j]

    def map(self, fn) -> "ProductFunction":
        return ProductFunction(
            self.x_space, self.y_space,
            [[fn(v) for v in row] for row in self.values],
        )

    def abs(self) -> "ProductFunction":
        return self.map(abs)

    def sub(self, other: "ProductFunction") -> "ProductFunction":
        _check_same_factors(self, other)
        return ProductFunction(
            self.x_space, self.y_space,
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.values, other.values)],
        )

    def add(self, other: "ProductFunction") -> "ProductFunction":
        _check_same_factors(self, other)
        return ProductFunction(
            self.x_space, self.y_space,
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.values, other.values)],
        )

    def scale(self, c: Number) -> "ProductFunction":
        return self.map(lambda v: c * v)

    @staticmethod
    def constant(x_space, y_space, c: Number) -> "ProductFunction":
        return ProductFunction(x_space, y_space,
                               [[c] * y_space.size for _ in range(x_space.size)])


def _check_same_factors(a, b):
    if a.x_space.size != b.x_space.size or a.y_space.size != b.y_space.size:
        raise ValidationError("factor dimension mismatch")


@dataclass(frozen=True)
class ProductSet:
    """A subset of X x Y given by a boolean membership matrix."""

    x_space: DiscreteSpace
    y_space: DiscreteSpace
    membership: tuple

    def __init__(self, x_space, y_space, membership):
        rows = tuple(tuple(bool(v) for v in row) for row in membership)
        if len(rows) != x_space.size or any(len(r) != y_space.size for r in rows):
            raise ValidationError("set matrix dimensions do not match factors")
        object.__setattr__(self, "x_space", x_space)
        object.__setattr__(self, "y_space", y_space)
        object.__setattr__(self, "membership", rows)

    def cells(self):
        for i, row in enumerate(self.membership):
            for j, m in enumerate(row):
                if m:
                    yield (i, j)

    def is_empty(self) -> bool:
        return not any(any(row) for row in self.membership)

    @staticmethod
    def empty(x_space, y_space) -> "ProductSet":
        return ProductSet(x_space, y_space,
                          [[False] * y_space.size for _ in range(x_space.size)])

    @staticmethod
    def full(x_space, y_space) -> "ProductSet":
        return ProductSet(x_space, y_space,
                          [[True] * y_space.size for _ in range(x_space.size)])

    def union(self, other: "ProductSet") -> "ProductSet":
        _check_same_factors(self, other)
        return ProductSet(self.x_space, self.y_space,
                          [[a or b for a, b in zip(ra, rb)]
                           for ra, rb in zip(self.membership, other.membership)])

    def issubset(self, other: "ProductSet") -> bool:
        return all(not a or b for ra, rb in zip(self.membership, other.membership)
                   for a, b in zip(ra, rb))


@dataclass(frozen=True)
class SeparableMajorant:
    """A separable upper bound a(x) + b(y) >= |f(x,y)|, entries nonnegative."""

    a: tuple
    b: tuple

    def __init__(self, a: Sequence[Number], b: Sequence[Number]):
        a, b = tuple(a), tuple(b)
        for v in a + b:
            if is_exact(v):
                if v < 0:
                    raise ValidationError("negative majorant entry")
            elif not (v == v) or v < -DEFAULT_TOL:
                raise ValidationError("negative or non-finite majorant entry")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def dominates(self, f: ProductFunction, tol: float = DEFAULT_TOL) -> bool:
        for i in range(f.x_space.size):
            for j in range(f.y_space.size):
                if not nonneg(self.a[i] + self.b[j] - abs(f[i, j]), tol):
                    return False
        return True

    def weight(self, x_space: DiscreteSpace, y_space: DiscreteSpace) -> Number:
        return (sum(w * v for w, v in zip(x_space.weights, self.a))
                + sum(w * v for w, v in zip(y_space.weights, self.b)))


@dataclass(frozen=True)
class Plan:
    """A nonnegative (or signed) mass per atom pair, with derived marginals.

    Bistochastic plans project onto mu and nu exactly; subbistochastic plans
    project below them componentwise.
    """

    x_space: DiscreteSpace
    y_space: DiscreteSpace
    mass: tuple
    signed: bool = field(default=False)

    def __init__(self, x_space, y_space, mass, signed: bool = False):
        rows = tuple(tuple(row) for row in mass)
        if len(rows) != x_space.size or any(len(r) != y_space.size for r in rows):
            raise ValidationError("plan matrix dimensions do not match factors")
        if not signed:
            for row in rows:
                for v in row:
                    if not nonneg(v):
                        raise ValidationError("negative mass in unsigned plan")
        object.__setattr__(self, "x_space", x_space)
        object.__setattr__(self, "y_space", y_space)
        object.__setattr__(self, "mass", rows)
        object.__setattr__(self, "signed", signed)

    def row_marginals(self) -> list:
        return [sum(row) for row in self.mass]

    def col_marginals(self) -> list:
        n = self.y_space.size
        return [sum(row[j] for row in self.mass) for j in range(n)]

    def abs_row_marginals(self) -> list:
        return [sum(abs(v) for v in row) for row in self.mass]

    def abs_col_marginals(self) -> list:
        n = self.y_space.size
        return [sum(abs(row[j]) for row in self.mass) for j in range(n)]

    def total(self) -> Number:
        return sum(sum(row) for row in self.mass)

    def is_bistochastic(self, tol: float = DEFAULT_TOL) -> bool:
        return (all(close(r, w, tol) for r, w in zip(self.row_marginals(), self.x_space.weights))
                and all(close(c, w, tol) for c, w in zip(self.col_marginals(), self.y_space.weights)))

    def is_subbistochastic(self, tol: float = DEFAULT_TOL) -> bool:
        return (all(nonneg(w - r, tol) for r, w in zip(self.abs_row_marginals(), self.x_space.weights))
                and all(nonneg(w - c, tol) for c, w in zip(self.abs_col_marginals(), self.y_space.weights)))

    @staticmethod
    def product(x_space: DiscreteSpace, y_space: DiscreteSpace) -> "Plan":
        return Plan(x_space, y_space,
                    [[wx * wy for wy in y_space.weights] for wx in x_space.weights])

    @staticmethod
    def zero(x_space: DiscreteSpace, y_space: DiscreteSpace) -> "Plan":
        z = Fraction(0) if all_exact(x_space.weights + y_space.weights) else 0.0
        return Plan(x_space, y_space,
                    [[z] * y_space.size for _ in range(x_space.size)])

    @staticmethod
    def diagonal(space: DiscreteSpace) -> "Plan":
        n = space.size
        zero = Fraction(0) if all_exact(space.weights) else 0.0
        mass = [[zero] * n for _ in range(n)]
        for i, w in enumerate(space.weights):
            mass[i][i] = w
        return Plan(space, space, mass)


@dataclass(frozen=True)
class MetricMatrix:
    """A symmetric nonnegative distance matrix over one space's atoms."""

    space: DiscreteSpace
    dist: tuple

    def __init__(self, space, dist):
        rows = tuple(tuple(row) for row in dist)
        if len(rows) != space.size or any(len(r) != space.size for r in rows):
            raise ValidationError("distance matrix dimensions do not match space")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "dist", rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.dist[i][j]

    def as_function(self) -> ProductFunction:
        return ProductFunction(self.space, self.space, self.dist)


def validate_semimetric(m: MetricMatrix, tol: float = DEFAULT_TOL):
    """Classify a distance matrix.

    Returns ("metric", None), ("semimetric", None), or ("invalid", witness)
    where the witness names the violated axiom with concrete indices.
    """
    n = m.space.size
    d = m.dist
    for i in range(n):
        if not close(d[i][i], 0, tol):
            return ("invalid", ("nonzero diagonal", i))
        for j in range(n):
            if not nonneg(d[i][j], tol):
                return ("invalid", ("negative distance", i, j))
            if not close(d[i][j], d[j][i], tol):
                return ("invalid", ("asymmetric pair", i, j))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                gap = d[i][j] + d[j][k] - d[i][k]
                if not nonneg(gap, tol):
                    return ("invalid", ("triangle violation", i, k, j))
    semimetric = any(close(d[i][j], 0, tol) for i in range(n) for j in range(n) if i != j)
    return ("semimetric" if semimetric else "metric", None)


def product_measure(z: ProductSet) -> Number:
    """mu x nu (Z): total product weight of the member cells."""
    mu, nu = z.x_space.weights, z.y_space.weights
    return sum(mu[i] * nu[j] for (i, j) in z.cells()) or (
        Fraction(0) if all_exact(mu + nu) else 0.0)


def level_set(f: ProductFunction, threshold: Number, mode: str = ">") -> ProductSet:
    """The set where f compares to the threshold ('>' or '>=')."""
    if mode == ">":
        test = lambda v: v > threshold
    elif mode in (">=", "≥"):
        test = lambda v: v >= threshold
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return ProductSet(f.x_space, f.y_space,
                      [[test(v) for v in row] for row in f.values])
