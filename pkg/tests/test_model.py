"""Spaces, functions, sets, plans, and semimetric validation."""

import random
from fractions import Fraction

import pytest

from virtcont import (DiscreteSpace, MetricMatrix, ProductFunction,
                      ProductSet, ValidationError, level_set, parse_number,
                      product_measure, validate_semimetric, validate_space)
from virtcont.model import require_valid_space

from util import fn_on, rand_space


def test_parse_number_exact_and_float():
    assert parse_number("1/3", True) == Fraction(1, 3)
    assert parse_number("0.25", True) == Fraction(1, 4)
    assert parse_number("1/3", False) == pytest.approx(1 / 3)
    assert isinstance(parse_number("2", True), Fraction)


def test_space_weights_must_sum_to_one():
    s = DiscreteSpace(("a", "b"), (Fraction(1, 2), Fraction(1, 3)))
    problems = validate_space(s)
    assert any("sum" in p for p in problems)
    with pytest.raises(ValidationError):
        require_valid_space(s)


def test_space_weights_must_be_positive():
    s = DiscreteSpace(("a", "b"), (Fraction(1), Fraction(0)))
    problems = validate_space(s)
    assert any("index 1" in p for p in problems)


def test_uniform_space_is_valid():
    s = DiscreteSpace.uniform(7)
    assert validate_space(s) == []
    assert sum(s.weights) == 1


def test_product_measure_diagonal():
    s = DiscreteSpace.uniform(4)
    member = [[i == j for j in range(4)] for i in range(4)]
    assert product_measure(ProductSet(s, s, member)) == Fraction(1, 4)


def test_level_set_on_grid():
    # f(x, y) = x + y on the two-point grid {0, 1} x {0, 1}
    s = DiscreteSpace(("0", "1"), (Fraction(1, 2), Fraction(1, 2)))
    f = fn_on(s, s, lambda i, j: Fraction(i + j))
    z = level_set(f, Fraction(1), ">=")
    assert set(z.cells()) == {(0, 1), (1, 0), (1, 1)}
    strict = level_set(f, Fraction(1), ">")
    assert set(strict.cells()) == {(1, 1)}


def test_zero_matrix_is_semimetric_not_metric():
    s = DiscreteSpace.uniform(3)
    zero = MetricMatrix(s, tuple(tuple(Fraction(0) for _ in range(3))
                                 for _ in range(3)))
    kind, _ = validate_semimetric(zero)
    assert kind == "semimetric"


def test_triangle_violation_is_reported():
    s = DiscreteSpace.uniform(3)
    d = [[Fraction(0)] * 3 for _ in range(3)]
    d[0][1] = d[1][0] = Fraction(1)
    d[1][2] = d[2][1] = Fraction(1)
    d[0][2] = d[2][0] = Fraction(5)
    kind, witness = validate_semimetric(MetricMatrix(s, tuple(map(tuple, d))))
    assert kind == "invalid"
    assert witness is not None


def test_discrete_metric_is_metric():
    s = DiscreteSpace.uniform(4)
    d = MetricMatrix(s, tuple(tuple(Fraction(0 if i == j else 1)
                                    for j in range(4)) for i in range(4)))
    kind, _ = validate_semimetric(d)
    assert kind == "metric"


def test_function_algebra():
    rng = random.Random(5)
    xs, ys = rand_space(rng, 3, "x"), rand_space(rng, 4, "y")
    f = fn_on(xs, ys, lambda i, j: Fraction(i - j))
    g = f.sub(f)
    assert all(v == 0 for row in g.values for v in row)
    assert f.abs()[(0, 3)] == 3
    assert f.scale(Fraction(2))[(2, 0)] == 4
    assert f.add(ProductFunction.constant(xs, ys, Fraction(1)))[(0, 0)] == 1


def test_set_operations():
    s = DiscreteSpace.uniform(3)
    empty = ProductSet.empty(s, s)
    full = ProductSet.full(s, s)
    assert empty.is_empty() and not full.is_empty()
    assert empty.issubset(full)
    assert set(empty.union(full).cells()) == set(full.cells())
