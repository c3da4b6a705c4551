"""Bistochastic plans: the Hall identity, completion, diagonal traces."""

import random
from fractions import Fraction

from virtcont import (DiscreteSpace, Plan, ProductSet, complete_to_bistochastic,
                      integrate_against_plan, max_bistochastic_mass, qb_norm,
                      thickness)

from util import fn_on, rand_set, rand_space


def test_full_set_mass_one():
    s = DiscreteSpace.uniform(3)
    res = max_bistochastic_mass(ProductSet.full(s, s))
    assert res.mass == 1
    assert res.plan.is_bistochastic()


def test_diagonal_mass_one():
    s = DiscreteSpace.uniform(4)
    diag = ProductSet(s, s, [[i == j for j in range(4)] for i in range(4)])
    res = max_bistochastic_mass(diag)
    assert res.mass == 1
    # the optimal plan concentrates on the diagonal here
    on_z = sum(res.plan.mass[i][i] for i in range(4))
    assert on_z == 1


def test_single_column_mass_is_column_weight():
    rng = random.Random(19)
    xs, ys = rand_space(rng, 3, "x"), rand_space(rng, 4, "y")
    col = ProductSet(xs, ys, [[j == 2 for j in range(4)] for _ in range(3)])
    res = max_bistochastic_mass(col)
    assert res.mass == ys.weights[2]


def test_hall_identity_random():
    rng = random.Random(21)
    for _ in range(40):
        xs = rand_space(rng, rng.randint(1, 5), "x")
        ys = rand_space(rng, rng.randint(1, 5), "y")
        z = rand_set(rng, xs, ys)
        res = max_bistochastic_mass(z)
        assert res.mass == thickness(z).value
        assert res.plan.is_bistochastic()
        on_z = sum((res.plan.mass[i][j] for (i, j) in z.cells()), Fraction(0))
        assert on_z == res.mass


def test_completion_dominates_and_is_bistochastic():
    rng = random.Random(25)
    xs, ys = rand_space(rng, 3, "x"), rand_space(rng, 3, "y")
    z = rand_set(rng, xs, ys, density=0.4)
    sub = max_bistochastic_mass(z).thickness_certificate
    sub_plan = Plan(xs, ys, [[Fraction(0)] * 3 for _ in range(3)])
    mass = [[Fraction(0)] * 3 for _ in range(3)]
    for (i, j), fl in zip(sub.cells, sub.flow):
        mass[i][j] = fl
    sub_plan = Plan(xs, ys, mass)
    full = complete_to_bistochastic(sub_plan)
    assert full.is_bistochastic()
    for i in range(3):
        for j in range(3):
            assert full.mass[i][j] >= sub_plan.mass[i][j]


def test_zero_plan_completion_is_northwest_corner():
    s = DiscreteSpace.uniform(2)
    full = complete_to_bistochastic(Plan.zero(s, s))
    assert full.is_bistochastic()
    assert full.mass[0][0] == Fraction(1, 2)


def test_diagonal_trace_of_sum_function():
    n = 8
    s = DiscreteSpace.uniform(n)
    pts = [Fraction(i, n) for i in range(n)]
    f = fn_on(s, s, lambda i, j: pts[i] + pts[j])
    diag = Plan.diagonal(s)
    expected = sum(Fraction(1, n) * 2 * x for x in pts)
    assert integrate_against_plan(f, diag) == expected
    dist = fn_on(s, s, lambda i, j: abs(pts[i] - pts[j]))
    assert integrate_against_plan(dist, diag) == 0


def test_qb_norm_values():
    s = DiscreteSpace.uniform(3)
    assert qb_norm(Plan.product(s, s)) == 1
    assert qb_norm(Plan.diagonal(s)) == 1
    doubled = Plan(s, s, [[2 * v for v in row]
                          for row in Plan.product(s, s).mass])
    assert qb_norm(doubled) == 2


def test_pairing_bounded_by_norm_times_qb():
    from virtcont import sr_norm
    rng = random.Random(27)
    for _ in range(15):
        xs, ys = rand_space(rng, 3, "x"), rand_space(rng, 3, "y")
        from util import rand_function
        f = rand_function(rng, xs, ys)
        # random signed plan with bounded marginal densities
        mass = [[Fraction(rng.randint(-2, 2), 9) for _ in range(3)]
                for _ in range(3)]
        eta = Plan(xs, ys, mass, signed=True)
        assert abs(integrate_against_plan(f, eta)) <= sr_norm(f).value * qb_norm(eta)
