"""Step-fit search, the profile and its refinement behavior, matrix laws."""

import random
from fractions import Fraction

import pytest

from virtcont import (DiscreteSpace, MetricMatrix, ProductFunction,
                      ValidationError, family_function,
                      matrix_distribution_exact, matrix_distribution_sample,
                      random_points_check, refinement_study, sample_points,
                      step_fit_exists, step_fit_violations, vc_profile)

from util import (brute_step_fit_exists, fn_on, rand_function, rand_space)


def test_exists_matches_bruteforce_oracle():
    rng = random.Random(43)
    for _ in range(15):
        xs = rand_space(rng, rng.randint(2, 4), "x")
        ys = rand_space(rng, rng.randint(2, 4), "y")
        f = rand_function(rng, xs, ys, denom=3, lo=-1, hi=1)
        for nb in (1, 2):
            for eps in (Fraction(1, 8), Fraction(1, 3), Fraction(2, 3)):
                got = step_fit_exists(f, nb, eps)
                want = brute_step_fit_exists(f, nb, eps)
                assert (got is not None) == want
                if got is not None:
                    assert step_fit_violations(f, got, strict=True) == []


def test_monotone_in_blocks_and_eps():
    rng = random.Random(45)
    xs, ys = rand_space(rng, 4, "x"), rand_space(rng, 4, "y")
    f = rand_function(rng, xs, ys, denom=4)
    values = [vc_profile(f, nb).value for nb in (1, 2, 3, 4)]
    assert all(a >= b for a, b in zip(values, values[1:]))
    # a fit exists strictly above the profile value, none strictly below it
    v = values[1]
    assert step_fit_exists(f, 2, v + Fraction(1, 100)) is not None
    if v > 0:
        assert step_fit_exists(f, 2, v * Fraction(99, 100)) is None


def test_step_function_fits_itself():
    # an exactly 2 x 2 block function has profile 0 with 2 blocks
    s = DiscreteSpace.uniform(6)
    f = fn_on(s, s, lambda i, j: Fraction((i < 3) * 2 + (j < 3)))
    res = vc_profile(f, 2)
    assert res.value == 0 and res.exact
    assert step_fit_violations(f, res.witness, strict=False) == []
    assert vc_profile(ProductFunction.constant(s, s, Fraction(5)), 1).value == 0


def test_triangle_profile_frozen_value():
    f = family_function("triangle_indicator", 8)
    res = vc_profile(f, 4)
    assert res.value == Fraction(1, 4)
    assert res.exact
    assert step_fit_violations(f, res.witness, strict=False) == []


def test_separable_profile_frozen_value():
    f = family_function("separable_smooth", 8)
    res = vc_profile(f, 4)
    assert res.value == Fraction(7, 64)
    assert res.exact


def test_metric_kernel_dense_blocks_reach_zero():
    f = family_function("metric_kernel", 8)
    assert vc_profile(f, 8).value == 0


def test_no_small_fit_for_triangle():
    f = family_function("triangle_indicator", 8)
    assert step_fit_exists(f, 2, Fraction(1, 10)) is None


def test_refinement_study_separable_decreases():
    rows = refinement_study("separable_smooth", [8, 16, 32], 4)
    assert [(r["n"], r["value"], r["kind"]) for r in rows] == [
        (8, Fraction(7, 64), "exact"),
        (16, Fraction(15, 256), "upper"),
        (32, Fraction(31, 1024), "upper"),
    ]
    assert rows[0]["value"] > rows[1]["value"] > rows[2]["value"]


def test_refinement_study_triangle_stays_flat():
    rows = refinement_study("triangle_indicator", [8, 16], 4)
    assert [(r["value"], r["kind"]) for r in rows] == [
        (Fraction(1, 4), "exact"),
        (Fraction(1, 4), "lower"),
    ]


def test_refinement_study_metric_kernel():
    rows = refinement_study("metric_kernel", [8, 16], 4)
    assert [(r["value"], r["kind"]) for r in rows] == [
        (Fraction(1, 8), "exact"),
        (Fraction(1, 16), "upper"),
    ]


def test_random_points_check_frozen_value():
    f = family_function("triangle_indicator", 8)
    hits = random_points_check(f, 8, 2, Fraction(1, 10), trials=100, seed=0)
    assert hits == Fraction(1, 100)


def test_matrix_distribution_two_atoms():
    s = DiscreteSpace.uniform(2)
    m = MetricMatrix(s, ((Fraction(0), Fraction(3)),
                         (Fraction(3), Fraction(0))))
    dist = matrix_distribution_exact(m, 1)
    assert dist.support == [(((Fraction(0),),), Fraction(1, 2)),
                            (((Fraction(3),),), Fraction(1, 2))]


def test_matrix_distribution_atom_split_invariance():
    # splitting an atom into two equal halves leaves the law unchanged
    s = DiscreteSpace.uniform(2)
    m = MetricMatrix(s, ((Fraction(0), Fraction(3)),
                         (Fraction(3), Fraction(0))))
    split = DiscreteSpace(("a", "b1", "b2"),
                          (Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)))
    d = [[Fraction(0), Fraction(3), Fraction(3)],
         [Fraction(3), Fraction(0), Fraction(0)],
         [Fraction(3), Fraction(0), Fraction(0)]]
    msplit = MetricMatrix(split, tuple(map(tuple, d)))
    for k in (1, 2):
        assert (matrix_distribution_exact(m, k).support
                == matrix_distribution_exact(msplit, k).support)


def test_matrix_distribution_sampling():
    s = DiscreteSpace.uniform(2)
    m = MetricMatrix(s, ((Fraction(0), Fraction(3)),
                         (Fraction(3), Fraction(0))))
    draws = matrix_distribution_sample(m, 1, 10000, seed=42)
    assert draws == matrix_distribution_sample(m, 1, 10000, seed=42)
    freq = sum(1 for d in draws if d[0][0] == 3) / 10000
    assert freq == pytest.approx(0.5083)


def test_guards():
    with pytest.raises(ValidationError):
        family_function("no_such_family", 8)
    s = DiscreteSpace.uniform(40)
    m = MetricMatrix(s, tuple(tuple(Fraction(0 if i == j else 1)
                                    for j in range(40)) for i in range(40)))
    with pytest.raises(ValidationError):
        matrix_distribution_exact(m, 3)
    with pytest.raises(ValidationError):
        refinement_study("triangle_indicator", [8, 18], 4)


def test_sample_points_are_midpoints():
    assert sample_points(4) == [Fraction(1, 8), Fraction(3, 8),
                                Fraction(5, 8), Fraction(7, 8)]
