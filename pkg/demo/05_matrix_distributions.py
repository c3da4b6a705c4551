"""Matrix distributions: the sampling invariant of a metric measure space.

The law of the k x k distance matrix at i.i.d. sample points does not change
under splitting atoms or relabeling them, which is what makes it a complete
invariant.  Seeded sampling reproduces the exact law empirically.
"""

from fractions import Fraction

from virtcont import (DiscreteSpace, MetricMatrix, matrix_distribution_exact,
                      matrix_distribution_sample)

two = DiscreteSpace.uniform(2)
m = MetricMatrix(two, ((Fraction(0), Fraction(3)), (Fraction(3), Fraction(0))))

dist = matrix_distribution_exact(m, 1)
print("exact law of the 1x1 distance matrix on the 2-point space:")
for mat, p in dist.support:
    print("  value", mat[0][0], "with probability", p)

# split the second atom in two; the law is unchanged
split_space = DiscreteSpace(("a", "b1", "b2"),
                            (Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)))
d = [[Fraction(0), Fraction(3), Fraction(3)],
     [Fraction(3), Fraction(0), Fraction(0)],
     [Fraction(3), Fraction(0), Fraction(0)]]
split = MetricMatrix(split_space, tuple(map(tuple, d)))
print("atom-split invariance (k = 2):",
      matrix_distribution_exact(split, 2) == matrix_distribution_exact(m, 2))

draws = matrix_distribution_sample(m, 1, 10000, seed=42)
freq = sum(1 for mat in draws if mat[0][0] == 3) / len(draws)
print("empirical frequency of distance 3 over 10^4 seeded draws:", freq)
