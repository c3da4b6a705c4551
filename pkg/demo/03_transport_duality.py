"""Optimal transport with exact dual certificates, and the two-level duality.

The plan cost, the 1-Lipschitz potential pairing, and the transport norm of
the difference all coincide exactly in rational arithmetic.
"""

import random
from fractions import Fraction

from virtcont import (DiscreteSpace, MetricMatrix, kantorovich, kr_norm,
                      two_level_duality_check)

rng = random.Random(1)
n = 5
space = DiscreteSpace.uniform(n)

# a path metric on 5 points
d = [[Fraction(abs(i - j)) for j in range(n)] for i in range(n)]
rho = MetricMatrix(space, tuple(map(tuple, d)))

mu1 = [Fraction(3, 10), Fraction(3, 10), Fraction(2, 10),
       Fraction(1, 10), Fraction(1, 10)]
mu2 = [Fraction(1, 10), Fraction(1, 10), Fraction(2, 10),
       Fraction(3, 10), Fraction(3, 10)]

res = kantorovich(mu1, mu2, rho)
print("transport cost:", res.cost)
print("potential (1-Lipschitz, zero at the first atom):", res.potential)
pairing = sum(u * (a - b) for u, a, b in zip(res.potential, mu1, mu2))
print("dual pairing equals the cost:", pairing == res.cost)

eta = [a - b for a, b in zip(mu1, mu2)]
print("transport norm of mu1 - mu2:", kr_norm(eta, rho).value)

# two-level duality on an arbitrary nonnegative cost
cost = [[Fraction(rng.randint(0, 8), 2) for _ in range(4)] for _ in range(4)]
w = [Fraction(1, 4)] * 4
rep = two_level_duality_check(cost, w, w)
print("two-level: primal", rep.primal, " dual", rep.dual, " gap", rep.gap)
