"""The tau metric and the separable-regulator norm, with their link.

tau(f, g) is the least eps such that {|f - g| > eps} has thickness at most
eps.  The regulator norm is the cheapest separable majorant a(x) + b(y) of
|f|; its dual optimum is a subbistochastic plan, and the two values agree.
"""

import random
from fractions import Fraction

from virtcont import (DiscreteSpace, ProductFunction, layer_cake_integral,
                      sr_norm, tau_distance)

n = 8
space = DiscreteSpace.uniform(n)
rng = random.Random(0)

f = ProductFunction(space, space,
                    [[Fraction(rng.randint(-6, 6), 4) for _ in range(n)]
                     for _ in range(n)])
g = f.map(lambda v: v + Fraction(1, 5))

t = tau_distance(f, g)
print("tau(f, f + 1/5):", t.value)
print("thickness of the exceedance set at the optimum:", t.witness_set_thickness)

res = sr_norm(f)
print("regulator norm of f:", res.value)
print("dual subbistochastic value:", res.dual_value)
print("majorant dominates |f|:", res.majorant.dominates(f.abs()))

# layer-cake: integrating thickness of level sets is a 2-sided equivalent
lc = layer_cake_integral(f)
print("layer-cake integral:", lc)
print("within [norm/4, 2*norm]:",
      res.value / 4 <= lc <= 2 * res.value)

# Chebyshev-type link: tau to zero is at most sqrt(2 * norm)
zero = ProductFunction.constant(space, space, Fraction(0))
t0 = tau_distance(zero, f).value
print("tau(0, f)^2 <= 2*norm:", t0 * t0 <= 2 * res.value)
