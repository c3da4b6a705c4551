"""Virtual-continuity diagnostics: block step fits and their refinement.

A function is close to an N-block step function when, after removing an
exceptional set of rows and columns of small measure, every block pair has a
small value range.  The profile value is the least eps making that possible.
The staircase indicator stays separated from 0 under refinement; the smooth
product xy decays toward 0.
"""

from fractions import Fraction

from virtcont import (family_function, random_points_check, refinement_study,
                      step_fit_exists, vc_profile)

tri = family_function("triangle_indicator", 8)
res = vc_profile(tri, 4)
print("staircase profile on the 8-grid with 4 blocks:", res.value,
      "(exact)" if res.exact else "(upper bound)")
print("a strict fit below 1/10 with 2 blocks exists:",
      step_fit_exists(tri, 2, Fraction(1, 10)) is not None)

xy = family_function("separable_smooth", 8)
print("xy profile on the 8-grid with 4 blocks:", vc_profile(xy, 4).value)

print()
print("refinement study (value per grid, block budget scaling for the")
print("smooth families, fixed with certified lower bounds for the staircase):")
for fam in ("triangle_indicator", "separable_smooth", "metric_kernel"):
    rows = refinement_study(fam, [8, 16, 32], 4)
    cells = ", ".join(f"n={r['n']}: {r['value']} ({r['kind']})" for r in rows)
    print(f"  {fam}: {cells}")

print()
hits = random_points_check(tri, 8, 2, Fraction(1, 10), trials=100, seed=0)
print("sampled 8x8 staircase submatrices admitting a 2-block fit:", hits)
