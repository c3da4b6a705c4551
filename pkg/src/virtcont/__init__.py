"""Thickness, tau-convergence, regulator norms, and virtual-continuity
diagnostics on finite atomic product measure spaces.

Everything runs in two arithmetic regimes: exact rationals
(`fractions.Fraction`, default) and floats with a single tolerance.
"""

from .coupling import (HallResult, complete_to_bistochastic,
                       integrate_against_plan, max_bistochastic_mass, qb_norm)
from .flows import (BipartiteCoverInstance, InfeasibleError,
                    TransportationInstance, min_weighted_vertex_cover,
                    solve_transportation)
from .model import (DEFAULT_TOL, DiscreteSpace, MetricMatrix, Number, Plan,
                    ProductFunction, ProductSet, SeparableMajorant,
                    ValidationError, level_set, parse_number, product_measure,
                    validate_semimetric, validate_space)
from .simplex import LPInfeasible, LPUnbounded, dense_lp_solve
from .srnorm import (SrNormResult, cutoff, kernel_from_terms,
                     layer_cake_integral, nuclear_bound, sr_norm,
                     verify_sr_certificates)
from .tau import TauResult, tau_ball_check, tau_distance
from .thickness import (ThicknessResult, cover_lp_data, thickness,
                        thickness_bruteforce, thickness_of_level_set,
                        verify_thickness_result)
from .transport import (KrNormResult, TransportResult, TwoLevelReport,
                        kantorovich, kr_norm, two_level_duality_check,
                        verify_transport_result)
from .vcdiag import (FAMILIES, MatrixDistribution, StepFit, VcProfileResult,
                     family_function, matrix_distribution_exact,
                     matrix_distribution_sample, random_points_check,
                     refinement_study, sample_points, step_fit_exists,
                     step_fit_violations, vc_profile)

__version__ = "0.1.0"
