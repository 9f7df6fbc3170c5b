"""tmlab: numerical laboratory for the Thue-Morse measure on the binary shift.

Subpackages by concern:

- :mod:`tmlab.words`     symbolic substrate: words, sources, alternation coding
- :mod:`tmlab.measure`   potential, Birkhoff/cylinder enclosures, estimators
- :mod:`tmlab.spectrum`  closed-form dimension spectrum on the triangle
- :mod:`tmlab.construct` explicit point constructions, auxiliary measures
- :mod:`tmlab.analyze`   trajectories, limit estimates, identity checks
- :mod:`tmlab.verify`    machine-checkable verification suite
- :mod:`tmlab.cli`       command-line front end
"""

from .words import (AlternationCode, BinaryWord, DyadicInterval, SymbolSource,
                    alternation_decode, alternation_encode, filtered_counters,
                    is_dyadic_prefix, pi2_interval, pi2_value, prefix_counters)
from .measure import (DEFAULT_ANCHORS, DEFAULT_BUDGET, BudgetError, LogBound,
                      MeasureEstimate, birkhoff_block_form, birkhoff_sum,
                      cylinder_log_bounds, cylinder_measure_estimate, g_tilde,
                      log_g_tilde, psi_interval, riesz_quadrature)
from .spectrum import (SpectrumPoint, accumulation_transform, beta_star, eta,
                       joint_dim, phi, phi_bar, spectrum_grid)
from .construct import (BlockBernoulliMeasure, ConstructedPoint,
                        ConstructionError, DeterminedPositions, FiberMeasure,
                        block_bernoulli_measure, bounded_block_point,
                        fiber_dimension_bound, fiber_measure,
                        idealized_block_simulation, intermediate_scaling_point,
                        joint_block_ratios, joint_spectrum_point,
                        nu_log_measure, select_shape_exponent)
from .analyze import (ConvexityReport, LimitEstimate, Trajectory,
                      convexity_identity_check, density_floor_check,
                      f_trajectory, filtered_ratio_interpolated,
                      large_block_density, limit_estimates,
                      local_dimension_trace, scaling_enclosure_table,
                      xi_mu_at, xi_mu_trajectory, xi_psi_at,
                      xi_psi_trajectory)

__version__ = "0.1.0"
