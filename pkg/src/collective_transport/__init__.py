"""Steady-state photonic energy transport through a collective qubit ladder.

A register of N qubits coupled permutation-symmetrically to two thermal
baths relaxes within the maximal-spin Dicke ladder.  Strong system-bath
coupling is treated in the polaron frame: sequential photon exchange with
Marcus-type Gaussian rates, a classical kinetic equation for the ladder
populations, and full counting statistics of the transported energy via
a tilted generator.  An exact-kernel module integrates the polaron
correlation functions directly and quantifies the Gaussian approximation.
"""
from .errors import (ConvergenceError, DisconnectedLadderError,
                     MonotoneObjectiveError, SingularBathError)
from .model import (BathParams, Ladder, SystemParams, build_ladder,
                    ladder_coefficient, reorganization_energy, source_drain)
from .rates import (JumpMoments, RateTable, TiltedRateTable, gc_conjugate,
                    jump_moments, marcus_density, marcus_rates, tilted_rates,
                    tilted_rates_real)
from .liouvillian import (EigResult, SteadyState, TiltedGenerator,
                          analytic_population, build_generator,
                          dominant_eigenvalue, geometric_population,
                          propagate_to_steady, steady_state)
from .kernel import (CorrelationSpectrum, PropagatorGrid, RateQuadrature,
                     exact_rate, kms_deviation, marcus_distance,
                     marcus_pointwise_deviation, propagator,
                     rate_time_domain, spectrum, sum_rule_deviation)
from .fcs import (CumulantSet, cgf_evaluator, cumulants_fd,
                  cumulants_from_cgf, default_fd_step, flux_direct,
                  gc_deviation)
from .analysis import (OptResult, Regime, ScalingResult, SweepResult,
                       SweepSpec, fit_linear, fit_power_law, optimize_alpha,
                       scaling_study, sweep)

__version__ = "0.1.0"

__all__ = [
    "BathParams", "SystemParams", "Ladder", "build_ladder",
    "ladder_coefficient", "reorganization_energy", "source_drain",
    "RateTable", "TiltedRateTable", "JumpMoments", "marcus_density",
    "marcus_rates", "tilted_rates", "tilted_rates_real", "jump_moments",
    "gc_conjugate",
    "TiltedGenerator", "SteadyState", "EigResult", "build_generator",
    "steady_state", "propagate_to_steady", "dominant_eigenvalue",
    "analytic_population", "geometric_population",
    "PropagatorGrid", "CorrelationSpectrum", "RateQuadrature", "propagator",
    "spectrum", "exact_rate", "rate_time_domain", "sum_rule_deviation",
    "kms_deviation", "marcus_distance", "marcus_pointwise_deviation",
    "CumulantSet", "cgf_evaluator", "cumulants_from_cgf", "cumulants_fd",
    "default_fd_step", "flux_direct", "gc_deviation",
    "Regime", "SweepSpec", "SweepResult", "OptResult", "ScalingResult",
    "sweep", "optimize_alpha", "scaling_study", "fit_power_law", "fit_linear",
    "ConvergenceError", "DisconnectedLadderError", "MonotoneObjectiveError",
    "SingularBathError",
    "__version__",
]
