"""Numerical diagnostics for weighted coefficient models of nested spaces.

The package works at a fixed truncation dimension: a weighted seminorm
ladder models a smooth space sitting inside a Hilbert space with its
dual on the other side, and every analytic question (biorthogonality,
Bessel-type bounds, partial-sum convergence, the strict/non-strict
dichotomy of transported bases, intertwined operator pairs) becomes a
finite linear-algebra computation with an explicit certificate.  Trends
over a ladder of dimensions stand in for the statements that only make
sense in infinite dimension.
"""

from .errors import (ConfigError, ContinuityError, DimensionError,
                     InjectivityError, LevelError, MissingDualError,
                     ParseError, RieszLabError, StateError, SupportError,
                     ValidationError)
from .hamiltonian import (HamiltonianPair, build_pair, build_selfadjoint,
                          demo_pair, density_diagnostic, eigen_residual,
                          nonnormality, random_unitary, spectrum_residual,
                          weak_similarity_residual)
from .reportio import (DiagnosticsReport, Section, Verdict, config_digest,
                       load_complex_matrix, render_csv, render_json,
                       save_complex_matrix, save_function_csv, save_report)
from .riesz import (RieszBasis, adjoint_action, coefficient_seminorm,
                    hilbert_triplet_realization, make_riesz_basis,
                    metric_operator_check, range_membership, realized_grams,
                    strictness_constants, strictness_report, with_strictness)
from .sequences import (LinearMap, SequenceFamily, analysis, bessel_bound,
                        bessel_bound_sampled, bessel_factor,
                        biorthogonality_residual, certificate_norm,
                        dual_analysis, frame_operator, is_tainted, level_gram,
                        make_linear_map, partial_sum, partial_sum_adjoint,
                        riesz_fischer_check, schauder_inequality_probe,
                        synthesis, weak_expansion_residual)
from .spaces import (LineGrid, SampledFunction, aliasing_fraction,
                     hermite_basis, hermite_gram, hermite_grid,
                     hermite_values, number_operator_model,
                     schwartz_hermite_model, sobolev_basis,
                     sobolev_multiplier, sobolev_triplet)
from .triplet import (CoefVector, WeightedTriplet, coords_of,
                      graph_norm_triplet, pairing)

__version__ = "0.1.0"

__all__ = [
    "CoefVector", "ConfigError", "ContinuityError", "DiagnosticsReport",
    "DimensionError", "HamiltonianPair", "InjectivityError", "LevelError",
    "LineGrid", "LinearMap", "MissingDualError", "ParseError", "RieszBasis",
    "RieszLabError", "SampledFunction", "Section", "SequenceFamily",
    "StateError", "SupportError", "ValidationError", "Verdict",
    "WeightedTriplet", "adjoint_action", "aliasing_fraction", "analysis",
    "bessel_bound", "bessel_bound_sampled", "bessel_factor",
    "biorthogonality_residual", "build_pair", "build_selfadjoint",
    "certificate_norm", "coefficient_seminorm", "config_digest", "coords_of",
    "demo_pair", "density_diagnostic", "dual_analysis", "eigen_residual",
    "frame_operator", "graph_norm_triplet", "hermite_basis", "hermite_gram",
    "hermite_grid", "hermite_values", "hilbert_triplet_realization",
    "is_tainted", "level_gram", "load_complex_matrix", "make_linear_map",
    "make_riesz_basis", "metric_operator_check", "nonnormality",
    "number_operator_model", "pairing", "partial_sum", "partial_sum_adjoint",
    "random_unitary", "range_membership", "realized_grams", "render_csv",
    "render_json", "riesz_fischer_check", "save_complex_matrix",
    "save_function_csv", "save_report", "schauder_inequality_probe",
    "schwartz_hermite_model", "sobolev_basis", "sobolev_multiplier",
    "sobolev_triplet", "spectrum_residual", "strictness_constants",
    "strictness_report", "synthesis", "weak_expansion_residual",
    "weak_similarity_residual", "with_strictness",
]
