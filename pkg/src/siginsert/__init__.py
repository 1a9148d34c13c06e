"""Truncated path signatures and their inversion by the insertion method."""
from .bounds import (GapCurve, GradedDevelopment, binomial_bound, gap_curve,
                     graded_development, hyperbolic_F, insertion_gap, lattice_decay,
                     lattice_path, length_estimate, lower_bound_constant, smallest_half_angle)
from .dataio import (DataFormatError, TrajectorySample, digit_path, normalize_unit_box,
                     parse_pendigits, parse_points_csv, parse_signature, format_signature,
                     read_signature, resample_unit_speed, write_signature)
from .insertion import (AmbiguousMinimum, DegenerateSignature, InsertionContext,
                        InsertionError, SizeGuard, TwoPieceSolution, contract_at, insert,
                        insertion_matrix, insertion_position, solve_insertion,
                        solve_insertion_svd, solve_two_piece)
from .reconstruct import (Interval, ReconstructionConfig, ReconstructionResult,
                          estimate_derivatives, integrate_derivatives, polyline_distance,
                          reconstruct_path)
from .signature import (PiecewiseLinearPath, chen_concat, normalised_level, path_signature,
                        segment_signature, signature_inverse)
from .tensor import NormKind, TruncatedTensorSeries, level_norm, tensor_product

__version__ = "0.1.0"
