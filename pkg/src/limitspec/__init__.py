"""Spectra, essential spectra, and pseudospectra of band operators over Z.

The library models bi-infinite band operators A = sum_{|k| <= w} M_{b_k} V_k
acting on sequence spaces over the integers, with structured diagonals
(constant, periodic, almost periodic, slowly oscillating, pseudo-ergodic,
eventually constant).  Spectral sets are computed through the limit-operator
method: the essential spectrum is the union of the spectra of all limit
operators, which this package enumerates or samples per diagonal structure.
Individual spectra come from Laurent symbols, Floquet-Bloch symbol matrices,
or transfer-matrix discriminants; pseudospectra and lower-norm bounds come
from smallest singular values of finite windows.
"""

from .operators import (
    MAX_WINDOW_SIDE,
    BandOperator,
    CapacityError,
    DenseWindowMatrix,
    apply,
    band,
    entry,
    operator_from_json,
    operator_to_json,
    shift_conjugate,
    truncate,
    wiener_norm,
)
from .potentials import (
    DRIFT_FUNCTIONS,
    Constant,
    DivergenceReport,
    Explicit,
    ExplicitSequence,
    FiniteSet,
    FullShift,
    IntegerSequenceSpec,
    LimitFamily,
    Periodic,
    PolynomialSequence,
    Potential,
    PseudoErgodic,
    QuasiPeriodic,
    SlowlyOscillatingModulation,
    SqrtParity,
    TorusFamily,
    numeric_limit_along,
    potential_from_json,
    potential_to_json,
    sequence_spec_from_json,
    sequence_spec_to_json,
    window_equal,
)
from .spectra import (
    MAX_TRUNCATION_N,
    Circle,
    ClosedDisk,
    FloquetSymbol,
    RealInterval,
    SpectralRegion,
    floquet_symbol,
    grid_centers,
    hausdorff_distance,
    laurent_spectrum,
    lower_norm_estimate,
    periodic_spectrum,
    pseudospectrum,
    rasterize_points,
    region_from_json,
    region_to_json,
    smin_truncation,
    symbol_matrix,
    transfer_discriminant,
)
from .limitops import (
    EssentialOptions,
    OperatorSpectrumFamily,
    VerificationReport,
    continued_fraction_convergents,
    essential_spectrum,
    favard_report,
    operator_spectrum,
    random_bidiagonal_spectrum,
    verification_report_to_json,
    verify_limit_operator,
    verify_randprod,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # potentials
    "Potential", "Constant", "Periodic", "QuasiPeriodic",
    "SlowlyOscillatingModulation", "DRIFT_FUNCTIONS",
    "PseudoErgodic", "SqrtParity", "Explicit",
    "LimitFamily", "FiniteSet", "TorusFamily", "FullShift",
    "IntegerSequenceSpec", "PolynomialSequence", "ExplicitSequence",
    "DivergenceReport", "numeric_limit_along", "window_equal",
    "potential_to_json", "potential_from_json",
    "sequence_spec_to_json", "sequence_spec_from_json",
    # operators
    "BandOperator", "DenseWindowMatrix", "CapacityError", "band", "entry",
    "shift_conjugate", "truncate", "wiener_norm", "apply",
    "operator_to_json", "operator_from_json", "MAX_WINDOW_SIDE",
    # spectra
    "SpectralRegion", "RealInterval", "Circle", "ClosedDisk", "FloquetSymbol",
    "floquet_symbol", "symbol_matrix", "periodic_spectrum",
    "transfer_discriminant", "laurent_spectrum", "smin_truncation",
    "pseudospectrum", "lower_norm_estimate", "grid_centers",
    "rasterize_points", "hausdorff_distance", "region_to_json",
    "region_from_json", "MAX_TRUNCATION_N",
    # limitops
    "OperatorSpectrumFamily", "operator_spectrum", "EssentialOptions",
    "essential_spectrum", "random_bidiagonal_spectrum", "VerificationReport",
    "verify_randprod", "verify_limit_operator", "favard_report",
    "continued_fraction_convergents", "verification_report_to_json",
]
