"""Geometry of matrix-valued power spectral densities."""
from .divergences import (
    DivergenceResult,
    Measure,
    d1,
    d2,
    d_frobenius,
    d_hellinger,
    d_itakura_saito,
    d_log_spectral,
    divergence,
)
from .factorization import (
    FactorizationReport,
    SpectralFactor,
    cross_error_variance,
    factorize,
    factorize_matrix,
    factorize_scalar,
    innovation_spectrum,
    optimal_predictor,
    prediction_error_variance,
    szego_kolmogorov_check,
)
from .geometry import (
    GeodesicPath,
    expansion_check_d1,
    expansion_check_d2,
    geodesic_distance,
    metric_g1,
    metric_g2,
    psd_geodesic,
)
from .hermitian import geometric_mean, spd_distance, spd_geodesic
from .psd import (
    ComplexPolynomial,
    FrequencyGrid,
    Inadmissible,
    MatrixPsd,
    PerturbationField,
)

__version__ = "0.1.0"
