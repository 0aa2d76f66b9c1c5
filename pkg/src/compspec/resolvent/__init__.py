from .series import (
    TERM_CAP,
    GridFunction,
    ResolventResult,
    grid_nodes,
    interpolation_error,
    residual,
    resolvent_apply,
)
from .testfunctions import (
    MAX_ORDER,
    Bump,
    Gaussian,
    HermiteGaussian,
    Plateau,
    SchwartzTestFunction,
    evaluate_test_function,
    parse_test_function,
)
from .witness import WitnessReport, inverse_orbit, spectral_witness

__all__ = [
    "Bump",
    "Gaussian",
    "GridFunction",
    "HermiteGaussian",
    "MAX_ORDER",
    "Plateau",
    "ResolventResult",
    "SchwartzTestFunction",
    "TERM_CAP",
    "WitnessReport",
    "evaluate_test_function",
    "grid_nodes",
    "interpolation_error",
    "inverse_orbit",
    "parse_test_function",
    "residual",
    "resolvent_apply",
    "spectral_witness",
]
