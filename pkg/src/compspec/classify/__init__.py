from .criteria import (
    CriterionWitness,
    SymbolClass,
    composition_criterion,
    composition_witness,
    expansive_taylor_point,
    is_mean_ergodic,
    simple_fp_criterion,
    simple_fp_witness,
    symbol_class,
)
from .fixedpoints import FixedPointRecord, Stability, displacement, fixed_points, has_real_critical_point

__all__ = [
    "CriterionWitness",
    "FixedPointRecord",
    "Stability",
    "SymbolClass",
    "composition_criterion",
    "composition_witness",
    "displacement",
    "expansive_taylor_point",
    "fixed_points",
    "has_real_critical_point",
    "is_mean_ergodic",
    "simple_fp_criterion",
    "simple_fp_witness",
    "symbol_class",
]
