from .engine import (
    Provenance,
    SpectrumDescriptor,
    Status,
    contains,
    spectral_map_iterate,
    spectrum_of,
    zero_in_spectrum,
)
from .monotone import MonotoneMeta, monotone_containments, monotone_containments_tagged, validate
from .sets import (
    Annulus,
    ClosedDiscMinusOrigin,
    ClosedUnitDisc,
    FinitePoints,
    FullPlane,
    Membership,
    OriginOnly,
    PlaneMinusOrigin,
    SetExpr,
    Union,
    UnitCircle,
    contains_point,
    covers,
    power_image,
    union,
)

__all__ = [
    "Annulus",
    "ClosedDiscMinusOrigin",
    "ClosedUnitDisc",
    "FinitePoints",
    "FullPlane",
    "Membership",
    "MonotoneMeta",
    "OriginOnly",
    "PlaneMinusOrigin",
    "Provenance",
    "SetExpr",
    "SpectrumDescriptor",
    "Status",
    "Union",
    "UnitCircle",
    "contains",
    "contains_point",
    "covers",
    "monotone_containments",
    "monotone_containments_tagged",
    "power_image",
    "spectral_map_iterate",
    "spectrum_of",
    "union",
    "validate",
    "zero_in_spectrum",
]
