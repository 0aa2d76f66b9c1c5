from .squaring import (
    N_CAP,
    LowerBoundCheck,
    SquaringCertificate,
    certify_rays,
    find_squaring_iterate,
    iterate_lower_bounds,
)
from .growth import (
    GRID_POINTS,
    M_MAX,
    Q_CAP,
    GrowthCertificate,
    GrowthTable,
    GrowthWitness,
    SampleGrid,
    bounded_trend,
    default_grid,
    exact_iterate_derivatives,
    growth_certificate,
    growth_table,
    iterate_jets,
    product_formula_holds,
    write_growth_csv,
)
from .orbits import (
    CesaroReport,
    CesaroRow,
    OrbitReport,
    cesaro_diagnostic,
    escape_radius,
    orbit,
    write_orbit_csv,
)
