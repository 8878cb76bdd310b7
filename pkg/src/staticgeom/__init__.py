"""staticgeom: numerical laboratory for geometric inequalities on static
warped-product manifolds (Heintze-Karcher type bounds, reverse Penrose
bound, two-horizon comparison, inverse-mean-curvature-flow monotonicity,
asymptotically hyperbolic mass extraction, horizon Poisson equation)."""

__version__ = "0.1.0"

from .models import (
    BrendleChart,
    Horizon,
    StaticModel,
    build_model,
    find_horizons,
    interior_points,
    ricci_rr_at_horizon,
    static_residual,
    unit_sphere_volume,
)

__all__ = [
    "__version__",
    "BrendleChart",
    "Horizon",
    "StaticModel",
    "build_model",
    "find_horizons",
    "interior_points",
    "ricci_rr_at_horizon",
    "static_residual",
    "unit_sphere_volume",
]
