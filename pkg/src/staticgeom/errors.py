"""Exception hierarchy.

Two broad classes matter for the CLI exit-code contract: precondition /
configuration problems (exit 2) and numerical failures of a solver or
quadrature (exit 3). Everything derives from StaticGeomError so library
users can catch one base type.
"""


class StaticGeomError(Exception):
    """Base class for all staticgeom errors."""


class PreconditionError(StaticGeomError):
    """Input violates a documented precondition (CLI exit code 2)."""


class NumericalError(StaticGeomError):
    """A numerical method failed to converge or left its domain (CLI exit 3)."""


# -- precondition / configuration -----------------------------------------

class ParameterOutOfRange(PreconditionError):
    """Model parameters outside the family's admissible range."""


class NoHorizon(PreconditionError):
    """The potential has no positive zero where one is required."""


class OutsideDomain(PreconditionError):
    """Radial coordinate not strictly inside the model's domain."""


class NotMeanConvex(PreconditionError):
    """Surface has a point with nonpositive mean curvature."""


class RegionInvalid(PreconditionError):
    """Region specification inconsistent with the model or surface."""


class HorizonInadmissible(PreconditionError):
    """Horizon fails the curvature admissibility condition."""


class NotALH(PreconditionError):
    """Operation requires an asymptotically locally hyperbolic model."""


class InvalidRoot(PreconditionError):
    """Horizon-radius data is inconsistent or nonpositive."""


class HorizonCountMismatch(PreconditionError):
    """Model does not carry the number of horizons the operation needs."""


class WrongCosmologicalSign(PreconditionError):
    """Operation is only defined for the opposite cosmological sign."""


class NotNegativeDefinite(PreconditionError):
    """Radial Ricci datum must be strictly negative everywhere."""


class PoleSingularity(PreconditionError):
    """Pole-regularized curvature lost too many digits; grid too coarse."""


# -- numerical failures ----------------------------------------------------

class RootFindingFailed(NumericalError):
    """Bracketing or refinement of a horizon root failed."""


class QuadratureNotConverged(NumericalError):
    """Grid-doubling error estimate exceeds the requested tolerance."""


class OdeFailure(NumericalError):
    """Adaptive ODE integration failed."""


class ExtrapolationUnstable(NumericalError):
    """Richardson ladder estimates diverge instead of settling."""


class SolveFailed(NumericalError):
    """Linear solve of a discretized BVP failed."""


class DomainExit(NumericalError):
    """A flow reached the boundary of the radial domain before final time."""


class MeanConvexityLost(NumericalError):
    """A flow lost mean convexity (partial results are still returned)."""
