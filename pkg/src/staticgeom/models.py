"""Explicit static warped-product manifolds.

Every family is stored in one canonical radial chart,

    g = f(s)^-2 ds^2 + s^2 g0,      f(s)^2 = W(s) = k - eps*s^2 - c*s^(2-n),

on an interval of s, where (N, g0) is an (n-1)-dimensional Einstein
cross-section with Ric(g0) = (n-2)*k*g0 and vol(N, g0) = section_volume.
The potential f solves the static equations with cosmological constant
eps*n, so the scalar curvature is eps*n*(n-1) identically. Families:

    space_form(eps)               k=1, c=0          (Euclidean / round / hyperbolic)
    schwarzschild(m)              eps=0, k=1, c=2m
    de_sitter_schwarzschild(m)    eps=+1, k=1, c=m   (two horizons s1 < s2)
    kottler(k, m)                 eps=-1, c=2m       (ALH, one horizon)

Horizons are the roots of W. All curvature quantities of the warped metric
reduce to W, W', W'' and the constant k; the closed forms below were checked
symbolically and are cross-checked at runtime by a finite-difference path
that differentiates only the raw metric coefficients.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq
from scipy.special import gamma

from .errors import (
    NoHorizon,
    OutsideDomain,
    ParameterOutOfRange,
    RootFindingFailed,
)

__all__ = [
    "FAMILIES",
    "Horizon",
    "StaticModel",
    "BrendleChart",
    "unit_sphere_volume",
    "build_model",
    "find_horizons",
    "static_residual",
    "ricci_rr_at_horizon",
    "interior_points",
    "dss_critical_mass",
    "kottler_minimal_mass",
]

FAMILIES = ("space_form", "schwarzschild", "de_sitter_schwarzschild", "kottler")

_ROOT_RTOL = 1e-12
_BRACKET_POINTS = 256


def unit_sphere_volume(d):
    """Volume of the unit d-sphere, omega_d = 2 pi^((d+1)/2) / Gamma((d+1)/2)."""
    return 2.0 * np.pi ** ((d + 1) / 2.0) / gamma((d + 1) / 2.0)


def dss_critical_mass(n):
    """Largest mass for which 1 - s^2 - m s^(2-n) has two positive roots."""
    return 2.0 / (n - 2) * ((n - 2) / n) ** (n / 2.0)


def kottler_minimal_mass(n):
    """Infimum of masses for which s^2 - 1 - 2m s^(2-n) has a positive zero."""
    return -(((n - 2) / n) ** ((n - 1) / 2.0)) / n


@dataclass(frozen=True)
class Horizon:
    """One boundary component {f = 0} of a static model."""

    s_root: float
    kappa: float                 # surface gravity |df|_g, constant on the horizon
    scalar_curvature: float      # R^N of the induced metric
    volume: float
    admissible: bool             # R^N > eps*n*(n-1)

    def as_dict(self):
        return {
            "s_root": self.s_root,
            "kappa": self.kappa,
            "scalar_curvature": self.scalar_curvature,
            "volume": self.volume,
            "admissible": self.admissible,
        }


@dataclass(frozen=True)
class StaticModel:
    """Immutable warped-product static manifold; safe to share between workers."""

    family: str
    n: int
    params: dict
    epsilon: int
    k: int                       # Einstein sign of the cross-section metric g0
    c: float                     # coefficient of s^(2-n) in W
    section_volume: float
    s_domain: tuple              # (lo, hi); open at horizon ends, hi may be inf
    horizons: tuple = field(default_factory=tuple)

    # -- potential ---------------------------------------------------------

    def W(self, s):
        s = np.asarray(s, dtype=float)
        if self.c == 0.0:
            return self.k - self.epsilon * s**2
        return self.k - self.epsilon * s**2 - self.c * s ** (2 - self.n)

    def Wp(self, s):
        s = np.asarray(s, dtype=float)
        if self.c == 0.0:
            return -2.0 * self.epsilon * s
        return -2.0 * self.epsilon * s + (self.n - 2) * self.c * s ** (1 - self.n)

    def Wpp(self, s):
        s = np.asarray(s, dtype=float)
        if self.c == 0.0:
            return -2.0 * self.epsilon * np.ones_like(s)
        return -2.0 * self.epsilon - (self.n - 2) * (self.n - 1) * self.c * s ** (-self.n)

    def f(self, s):
        return np.sqrt(self.W(s))

    def fp(self, s):
        """f'(s); singular at horizons."""
        return self.Wp(s) / (2.0 * self.f(s))

    def fpp(self, s):
        w = self.W(s)
        return self.Wpp(s) / (2.0 * np.sqrt(w)) - self.Wp(s) ** 2 / (4.0 * w**1.5)

    # -- domain ------------------------------------------------------------

    @property
    def has_center(self):
        """True when s = 0 is a smooth center point (space forms only)."""
        return self.family == "space_form"

    def contains(self, s, strict=True):
        lo, hi = self.s_domain
        s = np.asarray(s, dtype=float)
        if strict:
            return np.all(s > lo) and np.all(s < hi)
        return np.all(s >= lo) and np.all(s <= hi)

    def require_inside(self, s):
        if not self.contains(s):
            raise OutsideDomain(
                f"s={s} is not strictly inside the domain {self.s_domain}")

    # -- curvature closed forms (orthonormal frame) -------------------------

    def ricci_rr(self, s):
        """Ric(e_r, e_r) for the unit radial direction."""
        return -(self.n - 1) * self.Wp(s) / (2.0 * np.asarray(s, dtype=float))

    def ricci_tan(self, s):
        """Ric(e, e) for any unit direction tangent to the cross-section."""
        s = np.asarray(s, dtype=float)
        return (-self.Wp(s) / (2.0 * s)
                + (self.n - 2) * (self.k - self.W(s)) / s**2)

    def scalar_curvature(self, s):
        s = np.asarray(s, dtype=float)
        return (-(self.n - 1) * self.Wp(s) / s
                + (self.n - 1) * (self.n - 2) * (self.k - self.W(s)) / s**2)

    # -- serialization -----------------------------------------------------

    def as_dict(self):
        return {
            "family": self.family,
            "n": self.n,
            "params": dict(self.params),
            "section_volume": self.section_volume,
        }


# ---------------------------------------------------------------------------
# construction


def _validate(family, n, params):
    if family not in FAMILIES:
        raise ParameterOutOfRange(f"unknown family {family!r}; expected one of {FAMILIES}")
    if int(n) != n or n < 3:
        raise ParameterOutOfRange("dimension n must be an integer >= 3")
    n = int(n)
    p = dict(params or {})

    if family == "space_form":
        eps = p.pop("epsilon", 0)
        if eps not in (-1, 0, 1):
            raise ParameterOutOfRange("space_form epsilon must be one of -1, 0, 1")
        if p:
            raise ParameterOutOfRange(f"unexpected space_form parameters: {sorted(p)}")
        return n, {"epsilon": int(eps)}, int(eps), 1, 0.0

    if family == "schwarzschild":
        m = p.pop("m", None)
        if p or m is None:
            raise ParameterOutOfRange("schwarzschild takes exactly one parameter m")
        if m <= 0:
            raise ParameterOutOfRange("schwarzschild mass must be positive")
        return n, {"m": float(m)}, 0, 1, 2.0 * float(m)

    if family == "de_sitter_schwarzschild":
        m = p.pop("m", None)
        if p or m is None:
            raise ParameterOutOfRange("de_sitter_schwarzschild takes exactly one parameter m")
        m_crit = dss_critical_mass(n)
        if not 0.0 < m < m_crit:
            raise ParameterOutOfRange(
                f"de_sitter_schwarzschild requires 0 < m < {m_crit!r} "
                f"(two distinct horizons); got m={m!r}")
        return n, {"m": float(m)}, 1, 1, float(m)

    # kottler
    k = p.pop("k", None)
    m = p.pop("m", None)
    if p or k is None or m is None:
        raise ParameterOutOfRange("kottler takes exactly two parameters k and m")
    if k not in (-1, 0, 1):
        raise ParameterOutOfRange("kottler k must be one of -1, 0, 1")
    if k >= 0 and m <= 0:
        raise NoHorizon(f"kottler with k={k} needs m > 0 for the potential to vanish")
    if k == -1 and m <= kottler_minimal_mass(n):
        raise NoHorizon(
            f"kottler k=-1 needs m > {kottler_minimal_mass(n)!r} "
            "for a nondegenerate horizon")
    return n, {"k": int(k), "m": float(m)}, -1, int(k), 2.0 * float(m)


def _bracket_grid(n, epsilon, k, c):
    """Log grid of candidate radii, seeded with the stationary point of W.

    Near-critical de Sitter-Schwarzschild has a narrow positivity window
    around the stationary point s* = ((n-2)c/(2|eps|))^(1/n); a bare log
    grid can step across it, so s*-anchored points are merged in.
    """
    anchors = [1.0]
    if c > 0:
        anchors.append(c ** (1.0 / (n - 2)))
    if epsilon != 0 and c != 0:
        sstar = (abs((n - 2) * c / 2.0)) ** (1.0 / n)
        anchors.extend([sstar, 0.5 * sstar, 2.0 * sstar])
    lo = 1e-3 * min(anchors)
    hi = 1e3 * max(anchors)
    grid = np.geomspace(lo, hi, _BRACKET_POINTS)
    extra = [a for a in anchors if lo < a < hi]
    return np.unique(np.concatenate([grid, np.asarray(extra)]))


def _refine_root(wfun, wpfun, a, b):
    """Bisection to relative tolerance, then one Newton polish."""
    fa, fb = wfun(a), wfun(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if fa * fb > 0:
        raise RootFindingFailed("bracket endpoints have equal signs")
    while (b - a) > _ROOT_RTOL * max(abs(a), abs(b)):
        mid = 0.5 * (a + b)
        fm = wfun(mid)
        if fm == 0.0:
            a = b = mid
            break
        if fa * fm < 0:
            b, fb = mid, fm
        else:
            a, fa = mid, fm
    root = 0.5 * (a + b)
    slope = wpfun(root)
    if slope != 0.0:
        newton = root - wfun(root) / slope
        if a - (b - a) <= newton <= b + (b - a):
            root = newton
    return float(root)


def _locate_roots(n, epsilon, k, c):
    """All positive roots of W, sorted increasingly."""
    def wfun(s):
        return k - epsilon * s * s - c * s ** (2 - n)

    def wpfun(s):
        return -2.0 * epsilon * s + (n - 2) * c * s ** (1 - n)

    if c == 0.0:
        if epsilon == 1:   # round sphere: W = 1 - s^2
            return [1.0]
        return []
    grid = _bracket_grid(n, epsilon, k, c)
    w = wfun(grid)
    roots = [float(g) for g in grid[w == 0.0]]
    for i in np.flatnonzero(w[:-1] * w[1:] < 0):
        roots.append(_refine_root(wfun, wpfun, grid[i], grid[i + 1]))
    return sorted(roots)


def _horizon_from_root(n, epsilon, k, section_volume, model_Wp, root):
    kappa = 0.5 * abs(float(model_Wp(root)))
    rn = (n - 1) * (n - 2) * k / root**2
    return Horizon(
        s_root=float(root),
        kappa=kappa,
        scalar_curvature=rn,
        volume=root ** (n - 1) * section_volume,
        admissible=bool(rn > epsilon * n * (n - 1)),
    )


def build_model(family, n, params=None, section_volume=None):
    """Construct a static model; horizon endpoints are located by root-finding.

    section_volume defaults to the unit-sphere volume omega_{n-1}; for the
    kottler family with k in {0, -1} it is the (arbitrary) volume of the
    compact Einstein cross-section.
    """
    n, params, epsilon, k, c = _validate(family, n, params)
    if section_volume is None:
        section_volume = unit_sphere_volume(n - 1)
    if section_volume <= 0:
        raise ParameterOutOfRange("section_volume must be positive")

    roots = _locate_roots(n, epsilon, k, c)

    if family == "de_sitter_schwarzschild":
        if len(roots) != 2:
            raise RootFindingFailed(
                f"expected two de Sitter-Schwarzschild horizons, found {len(roots)}")
        domain = (roots[0], roots[1])
    elif family == "schwarzschild":
        if len(roots) != 1:
            raise RootFindingFailed("expected a single Schwarzschild horizon")
        domain = (roots[0], np.inf)
    elif family == "kottler":
        if not roots:
            raise NoHorizon("kottler potential has no positive zero")
        roots = [roots[-1]]          # domain outside the largest zero
        domain = (roots[0], np.inf)
    else:  # space_form
        domain = (0.0, 1.0) if epsilon == 1 else (0.0, np.inf)

    def wp(s):
        return -2.0 * epsilon * s + (n - 2) * c * s ** (1 - n)

    horizons = tuple(
        _horizon_from_root(n, epsilon, k, section_volume, wp, r) for r in roots)
    for h in horizons:
        if h.kappa <= _ROOT_RTOL:
            raise ParameterOutOfRange(
                f"degenerate horizon at s={h.s_root!r} (zero surface gravity)")
    return StaticModel(
        family=family, n=n, params=params, epsilon=epsilon, k=k, c=c,
        section_volume=float(section_volume), s_domain=domain, horizons=horizons)


def find_horizons(model):
    """Recompute the horizon list of ``model`` from scratch (0, 1 or 2 entries)."""
    roots = _locate_roots(model.n, model.epsilon, model.k, model.c)
    if model.family == "kottler":
        roots = roots[-1:]
    return [
        _horizon_from_root(model.n, model.epsilon, model.k,
                           model.section_volume, model.Wp, r)
        for r in roots
    ]


def ricci_rr_at_horizon(model, horizon):
    """Radial Ricci curvature on the horizon via the Gauss relation.

    Equals (eps*n*(n-1) - R^N)/2 and is negative exactly when the horizon
    is admissible.
    """
    return 0.5 * (model.epsilon * model.n * (model.n - 1) - horizon.scalar_curvature)


# ---------------------------------------------------------------------------
# static-equation residuals


@dataclass(frozen=True)
class ResidualReport:
    """Pointwise residuals of the static equations, two evaluation paths."""

    s: float
    static_max: float            # max-norm of f Ric - Hess f + (Lap f) g, closed form
    laplace: float               # |Lap f + eps n f|, closed form
    scalar_deviation: float      # |R - eps n (n-1)|, closed form
    fd_static_max: float         # same residuals from 4th-order differences
    fd_laplace: float            # of the raw metric coefficients
    fd_scalar_deviation: float
    direction_max: float         # largest |T(v,v)| over sampled unit directions


def _residual_components(n, epsilon, k, f, f_r, f_rr, h, h_r, h_rr):
    """Residual pieces from r-chart data (shared by both evaluation paths)."""
    ric_rr = -(n - 1) * h_rr / h
    ric_tan = -h_rr / h + (n - 2) * (k - h_r**2) / h**2
    scal = -2.0 * (n - 1) * h_rr / h + (n - 1) * (n - 2) * (k - h_r**2) / h**2
    lap = f_rr + (n - 1) * (h_r / h) * f_r
    res_rr = f * ric_rr - f_rr + lap
    res_tan = f * ric_tan - (h_r / h) * f_r + lap
    lap_res = lap + epsilon * n * f
    scal_dev = scal - epsilon * n * (n - 1)
    return res_rr, res_tan, lap_res, scal_dev


def _fd_step(model, s):
    """Step for the finite-difference path, shrinking near horizon endpoints."""
    lo, hi = model.s_domain
    d = s - lo if lo > 0 else s
    if np.isfinite(hi):
        d = min(d, hi - s)
    return min(3e-3 * d, 1e-2 * s, d / 8.0)


def _fd45(values, h):
    """4th-order first and second derivatives from a symmetric 5-point stencil."""
    d1 = (-values[4] + 8.0 * values[3] - 8.0 * values[1] + values[0]) / (12.0 * h)
    d2 = (-values[4] + 16.0 * values[3] - 30.0 * values[2]
          + 16.0 * values[1] - values[0]) / (12.0 * h * h)
    return d1, d2


def static_residual(model, s, direction_samples=8):
    """Check the static equations at one interior radius.

    The closed-form path uses the model's analytic curvature; the
    finite-difference path differentiates only the sampled metric
    coefficients g_ss = 1/W and the angular factor s^2, so it is an
    independent oracle for the hard-coded curvature.
    """
    s = float(s)
    model.require_inside(s)
    n, eps, k = model.n, model.epsilon, model.k

    # closed-form path in the proper-radius chart: h = s, h_r = f,
    # h_rr = f (df/ds) = W'/2, f_r = W'/2, f_rr = f W''/2
    w = float(model.W(s))
    wp = float(model.Wp(s))
    wpp = float(model.Wpp(s))
    f = np.sqrt(w)
    res_rr, res_tan, lap_res, scal_dev = _residual_components(
        n, eps, k, f=f, f_r=wp / 2.0, f_rr=f * wpp / 2.0, h=s, h_r=f, h_rr=wp / 2.0)

    # finite-difference path on the metric coefficients A = 1/W, B = s^2
    hstep = _fd_step(model, s)
    stencil = s + hstep * np.arange(-2.0, 3.0)
    a_vals = 1.0 / model.W(stencil)
    b_vals = stencil**2
    f_vals = model.f(stencil)
    a = a_vals[2]
    b = b_vals[2]
    ap, _ = _fd45(a_vals, hstep)
    bp, bpp = _fd45(b_vals, hstep)
    fdp, fdpp = _fd45(f_vals, hstep)
    hw = np.sqrt(b)
    h_r = bp / (2.0 * np.sqrt(a * b))
    h_rr = (bpp / (2.0 * np.sqrt(a * b))
            - bp * (ap * b + a * bp) / (4.0 * (a * b) ** 1.5)) / np.sqrt(a)
    f_r = fdp / np.sqrt(a)
    f_rr = fdpp / a - fdp * ap / (2.0 * a * a)
    fd_rr, fd_tan, fd_lap, fd_scal = _residual_components(
        n, eps, k, f=f_vals[2], f_r=f_r, f_rr=f_rr, h=hw, h_r=h_r, h_rr=h_rr)

    # the tensor is diagonal in this frame; sampled directions interpolate
    phi = np.pi * np.arange(direction_samples) / max(direction_samples, 1)
    direction_max = float(
        np.max(np.abs(np.cos(phi) ** 2 * res_rr + np.sin(phi) ** 2 * res_tan))
    ) if direction_samples else 0.0

    return ResidualReport(
        s=s,
        static_max=float(max(abs(res_rr), abs(res_tan))),
        laplace=float(abs(lap_res)),
        scalar_deviation=float(abs(scal_dev)),
        fd_static_max=float(max(abs(fd_rr), abs(fd_tan))),
        fd_laplace=float(abs(fd_lap)),
        fd_scalar_deviation=float(abs(fd_scal)),
        direction_max=direction_max,
    )


def interior_points(model, count=20, margin=0.05):
    """Log-spaced interior radii, kept a relative margin away from the ends."""
    lo, hi = model.s_domain
    if np.isfinite(hi):
        a = lo + margin * (hi - lo)
        b = hi - margin * (hi - lo)
    else:
        b = 40.0 * max(lo, 1.0)
        a = lo + margin * (b - lo) if lo > 0 else margin * b / 40.0
    return np.geomspace(a, b, count)


# ---------------------------------------------------------------------------
# proper-radius (Brendle) chart


class BrendleChart:
    """Transcoder between the canonical s-chart and the proper-radius chart.

    The proper-radius form is g = dr^2 + h(r)^2 g0 with h(r) = s and
    h'(r) = f(s). r is measured from the given base radius (a horizon root,
    or the center s = 0 for space forms). Near a horizon the substitution
    s = s0 + xi^2 removes the inverse-square-root singularity of 1/f.
    """

    def __init__(self, model, base=None):
        if base is None:
            if model.horizons:
                base = model.horizons[0].s_root
            elif model.has_center:
                base = 0.0
            else:
                raise OutsideDomain("model has neither a horizon nor a center")
        self.model = model
        self.base = float(base)
        self._at_horizon = any(
            abs(h.s_root - self.base) <= 1e-12 * max(1.0, self.base)
            for h in model.horizons)

    @property
    def h0(self):
        """h(0): warping factor at the base slice."""
        return self.base

    def _w_over_offset(self, t):
        """W(t)/(t - base), stable through the simple zero at the base."""
        dt = t - self.base
        if abs(dt) < 1e-6 * max(self.base, 1.0):
            return float(self.model.Wp(self.base) + 0.5 * self.model.Wpp(self.base) * dt)
        return float(self.model.W(t)) / dt

    def r_of_s(self, s):
        s = float(s)
        if s < self.base:
            raise OutsideDomain("s below the chart base")
        if s == self.base:
            return 0.0
        if self._at_horizon:
            # t = base + xi^2 turns dt/sqrt(W) into a smooth integrand
            xi_max = np.sqrt(s - self.base)
            val, _ = quad(
                lambda xi: 2.0 / np.sqrt(self._w_over_offset(self.base + xi * xi)),
                0.0, xi_max, epsabs=1e-14, epsrel=1e-12, limit=200)
        else:
            val, _ = quad(lambda t: 1.0 / self.model.f(t), self.base, s,
                          epsabs=1e-14, epsrel=1e-12, limit=200)
        return float(val)

    def s_of_r(self, r):
        r = float(r)
        if r < 0:
            raise OutsideDomain("negative proper radius")
        if r == 0.0:
            return self.base
        hi = max(2.0 * self.base, 1.0)
        while self.r_of_s(hi) < r:
            hi *= 2.0
            if hi > 1e12:
                raise RootFindingFailed("proper radius out of reach")
        return brentq(lambda s: self.r_of_s(s) - r, self.base, hi,
                      xtol=1e-15, rtol=8.9e-16)

    def h_of_r(self, r):
        return self.s_of_r(r)

    def f_of_r(self, r):
        return float(self.model.f(self.s_of_r(r)))
