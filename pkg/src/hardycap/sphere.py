"""Spherical caps: geometry, the singular weight rho, rearrangements.

The geodesic cap B(alpha) on the unit n-sphere has volume
``A(alpha) = omega_{n-1} * integral_0^alpha sin(theta)**(n-1) dtheta``.
The cap inequality

    integral |grad u|^p dV >= ((n-p)/p)^p integral |u|^p rho^p dV

holds for u vanishing outside a cap of radius a_star, where rho is the
truncated weight eta built from the sine weight, scaled by (p-1)/(n-p);
the reduction to the one-dimensional inequality is exact for radial
functions.  Rearrangement machinery (distribution function, decreasing
and spherical rearrangement, Hardy-Littlewood and radial Polya-Szego
checks) operates on discrete sample sets, which capture the distribution
function exactly without meshing the sphere.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, InequalityViolationError, ParameterError
from .eta import eta_truncated_many, find_truncation_point
from .hardy1d import GridFunction, QuotientReport, extremal_V_k, hardy_quotient
from .weights import make_sine_weight


def sphere_surface_volume(m):
    """Volume of the unit m-sphere: 2 * pi**((m+1)/2) / Gamma((m+1)/2)."""
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    return 2.0 * math.pi ** ((m + 1) / 2.0) / math.gamma((m + 1) / 2.0)


def sin_power_integral(m, theta):
    """integral_0^theta sin(s)**m ds for integer m >= 0, via the standard
    reduction S_m = (-cos * sin**(m-1) + (m-1) * S_{m-2}) / m."""
    theta = np.asarray(theta, dtype=float)
    if m == 0:
        return theta.copy() if theta.ndim else float(theta)
    s, c = np.sin(theta), np.cos(theta)
    prev, cur = np.asarray(theta, dtype=float), 1.0 - c  # S_0, S_1
    if m == 1:
        return cur if theta.ndim else float(cur)
    for j in range(2, m + 1):
        prev, cur = cur, (-c * s ** (j - 1) + (j - 1) * prev) / j
    return cur if theta.ndim else float(cur)


def cap_volume(n, alpha):
    """Volume of the geodesic cap of radius alpha on the unit n-sphere."""
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    if np.any(np.asarray(alpha) < 0.0) or np.any(np.asarray(alpha) > math.pi):
        raise DomainError(f"alpha must lie in [0, pi], got {alpha}")
    return sphere_surface_volume(n - 1) * sin_power_integral(n - 1, alpha)


def inverse_cap_volume(n, volume):
    """Cap radius alpha with cap_volume(n, alpha) = volume."""
    total = cap_volume(n, math.pi)
    if not 0.0 < volume < total:
        raise DomainError(f"volume must lie in (0, {total}), got {volume}")
    return brentq(lambda th: cap_volume(n, th) - volume, 0.0, math.pi, xtol=1e-15)


@dataclass(frozen=True)
class CapGeometry:
    """Dimension n and the cap radius a_star with |B(a_star)| = |Omega|."""

    n: int
    a_star: float

    def __post_init__(self):
        if self.n < 2:
            raise ParameterError(f"n must be >= 2, got {self.n}")
        if not 0.0 < self.a_star < math.pi:
            raise ParameterError(f"a_star must lie in (0, pi), got {self.a_star}")

    @property
    def omega(self):
        """Volume of the unit (n-1)-sphere."""
        return sphere_surface_volume(self.n - 1)

    @property
    def measure(self):
        """Volume of the cap B(a_star)."""
        return cap_volume(self.n, self.a_star)


@dataclass(frozen=True)
class SphericalProfile:
    """A radial (theta-only) piecewise-linear function on a cap, vanishing
    at the cap boundary."""

    geometry: CapGeometry
    grid: GridFunction

    def __post_init__(self):
        a = self.geometry.a_star
        if abs(self.grid.nodes[-1] - a) > 1e-14 * max(a, 1.0):
            raise ParameterError("last node must equal the cap radius a_star")

    @property
    def nodes(self):
        return self.grid.nodes

    @property
    def values(self):
        return self.grid.values


@dataclass(frozen=True)
class SampleSet:
    """Function samples on Omega together with the measure of each cell."""

    values: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        values = np.ascontiguousarray(self.values, dtype=float)
        weights = np.ascontiguousarray(self.weights, dtype=float)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "weights", weights)
        if values.shape != weights.shape or values.ndim != 1 or len(values) == 0:
            raise ParameterError("values and weights must be equal-length 1-D arrays")
        if np.any(weights < 0.0):
            raise ParameterError("weights must be nonnegative")

    @property
    def total_measure(self):
        return float(np.sum(self.weights))

    def moment(self, q):
        return float(np.sum(self.weights * np.abs(self.values) ** q))


def _merged_layers(s):
    """Distinct |values| sorted descending with summed weights and their
    cumulative measures."""
    v = np.abs(s.values)
    order = np.argsort(-v, kind="stable")
    v, w = v[order], s.weights[order]
    levels, start = np.unique(-v, return_index=True)
    levels = -levels  # descending
    bucket = np.add.reduceat(w, start)
    return levels, bucket, np.cumsum(bucket)


def distribution_function(s, t):
    """mu(t) = measure of { |u| > t }; non-increasing and right-continuous."""
    if t < 0.0:
        raise DomainError(f"t must be >= 0, got {t}")
    return float(np.sum(s.weights[np.abs(s.values) > t]))


def decreasing_rearrangement(s, sigma):
    """u*(sigma) = inf{ t >= 0 : mu(t) <= sigma }."""
    total = s.total_measure
    if not 0.0 <= sigma <= total:
        raise DomainError(f"sigma must lie in [0, {total}], got {sigma}")
    levels, _, cum = _merged_layers(s)
    # cum[-1] and total are the same sum in different association orders;
    # clamp so that u*(|Omega|) is exactly 0
    cum[-1] = min(cum[-1], total)
    idx = np.searchsorted(cum, sigma, side="right")
    if idx >= len(levels):
        return 0.0
    return float(levels[idx])


@dataclass(frozen=True)
class CapStepProfile:
    """A radial step function on a cap: ``levels[i]`` on the annulus
    between ``boundaries[i]`` and ``boundaries[i+1]``.

    Spherical rearrangements of sample sets are plateau functions, so
    this exact step representation (rather than a piecewise-linear grid
    function) preserves equimeasurability to rounding accuracy.
    """

    geometry: CapGeometry
    boundaries: np.ndarray  # length J+1, starts at 0
    levels: np.ndarray  # length J, non-increasing

    def value(self, theta):
        idx = np.clip(np.searchsorted(self.boundaries, theta, side="right") - 1,
                      0, len(self.levels) - 1)
        return self.levels[idx]

    def cell_measures(self):
        vols = cap_volume(self.geometry.n, self.boundaries)
        return np.diff(vols)

    def moment(self, q):
        return float(np.sum(self.levels**q * self.cell_measures()))


def spherical_rearrangement(s, geom):
    """Rearrange a sample set into the radial, non-increasing step profile
    on the cap of equal volume."""
    total = s.total_measure
    if abs(total - geom.measure) > 1e-8 * geom.measure:
        raise ParameterError(
            f"sample-set measure {total} does not match the cap volume {geom.measure}"
        )
    levels, _, cum = _merged_layers(s)
    # boundary of the j-th plateau: the cap radius holding cumulative mass
    inner = [inverse_cap_volume(geom.n, v) for v in cum[:-1]]
    boundaries = np.concatenate(([0.0], inner, [geom.a_star]))
    return CapStepProfile(geometry=geom, boundaries=boundaries, levels=levels)


def check_hardy_littlewood(s1, s2, geom, tol=1e-9):
    """Hardy-Littlewood: integral u*v over Omega vs its rearranged form.

    Both sample sets must live on the same cells.  Returns ``(lhs, rhs)``
    with ``lhs = sum w*u*v`` and ``rhs = integral u* v* dsigma`` computed
    exactly on the merged plateau structure; raises if lhs > rhs + tol.
    """
    if s1.values.shape != s2.values.shape or not np.array_equal(s1.weights, s2.weights):
        raise ParameterError("sample sets must share the same cell structure")
    lhs = float(np.sum(s1.weights * s1.values * s2.values))
    lev1, _, cum1 = _merged_layers(s1)
    lev2, _, cum2 = _merged_layers(s2)
    cuts = np.union1d(cum1, cum2)
    widths = np.diff(np.concatenate(([0.0], cuts)))
    mids = cuts - 0.5 * widths
    # clip: rounding can push the last midpoint past the shorter cumsum
    u_star = lev1[np.minimum(np.searchsorted(cum1, mids), len(lev1) - 1)]
    v_star = lev2[np.minimum(np.searchsorted(cum2, mids), len(lev2) - 1)]
    rhs = float(np.sum(widths * u_star * v_star))
    if lhs > rhs + tol:
        raise InequalityViolationError(
            f"Hardy-Littlewood violated: lhs={lhs!r} > rhs={rhs!r}"
        )
    return lhs, rhs


# ---------------------------------------------------------------------------
# the singular weight rho


@functools.lru_cache(maxsize=None)
def _cap_eta_profile(n, p, a_star):
    w = make_sine_weight(n, p, a_star)
    return w, find_truncation_point(w)


def rho_star(geom, p, theta):
    """The weight rho: (p-1)/(n-p) * eta_T(theta) inside the cap, frozen
    at its plateau value outside."""
    n = geom.n
    if not 1.0 < p < n:
        raise DomainError(f"p must satisfy 1 < p < n, got p={p}, n={n}")
    if theta <= 0.0:
        raise DomainError("rho is singular at theta = 0")
    if theta > math.pi:
        raise DomainError(f"theta must lie in (0, pi], got {theta}")
    _, prof = _cap_eta_profile(n, p, geom.a_star)
    scale = (p - 1.0) / (n - p)
    if theta >= geom.a_star:
        return scale * prof.eta_at_T
    return scale * float(eta_truncated_many(prof, np.array([theta]))[0])


def rho_many(geom, p, thetas):
    """Vectorised rho on (0, pi]."""
    n = geom.n
    if not 1.0 < p < n:
        raise DomainError(f"p must satisfy 1 < p < n, got p={p}, n={n}")
    thetas = np.asarray(thetas, dtype=float)
    if np.any(thetas <= 0.0) or np.any(thetas > math.pi):
        raise DomainError("theta must lie in (0, pi]")
    _, prof = _cap_eta_profile(n, p, geom.a_star)
    scale = (p - 1.0) / (n - p)
    out = np.full(thetas.shape, prof.eta_at_T)
    inside = thetas < geom.a_star
    if np.any(inside):
        out[inside] = eta_truncated_many(prof, thetas[inside])
    return scale * out


def rho_asymptotic_check(geom, p, t):
    """t * rho(t); tends to 1 as t -> 0, matching the flat singularity 1/|x|."""
    if not 0.0 < t < geom.a_star / 10.0:
        raise DomainError(f"t must lie in (0, a_star/10), got {t}")
    return t * rho_star(geom, p, t)


# ---------------------------------------------------------------------------
# Theorem-level verification on radial profiles


def verify_sphere_theorem(geom, p, u, tol=1e-9):
    """Rayleigh quotient of a radial cap profile against rho^p.

    For radial u the gradient is the theta-derivative and both sides
    reduce to weighted line integrals; since
    ((n-p)/p)^p * rho^p = ((p-1)/p)^p * eta_T^p, the quotient is the 1-D
    truncated quotient rescaled by ((n-p)/(p-1))^p.
    """
    n = geom.n
    if not 1.0 < p < n:
        raise DomainError(f"p must satisfy 1 < p < n, got p={p}, n={n}")
    w, prof = _cap_eta_profile(n, p, geom.a_star)
    rep = hardy_quotient(w, prof, u.grid, truncated=True)
    omega = geom.omega
    scale = ((p - 1.0) / (n - p)) ** p
    quotient = rep.quotient / scale
    sharp = ((n - p) / p) ** p
    if quotient < sharp - tol:
        raise InequalityViolationError(
            f"cap inequality violated: quotient {quotient!r} < sharp constant {sharp!r}"
        )
    return QuotientReport(
        numerator=omega * rep.numerator,
        denominator=omega * scale * rep.denominator,
        quotient=quotient,
        sharp_constant=sharp,
    )


def extremal_V_hat_k(geom, p, k, grid_size=4096):
    """The cap sharpness sequence: constant head, tail-integral body up to
    the truncation angle, linear ramp to zero, zero tail."""
    w, prof = _cap_eta_profile(geom.n, p, geom.a_star)
    grid = extremal_V_k(w, prof, k, grid_size)
    return SphericalProfile(geometry=geom, grid=grid)


# ---------------------------------------------------------------------------
# radial Polya-Szego


def _profile_abs_with_crossings(u):
    """|u| as a piecewise-linear profile, with nodes inserted at sign changes."""
    nodes, values = u.nodes, u.values
    sign_change = np.nonzero(values[:-1] * values[1:] < 0.0)[0]
    if len(sign_change):
        crossings = nodes[sign_change] - values[sign_change] * (
            np.diff(nodes)[sign_change] / np.diff(values)[sign_change]
        )
        nodes = np.sort(np.concatenate((nodes, crossings)))
        values = np.interp(nodes, u.nodes, u.values)
        snap = np.isin(nodes, crossings)
        values[snap] = 0.0
    return nodes, np.abs(values)


def _radial_gradient_energy(geom, nodes, values, q):
    """integral |du/dtheta|^q dV over the cap, exact per linear cell."""
    slopes = np.diff(values) / np.diff(nodes)
    cell_weights = np.diff(cap_volume(geom.n, nodes))
    return float(np.sum(np.abs(slopes) ** q * cell_weights))


def _mu_of_levels(geom, nodes, values, levels):
    """Measure of {u > level} for a nonnegative piecewise-linear radial u,
    vectorised over levels.  Exact up to the closed-form cap volume."""
    n = geom.n
    lo, hi = nodes[:-1], nodes[1:]
    v0, v1 = values[:-1], values[1:]
    vols = cap_volume(n, nodes)
    t = levels[:, None]
    # crossing abscissa of each cell at each level, clipped into the cell
    dv = np.where(v1 == v0, 1.0, v1 - v0)
    cross = lo + (t - v0) * (hi - lo) / dv
    cross = np.clip(cross, lo, hi)
    cross_vol = cap_volume(n, cross)
    up0, up1 = v0 > t, v1 > t
    seg = np.zeros_like(cross)
    both = up0 & up1
    seg = np.where(both, vols[1:] - vols[:-1], seg)
    seg = np.where(up0 & ~up1, cross_vol - vols[:-1], seg)
    seg = np.where(~up0 & up1, vols[1:] - cross_vol, seg)
    return seg.sum(axis=1)


def radial_rearrangement(u, eval_grid=2048, level_grid=4096):
    """Spherical rearrangement of a radial profile as a continuous profile.

    Already non-increasing profiles are returned unchanged (the
    rearrangement is the identity).  Otherwise the distribution function
    of |u| is tabulated exactly on a dense level grid and inverted onto a
    theta grid that includes the original nodes.
    """
    geom = u.geometry
    nodes, vabs = _profile_abs_with_crossings(u)
    if np.all(np.diff(vabs) <= 0.0):
        return u if np.all(u.values >= 0.0) else SphericalProfile(
            geom, GridFunction(nodes, vabs))
    vmax = vabs.max()
    levels = np.union1d(np.linspace(0.0, vmax, level_grid), vabs)
    mu = _mu_of_levels(geom, nodes, vabs, levels)
    thetas = np.union1d(np.linspace(0.0, geom.a_star, eval_grid), nodes)
    sigma = cap_volume(geom.n, thetas)
    # mu is non-increasing in the level; invert by interpolation
    out = np.interp(sigma, mu[::-1], levels[::-1])
    out[-1] = 0.0
    return SphericalProfile(geom, GridFunction(thetas, out))


def check_polya_szego_radial(geom, q, u, tol=1e-6):
    """Polya-Szego for radial cap profiles: symmetrisation does not
    increase the q-Dirichlet energy.  Returns ``(lhs, rhs)``."""
    if q < 1:
        raise DomainError(f"q must be >= 1, got {q}")
    if u.geometry != geom:
        raise ParameterError("profile geometry does not match")
    nodes, vabs = _profile_abs_with_crossings(u)
    lhs = _radial_gradient_energy(geom, nodes, vabs, q)
    star = radial_rearrangement(u)
    rhs = _radial_gradient_energy(geom, star.nodes, star.values, q)
    if lhs < rhs - tol:
        raise InequalityViolationError(
            f"Polya-Szego violated: lhs={lhs!r} < rhs={rhs!r}"
        )
    return lhs, rhs
