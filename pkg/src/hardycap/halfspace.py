"""The half-space angular inequality and its sharpness demonstration.

For u on the upper half-space written in polar coordinates (r, theta),
the angular part of the gradient satisfies

    integral |D_theta u|^p dx >= ((n-p)/p)^p integral |u|^p zeta^p / |x|^p dx,

where zeta(theta) = rho_{pi/2}(theta) is singular on the vertical axis.
Verification is restricted to separable fields u = R(r) * Theta(theta):
both sides then factor through Fubini into the same radial moment times
an angular integral, so the quotient is exactly the angular cap quotient
at cap radius pi/2.  Sharpness is demonstrated with the cap extremal
sequence in theta and a narrow triangular bump in r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError, DomainError, ParameterError
from .hardy1d import GridFunction, QuotientReport
from .quadrature import integrate
from .sphere import (
    CapGeometry,
    SphericalProfile,
    extremal_V_hat_k,
    rho_many,
    rho_star,
    spherical_rearrangement,
    verify_sphere_theorem,
)

_HALF_PI = math.pi / 2.0


@dataclass(frozen=True)
class SeparableField:
    """A half-space function R(r) * Theta(theta).

    The radial factor has compact support in (0, infinity): it vanishes
    at both ends of its grid.  The angular factor lives on the cap of
    radius pi/2 and vanishes at the equator.
    """

    radial: GridFunction
    angular: SphericalProfile

    def __post_init__(self):
        r = self.radial
        if r.nodes[0] <= 0.0:
            raise ParameterError("radial support must lie in (0, infinity)")
        if r.values[0] != 0.0:
            raise ParameterError("radial factor must vanish at both support ends")
        if abs(self.angular.geometry.a_star - _HALF_PI) > 1e-14:
            raise ParameterError("angular factor must live on the cap of radius pi/2")


def _half_space_geometry(n):
    return CapGeometry(n=n, a_star=_HALF_PI)


def zeta(n, p, theta):
    """The half-space singularity zeta(theta) = rho_{pi/2}(theta)."""
    if theta > _HALF_PI:
        raise DomainError(f"theta must lie in (0, pi/2], got {theta}")
    return rho_star(_half_space_geometry(n), p, theta)


def _radial_moment(radial, exponent, p):
    """integral R(r)**p * r**exponent dr over the support, cellwise."""

    def integrand(r):
        return np.abs(np.interp(r, radial.nodes, radial.values)) ** p * r**exponent

    total = 0.0
    for lo, hi in zip(radial.nodes[:-1], radial.nodes[1:]):
        total += integrate(integrand, lo, hi)
    return total


def verify_halfspace(n, p, f, tol=1e-9):
    """Rayleigh quotient of a separable field; equals the angular quotient.

    The radial moment integral R^p r^{n-p} dr multiplies both the
    numerator and the denominator, so it is computed once and the
    quotient itself is independent of R.
    """
    if not 1.0 < p < n:
        raise DomainError(f"p must satisfy 1 < p < n, got p={p}, n={n}")
    if np.all(f.angular.values == 0.0):
        raise DegenerateInputError("angular factor is identically zero")
    angular = verify_sphere_theorem(f.angular.geometry, p, f.angular, tol=tol)
    moment = _radial_moment(f.radial, n - p, p)
    return QuotientReport(
        numerator=moment * angular.numerator,
        denominator=moment * angular.denominator,
        quotient=angular.quotient,
        sharp_constant=angular.sharp_constant,
    )


def dirac_bump(eps, p, n):
    """Triangular radial bump of half-width eps at r = 1, normalised so
    that integral R**p r**n dr = 1."""
    if not 0.0 < eps < 0.5:
        raise ParameterError(f"eps must lie in (0, 1/2), got {eps}")
    raw = GridFunction(
        np.array([1.0 - eps, 1.0, 1.0 + eps]), np.array([0.0, 1.0, 0.0])
    )
    mass = _radial_moment(raw, n, p)
    return raw.scaled(mass ** (-1.0 / p))


@dataclass(frozen=True)
class SharpnessReport:
    """Full half-space quotient of Theta_k(theta) * R_eps(r), with the two
    radial moments whose ratio tends to 1 as eps shrinks."""

    ratio: float
    moment_n: float
    moment_n_minus_p: float
    sharp_constant: float

    @property
    def moment_ratio(self):
        return self.moment_n / self.moment_n_minus_p


def sharpness_sequence_halfspace(n, p, k, eps):
    """Quotient of the Dirac-bump separable extremal element.

    The angular factor is the cap extremal sequence at index k; the
    radial bump concentrates at r = 1 so both radial moments approach 1
    and the quotient approaches the sharp constant as k grows.
    """
    if not 1.0 < p < n:
        raise DomainError(f"p must satisfy 1 < p < n, got p={p}, n={n}")
    geom = _half_space_geometry(n)
    theta_k = extremal_V_hat_k(geom, p, k)
    bump = dirac_bump(eps, p, n)
    rep = verify_halfspace(n, p, SeparableField(radial=bump, angular=theta_k))
    return SharpnessReport(
        ratio=rep.quotient,
        moment_n=_radial_moment(bump, n, p),
        moment_n_minus_p=_radial_moment(bump, n - p, p),
        sharp_constant=rep.sharp_constant,
    )


def zeta_integrability_check(n, p, R):
    """integral over B_R intersected with the half-space of zeta^p / |x|^p.

    Finite because the angular integrand behaves like theta^{n-1-p} near
    the axis and p < n.  Computed in polar coordinates as the product of
    the radial moment R^{n+1-p}/(n+1-p) and the angular integral.
    """
    if not 1.0 < p < n:
        raise DomainError(f"p must satisfy 1 < p < n, got p={p}, n={n}")
    if R <= 0.0:
        raise DomainError(f"R must be > 0, got {R}")
    geom = _half_space_geometry(n)

    def integrand(theta):
        flat = theta.ravel()
        return (rho_many(geom, p, flat) ** p * np.sin(flat) ** (n - 1)).reshape(
            theta.shape
        )

    # the integrand ~ theta^{n-1-p} is integrable; the guard below the
    # evaluation floor of rho contributes O(guard^{n-p})
    lo = _HALF_PI * 1e-12
    angular = integrate(integrand, lo, _HALF_PI, singular=(0.0,))
    radial = R ** (n + 1 - p) / (n + 1 - p)
    value = geom.omega * radial * angular
    if not math.isfinite(value):
        raise DomainError("integral did not evaluate to a finite value")
    return value


def steiner_per_shell(sample_sets, geom):
    """Shell-by-shell spherical rearrangement.

    Each sample set holds the angular samples of u at one fixed radius;
    the result is the list of their spherical rearrangements in shell
    order, which is the discrete form of the Steiner rearrangement of a
    half-space function.
    """
    return [spherical_rearrangement(s, geom) for s in sample_sets]
