"""The derived singular weight eta_a and its truncation.

For a weight phi on (0, a),

    eta_a(t) = phi(t)**(-1/(p-1)) / integral_t^a phi(s)**(-1/(p-1)) ds.

eta_a is positive, diverges at both endpoints, satisfies the Riccati
identity  eta*phi'/phi + (p-1)*eta' = (p-1)*eta**2,  and for log-concave
phi has a unique interior minimiser T.  Freezing eta_a at its minimum
yields the non-increasing truncated weight eta_aT.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericalError, ParameterError
from .quadrature import integrate, segment_integrals
from .weights import Weight, validate_weight

#: eta is never evaluated closer to an endpoint than this fraction of a
ENDPOINT_GUARD = 1e-12

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0  # golden ratio reciprocal


def _check_interior(w, t):
    t = np.asarray(t, dtype=float)
    if np.any(t < w.a * ENDPOINT_GUARD) or np.any(t > w.a * (1.0 - ENDPOINT_GUARD)):
        raise DomainError(
            f"t must lie in ({w.a * ENDPOINT_GUARD:.3e}, {w.a * (1 - ENDPOINT_GUARD):.6g})"
        )
    return t


def tail_integral(w, t):
    """integral_t^a phi(s)**(-1/(p-1)) ds for a single point t in (0, a)."""
    if not 0.0 < t < w.a:
        raise DomainError(f"t must lie in (0, {w.a}), got {t}")
    return integrate(w.inv_phi_pow, t, w.a, singular=w.singular_points)


def tail_integrals(w, ts):
    """Tail integrals at a sorted, strictly increasing array of points.

    A single cumulative sweep: the integrand is integrated over each
    segment between consecutive points and suffix-summed, so the cost is
    linear in the number of points.
    """
    ts = np.asarray(ts, dtype=float)
    pts = np.append(ts, w.a)
    seg = segment_integrals(w.inv_phi_pow, pts, singular=w.singular_points)
    return np.cumsum(seg[::-1])[::-1]


def eta(w, t):
    """The weight eta_a at a single point."""
    _check_interior(w, t)
    return float(w.inv_phi_pow(t)) / tail_integral(w, t)


def eta_many(w, ts):
    """Vectorised eta_a; ``ts`` need not be sorted."""
    ts = _check_interior(w, ts)
    order = np.argsort(ts, kind="stable")
    sorted_ts, inverse = np.unique(ts[order], return_inverse=True)
    vals = w.inv_phi_pow(sorted_ts) / tail_integrals(w, sorted_ts)
    out = np.empty_like(ts)
    out[order] = vals[inverse]
    return out


def eta_bounds(w, t):
    """Two-sided bounds on eta_a from the growth constants of phi.

    Returns ``(lo, hi)`` with
    ``K(t) = delta/(p-1) * a**e / (t * (a**e - t**e))``, ``e = delta/(p-1)``,
    scaled by ``(c1/c2)**(1/(p-1))`` and its reciprocal.
    """
    if not 0.0 < t < w.a:
        raise DomainError(f"t must lie in (0, {w.a}), got {t}")
    e = w.delta / (w.p - 1.0)
    k = (w.delta / (w.p - 1.0)) * w.a**e / (t * (w.a**e - t**e))
    r = (w.c1 / w.c2) ** (1.0 / (w.p - 1.0))
    return r * k, k / r


def riccati_residual(w, t, h):
    """Residual of the Riccati identity with a central-difference derivative.

    |eta*phi'/phi + (p-1)*eta_h' - (p-1)*eta**2| where eta_h' is the
    central finite difference with step h; O(h^2) for exact eta.
    """
    if not (0.0 < t - h and t + h < w.a):
        raise DomainError(f"t +- h must lie inside (0, {w.a})")
    e0 = eta(w, t)
    d = (eta(w, t + h) - eta(w, t - h)) / (2.0 * h)
    phi_t = float(w.phi(t))
    dphi_t = float(w.dphi(t))
    return abs(e0 * dphi_t / phi_t + (w.p - 1.0) * d - (w.p - 1.0) * e0**2)


@dataclass(frozen=True)
class EtaProfile:
    """eta_a together with its minimiser T and the plateau value eta_a(T)."""

    weight: Weight
    T: float
    eta_at_T: float


def find_truncation_point(w, bracket_grid=256, tol=1e-10):
    """Locate the unique interior minimiser of eta_a.

    Brackets the minimum on a geometric sample grid, then refines by
    golden-section search to absolute tolerance ``tol`` in t.
    """
    report = validate_weight(w)
    if not report.log_concave_ok:
        raise ParameterError("weight fails the log-concavity check; no unique minimiser")
    grid = w.a * np.geomspace(1e-6, 1.0 - 1e-6, bracket_grid)
    vals = eta_many(w, grid)
    i = int(np.argmin(vals))
    if i == 0 or i == bracket_grid - 1:
        raise NumericalError(
            f"failed to bracket the minimum of eta on (0, {w.a}); "
            f"sampled minimum at grid edge t={grid[i]:.6g}"
        )
    lo, hi = grid[i - 1], grid[i + 1]
    # golden-section search; unimodality is guaranteed by log-concavity
    c = hi - _INV_PHI * (hi - lo)
    d = lo + _INV_PHI * (hi - lo)
    fc, fd = eta(w, c), eta(w, d)
    while hi - lo > tol:
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - _INV_PHI * (hi - lo)
            fc = eta(w, c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INV_PHI * (hi - lo)
            fd = eta(w, d)
    t_min = 0.5 * (lo + hi)
    return EtaProfile(weight=w, T=float(t_min), eta_at_T=eta(w, t_min))


def eta_truncated(prof, t):
    """eta_a truncated at T: eta_a(t) for t <= T, the plateau value after."""
    w = prof.weight
    if not 0.0 < t < w.a:
        raise DomainError(f"t must lie in (0, {w.a}), got {t}")
    if t > prof.T:
        return prof.eta_at_T
    return eta(w, t)


def eta_truncated_many(prof, ts):
    ts = np.asarray(ts, dtype=float)
    out = np.full(ts.shape, prof.eta_at_T)
    below = ts <= prof.T
    if np.any(below):
        out[below] = eta_many(prof.weight, ts[below])
    return out
