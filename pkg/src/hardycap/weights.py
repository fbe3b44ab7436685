"""Admissible one-dimensional weights and their structural checks.

A weight is a function ``phi`` on [0, a] with ``phi(0) = 0``, ``phi > 0``
on (0, a] and two-sided power-law growth
``c1 * t**(p-1+delta) <= phi(t) <= c2 * t**(p-1+delta)``.
Two families are built in: the pure power ``t**(p-1+delta)`` and the
spherical volume element ``sin(t)**(n-1)`` (which satisfies the growth
bound with ``delta = n - p``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError

POWER = "power"
SINE = "sine"

#: grid used to fit c1, c2 for the sine weight (geometric on (a*1e-8, a])
_FIT_GRID_SIZE = 4096
_FIT_GRID_FLOOR = 1e-8


@dataclass(frozen=True)
class Weight:
    """An admissible weight with closed-form evaluators.

    ``delta``, ``c1`` and ``c2`` are the growth constants of the two-sided
    power-law bound; for the power family they are exact, for the sine
    family they are fitted extrema of ``phi(t) / t**(p-1+delta)``.
    """

    p: float
    a: float
    kind: str
    delta: float
    c1: float
    c2: float
    n: int = 0  # sine family only

    @property
    def growth_exponent(self):
        return self.p - 1.0 + self.delta

    @property
    def singular_points(self):
        """Abscissae near which quadrature panels must refine."""
        if self.kind == SINE:
            return (0.0, math.pi)
        return (0.0,)

    def phi(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == POWER:
            return t ** self.growth_exponent
        return np.sin(t) ** (self.n - 1)

    def dphi(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == POWER:
            e = self.growth_exponent
            return e * t ** (e - 1.0)
        return (self.n - 1) * np.sin(t) ** (self.n - 2) * np.cos(t)

    def log_phi_dd(self, t):
        """Second derivative of log(phi); negative iff phi is log-concave."""
        t = np.asarray(t, dtype=float)
        if self.kind == POWER:
            return -self.growth_exponent / t**2
        return -(self.n - 1) / np.sin(t) ** 2

    def inv_phi_pow(self, t):
        """phi(t) ** (-1/(p-1)), the integrand of the tail integral."""
        return self.phi(t) ** (-1.0 / (self.p - 1.0))


def make_power_weight(p, delta, a):
    """Weight ``phi(t) = t**(p-1+delta)``; the growth bound holds with c1 = c2 = 1."""
    if not p > 1:
        raise ParameterError(f"p must be > 1, got {p}")
    if not delta > 0:
        raise ParameterError(f"delta must be > 0, got {delta}")
    if not a > 0:
        raise ParameterError(f"a must be > 0, got {a}")
    return Weight(p=float(p), a=float(a), kind=POWER, delta=float(delta), c1=1.0, c2=1.0)


def make_sine_weight(n, p, a):
    """Weight ``phi(t) = sin(t)**(n-1)`` on (0, a), a < pi, with 1 < p < n."""
    n = int(n)
    if n < 2:
        raise ParameterError(f"n must be an integer >= 2, got {n}")
    if not 1 < p < n:
        raise ParameterError(f"p must satisfy 1 < p < n, got p={p}, n={n}")
    if not 0 < a < math.pi:
        raise ParameterError(f"a must lie in (0, pi), got {a}")
    delta = float(n - p)
    # ratio phi(t)/t**(n-1) = (sin t / t)**(n-1); fit extrema on a fine grid
    grid = a * np.geomspace(_FIT_GRID_FLOOR, 1.0, _FIT_GRID_SIZE)
    ratio = (np.sin(grid) / grid) ** (n - 1)
    return Weight(
        p=float(p), a=float(a), kind=SINE, delta=delta,
        c1=float(ratio.min()), c2=float(ratio.max()), n=n,
    )


@dataclass(frozen=True)
class ValidationReport:
    boundary_ok: bool
    positive_ok: bool
    log_concave_ok: bool
    growth_ok: bool
    c1: float
    c2: float
    grid_size: int

    @property
    def all_ok(self):
        return self.boundary_ok and self.positive_ok and self.log_concave_ok and self.growth_ok


def validate_weight(w, grid_size=1024):
    """Check the structural assumptions of a weight on an interior sample grid."""
    if grid_size < 16:
        raise ParameterError(f"grid_size must be >= 16, got {grid_size}")
    grid = w.a * np.geomspace(1e-10, 1.0, grid_size)
    vals = w.phi(grid)
    boundary_ok = bool(vals[0] < 1e-6 * max(vals.max(), 1.0))
    positive_ok = bool(np.all(vals > 0.0))
    log_concave_ok = bool(np.all(w.log_phi_dd(grid) < 0.0))
    ratio = vals / grid**w.growth_exponent
    growth_ok = bool(
        np.all(ratio >= w.c1 * (1.0 - 1e-12)) and np.all(ratio <= w.c2 * (1.0 + 1e-12))
    )
    return ValidationReport(
        boundary_ok=boundary_ok,
        positive_ok=positive_ok,
        log_concave_ok=log_concave_ok,
        growth_ok=growth_ok,
        c1=float(ratio.min()),
        c2=float(ratio.max()),
        grid_size=grid_size,
    )
