"""Weighted Hardy-Rayleigh quotients on grid functions.

For every u with u(a) = 0,

    integral |u'|^p phi dt  >=  ((p-1)/p)^p  integral |u|^p eta^p phi dt,

with eta either the full weight eta_a or its truncation eta_aT, and the
constant ((p-1)/p)^p is sharp.  This module evaluates the quotient on
piecewise-linear grid functions, generates the explicit extremal
sequences whose quotients converge to the sharp constant, and runs
convergence studies over a list of sequence indices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError, DomainError, ParameterError
from .eta import ENDPOINT_GUARD, EtaProfile, tail_integral, tail_integrals
from .quadrature import integrate, panel_nodes, refine_breakpoints

DEFAULT_GRID_SIZE = 4096
#: relative depth of geometric node clustering at sequence breakpoints
CLUSTER_DEPTH = 1e-8


@dataclass(frozen=True)
class GridFunction:
    """A piecewise-linear function on a nonuniform grid.

    The function extends constantly to the left of the first node and its
    final value must be exactly zero (membership in the test space).
    """

    nodes: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        nodes = np.ascontiguousarray(self.nodes, dtype=float)
        values = np.ascontiguousarray(self.values, dtype=float)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "values", values)
        if nodes.ndim != 1 or nodes.shape != values.shape or len(nodes) < 2:
            raise ParameterError("nodes and values must be equal-length 1-D arrays (>= 2)")
        if not np.all(np.diff(nodes) > 0.0):
            raise ParameterError("nodes must be strictly increasing")
        if values[-1] != 0.0:
            raise ParameterError("the final value must be exactly zero")

    def __call__(self, t):
        return np.interp(t, self.nodes, self.values, left=self.values[0])

    def scaled(self, c):
        return GridFunction(self.nodes, c * self.values)


@dataclass(frozen=True)
class QuotientReport:
    numerator: float
    denominator: float
    quotient: float
    sharp_constant: float

    @property
    def margin(self):
        return self.quotient - self.sharp_constant


def sharp_constant(p):
    """The sharp one-dimensional constant ((p-1)/p)**p."""
    if not p > 1:
        raise DomainError(f"p must be > 1, got {p}")
    return ((p - 1.0) / p) ** p


def _quadrature_nodes(w, breakpoints, extra_singular=()):
    """Refined panels over the breakpoints, honouring weight singularities."""
    singular = tuple(w.singular_points) + tuple(extra_singular)
    pts, _ = refine_breakpoints(breakpoints, singular=singular)
    return panel_nodes(pts)


def hardy_quotient(w, prof, u, truncated=False):
    """Rayleigh quotient of a grid function against eta (or eta_aT).

    The numerator is exact per cell up to the phi quadrature (|u'| is
    constant on each cell); the denominator integrates |u|^p eta^p phi on
    endpoint-refined Gauss panels, with the constant head [0, t0] handled
    through the closed-form primitive of eta^p phi.
    """
    if prof.weight != w:
        raise ParameterError("profile was not built from this weight")
    nodes, values = u.nodes, u.values
    a, p = w.a, w.p
    if abs(nodes[-1] - a) > 1e-14 * max(a, 1.0):
        raise ParameterError(f"last node must equal a={a}, got {nodes[-1]}")
    if np.all(values == 0.0):
        raise DegenerateInputError("grid function is identically zero")

    guard_lo = a * ENDPOINT_GUARD
    guard_hi = a * (1.0 - ENDPOINT_GUARD)
    t0 = nodes[0]

    # interior breakpoints: the nodes themselves, T (kink of eta_T), guards
    interior = nodes[nodes > guard_lo]
    bp = np.concatenate(([max(t0, guard_lo)], interior, [prof.T]))
    bp = np.unique(np.clip(bp, guard_lo, guard_hi))

    x, wts = _quadrature_nodes(w, bp, extra_singular=(a,))
    flat_x = x.ravel()  # globally increasing by construction
    inv_phi = w.inv_phi_pow(flat_x)
    tails = tail_integrals(w, flat_x)
    eta_vals = inv_phi / tails
    if truncated:
        eta_vals = np.where(flat_x > prof.T, prof.eta_at_T, eta_vals)

    u_vals = u(flat_x)
    phi_vals = w.phi(flat_x)
    denominator = float(np.sum(
        (np.abs(u_vals) * eta_vals) ** p * phi_vals * wts.ravel()
    ))

    # constant head [0, t0]: the primitive of eta^p phi is I(t)**(1-p)/(p-1)
    if t0 > guard_lo and values[0] != 0.0:
        if truncated and t0 > prof.T:
            head = tail_integral(w, prof.T) ** (1.0 - p) / (p - 1.0)
            head += prof.eta_at_T**p * integrate(
                w.phi, prof.T, t0, singular=w.singular_points
            )
        else:
            head = tail_integral(w, t0) ** (1.0 - p) / (p - 1.0)
        denominator += abs(values[0]) ** p * head

    if denominator < 1e-300:
        raise DegenerateInputError("denominator vanished; degenerate input")

    # numerator: |u'| is constant per cell
    slopes = np.diff(values) / np.diff(nodes)
    cell = np.clip(np.searchsorted(nodes, flat_x) - 1, 0, len(slopes) - 1)
    numerator = float(np.sum(np.abs(slopes[cell]) ** p * phi_vals * wts.ravel()))

    return QuotientReport(
        numerator=numerator,
        denominator=denominator,
        quotient=numerator / denominator,
        sharp_constant=sharp_constant(p),
    )


def _clustered_nodes(lo, hi, size, cluster_lo=True, cluster_hi=True, depth=CLUSTER_DEPTH):
    """Nodes on [lo, hi] clustered geometrically towards one or both ends."""
    span = hi - lo
    if cluster_lo and cluster_hi:
        half = size // 2
        mid = lo + 0.5 * span
        left = lo + (mid - lo) * np.geomspace(depth, 1.0, half)
        right = hi - (hi - mid) * np.geomspace(depth, 1.0, size - half)
        pts = np.concatenate(([lo], left, right, [hi]))
    elif cluster_lo:
        pts = np.concatenate(([lo], lo + span * np.geomspace(depth, 1.0, size)))
    elif cluster_hi:
        pts = np.concatenate((hi - span * np.geomspace(depth, 1.0, size)[::-1], [hi]))
    else:
        pts = np.linspace(lo, hi, size)
    return np.unique(pts)


def extremal_U_k(w, k, grid_size=DEFAULT_GRID_SIZE):
    """The extremal sequence element U_k, sampled as a grid function.

    U_k is the constant I(1/k)**((p-1)/p) on [0, 1/k] and I(t)**((p-1)/p)
    on [1/k, a], where I is the tail integral of phi**(-1/(p-1)).
    """
    if k < 2:
        raise ParameterError(f"k must be >= 2, got {k}")
    s = 1.0 / k
    if s >= w.a:
        raise DomainError(f"1/k = {s} must be smaller than a = {w.a}")
    nodes = _clustered_nodes(s, w.a, grid_size)
    tails = tail_integrals(w, nodes[:-1])
    values = np.append(tails ** ((w.p - 1.0) / w.p), 0.0)
    return GridFunction(nodes, values)


def extremal_V_k(w, prof, k, grid_size=DEFAULT_GRID_SIZE):
    """The truncated-weight extremal element: U_k up to T, then a linear
    ramp to zero at (a+T)/2, zero afterwards."""
    if k < 2:
        raise ParameterError(f"k must be >= 2, got {k}")
    s = 1.0 / k
    T, a = prof.T, w.a
    if s >= T:
        raise DomainError(f"1/k = {s} must be smaller than T = {T}")
    ramp_end = 0.5 * (a + T)
    n_body = (3 * grid_size) // 4
    body = _clustered_nodes(s, T, n_body)
    ramp = np.linspace(T, ramp_end, max(grid_size // 8, 8))
    tail = np.linspace(ramp_end, a, max(grid_size // 16, 4))
    nodes = np.unique(np.concatenate((body, ramp, tail)))

    values = np.zeros_like(nodes)
    in_body = nodes <= T
    values[in_body] = tail_integrals(w, nodes[in_body]) ** ((w.p - 1.0) / w.p)
    ramp_height = tail_integral(w, T) ** ((w.p - 1.0) / w.p)
    in_ramp = (nodes > T) & (nodes < ramp_end)
    values[in_ramp] = ramp_height * (2.0 * nodes[in_ramp] - a - T) / (T - a)
    values[nodes >= ramp_end] = 0.0
    values[-1] = 0.0
    return GridFunction(nodes, values)


def A_k_B_k(w, k):
    """The two pieces of the extremal-sequence denominator.

    ``A_k`` is the head integral (its limit, and in fact its exact value,
    is 1/(p-1)); ``B_k`` is the logarithmically divergent body integral,
    regularised at the endpoint guard a*(1 - 1e-12) since the integrand
    behaves like 1/(a - t) there.
    """
    s = 1.0 / k
    if s >= w.a:
        raise DomainError(f"1/k = {s} must be smaller than a = {w.a}")
    p, a = w.p, w.a
    guard_lo = a * ENDPOINT_GUARD
    guard_hi = a * (1.0 - ENDPOINT_GUARD)

    def head_integrand(t):
        flat = t.ravel()
        vals = w.inv_phi_pow(flat) * tail_integrals(w, flat) ** (-p)
        return vals.reshape(t.shape)

    def body_integrand(t):
        flat = t.ravel()
        vals = w.inv_phi_pow(flat) / tail_integrals(w, flat)
        return vals.reshape(t.shape)

    singular = tuple(w.singular_points) + (a,)
    x, wts = panel_nodes(refine_breakpoints(np.array([guard_lo, s]), singular)[0])
    a_k = tail_integral(w, s) ** (p - 1.0) * float(np.sum(head_integrand(x) * wts))
    x, wts = panel_nodes(refine_breakpoints(np.array([s, guard_hi]), singular)[0])
    b_k = float(np.sum(body_integrand(x) * wts))
    return a_k, b_k


def convergence_study(w, prof, ks, truncated=False, grid_size=DEFAULT_GRID_SIZE):
    """Quotients of the extremal sequence for each k, sorted by k.

    Returns a list of ``(k, quotient, margin)`` tuples.  Margins trend to
    zero as k grows; the convergence is logarithmic in k.
    """
    rows = []
    for k in sorted(ks):
        u = extremal_V_k(w, prof, k, grid_size) if truncated else extremal_U_k(w, k, grid_size)
        rep = hardy_quotient(w, prof, u, truncated=truncated)
        rows.append((k, rep.quotient, rep.margin))
    return rows
