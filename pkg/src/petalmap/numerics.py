"""Contour quadrature, winding counts, and small fitting utilities.

Nothing in here knows about the map families; everything operates on plain
arrays of complex points.  Contours carry analytic tangents alongside the
nodes, which is what makes the closed-loop trapezoid rule spectrally
accurate for smooth integrands.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

WINDING_DISTANCE_TOL = 1e-12   # rejection radius (relative) for points on a segment
POWER_FIT_MIN_POINTS = 3


class NonFiniteIntegrandError(ValueError):
    """Integrand returned a NaN or infinity at a quadrature node."""


@dataclass(frozen=True)
class Contour:
    """Discretized parametric curve with analytic tangents at the nodes.

    ``weights`` are parameter-space quadrature weights, ``derivatives`` the
    dz/dparam values, so any line integral is sum(F(points) * derivatives *
    weights).
    """

    kind: str                  # "closed" or "open"
    params: np.ndarray
    points: np.ndarray
    weights: np.ndarray
    derivatives: np.ndarray

    def __post_init__(self):
        if self.kind not in ("closed", "open"):
            raise ValueError("contour kind must be 'closed' or 'open'")
        n = len(self.params)
        if not (len(self.points) == len(self.weights) == len(self.derivatives) == n):
            raise ValueError("contour arrays must share one length")
        if n < 2:
            raise ValueError("contour needs at least two nodes")
        if np.any(np.diff(self.params) <= 0.0):
            raise ValueError("contour parameters must increase strictly")
        if np.any(self.weights <= 0.0):
            raise ValueError("contour weights must be positive")


def circle_contour(center=0.0j, radius=1.0, n=256) -> Contour:
    """Closed circle with half-offset nodes (no node ever sits on an axis)."""
    if radius <= 0.0:
        raise ValueError("radius must be positive")
    if n < 8:
        raise ValueError("need at least 8 nodes")
    phis = (np.arange(n) + 0.5) * (2.0 * math.pi / n)
    ring = np.exp(1j * phis)
    points = center + radius * ring
    derivatives = 1j * radius * ring
    weights = np.full(n, 2.0 * math.pi / n)
    return Contour("closed", phis, points, weights, derivatives)


def segment_contour(start, end, n=64) -> Contour:
    """Open straight segment carrying Gauss-Legendre nodes on [0, 1]."""
    if n < 2:
        raise ValueError("need at least 2 nodes")
    nodes, wts = np.polynomial.legendre.leggauss(n)
    s = 0.5 * (nodes + 1.0)
    weights = 0.5 * wts
    span = complex(end) - complex(start)
    if span == 0.0:
        raise ValueError("degenerate segment")
    points = complex(start) + span * s
    derivatives = np.full(n, span, dtype=complex)
    return Contour("open", s, points, weights, derivatives)


def contour_quadrature(integrand, contour: Contour) -> complex:
    """Line integral of ``integrand`` along the contour."""
    values = np.asarray(integrand(contour.points))
    if values.shape != contour.points.shape:
        values = np.array([integrand(z) for z in contour.points], dtype=complex)
    if not np.all(np.isfinite(values)):
        bad = int(np.flatnonzero(~np.isfinite(values))[0])
        raise NonFiniteIntegrandError(
            "integrand not finite at parameter %r (point %r)"
            % (contour.params[bad], contour.points[bad])
        )
    return complex(np.sum(values * contour.derivatives * contour.weights))


def singular_endpoint_quadrature(integrand, interval, exponents, n=200) -> complex:
    """Integrate f over [a, b] where f ~ (x-a)^mu_a and ~ (b-x)^mu_b at the ends.

    Power substitutions x = a + (m-a) u^q with q = 2/(1+mu) flatten each
    algebraic endpoint, then Gauss-Legendre handles the smooth remainder.
    Exponents must be integrable (mu > -1).
    """
    a, b = float(interval[0]), float(interval[1])
    mu_a, mu_b = float(exponents[0]), float(exponents[1])
    if not b > a:
        raise ValueError("interval must satisfy a < b")
    if mu_a <= -1.0 or mu_b <= -1.0:
        raise ValueError("endpoint exponent below -1 is not integrable")
    mid = 0.5 * (a + b)
    nodes, wts = np.polynomial.legendre.leggauss(n)
    u = 0.5 * (nodes + 1.0)
    du = 0.5 * wts

    total = 0.0 + 0.0j
    # left piece, substitution clustered at a
    q = 2.0 / (1.0 + mu_a)
    x = a + (mid - a) * u**q
    jac = (mid - a) * q * u ** (q - 1.0)
    total += np.sum(np.asarray([integrand(xx) for xx in x]) * jac * du)
    # right piece, mirrored
    q = 2.0 / (1.0 + mu_b)
    x = b - (b - mid) * u**q
    jac = (b - mid) * q * u ** (q - 1.0)
    total += np.sum(np.asarray([integrand(xx) for xx in x]) * jac * du)
    return complex(total)


def winding_number(points, z0) -> int:
    """Winding count of a closed polyline around z0.

    Accumulates the principal argument increment between consecutive nodes;
    the closed sum is an exact multiple of 2 pi.  Points sitting on (or
    nearly on) a segment make the count meaningless and are rejected.
    """
    pts = np.asarray(points, dtype=complex)
    if len(pts) < 3:
        raise ValueError("need at least 3 points")
    z0 = complex(z0)
    rel = pts - z0
    scale = float(np.max(np.abs(rel)))
    if scale == 0.0 or np.any(np.abs(rel) < WINDING_DISTANCE_TOL * scale):
        raise ValueError("query point touches the polyline")
    nxt = np.roll(rel, -1)
    # distance from z0 to each segment, to reject near-crossings
    seg = nxt - rel
    seg_len2 = np.abs(seg) ** 2
    with np.errstate(invalid="ignore", divide="ignore"):
        frac = np.clip(-np.real(rel * np.conj(seg)) / np.where(seg_len2 == 0.0, 1.0, seg_len2), 0.0, 1.0)
    nearest = rel + frac * seg
    if np.min(np.abs(nearest)) < WINDING_DISTANCE_TOL * scale:
        raise ValueError("query point touches the polyline")
    increments = np.angle(nxt / rel)
    total = float(np.sum(increments))
    return int(round(total / (2.0 * math.pi)))


def polyline_area(points) -> float:
    """Signed shoelace area of a closed polyline (positive when CCW)."""
    pts = np.asarray(points, dtype=complex)
    if len(pts) < 3:
        raise ValueError("need at least 3 points")
    nxt = np.roll(pts, -1)
    return float(0.5 * np.sum(np.imag(np.conj(pts) * nxt)))


@dataclass(frozen=True)
class PowerLawFit:
    """Least-squares fit y ~ prefactor * x**exponent on log-log axes."""

    exponent: float
    prefactor: float
    residual: float            # rms misfit of log y


def fit_power_law(x, y) -> PowerLawFit:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("x and y must be 1-d arrays of equal length")
    if len(x) < POWER_FIT_MIN_POINTS:
        raise ValueError("need at least %d samples" % POWER_FIT_MIN_POINTS)
    if np.any(x <= 0.0) or np.any(y <= 0.0):
        raise ValueError("power-law fit needs positive data")
    lx = np.log(x)
    ly = np.log(y)
    slope, intercept = np.polyfit(lx, ly, 1)
    fitted = slope * lx + intercept
    rms = float(np.sqrt(np.mean((ly - fitted) ** 2)))
    return PowerLawFit(float(slope), float(math.exp(intercept)), rms)
