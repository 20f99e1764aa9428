"""Exterior conformal maps for self-similar growth patterns in the half plane.

Two families are implemented.  The one-petal family sends the exterior of
the unit circle onto the exterior of a symmetric pair of petals meeting the
real axis at angle ``alpha``; it has an elementary closed form built from
powers of 1 -/+ 1/w.  The two-petal family adds a second corner pair on the
imaginary axis with half-angle ``beta`` and is hypergeometric.  Both maps
are odd, real on the real axis, and normalized to derivative 1 at infinity
before time scaling.

Evaluation is restricted to the physical sheet |w| >= 1; the analytic
continuation used by the conserved-ratio estimate lives in `verify`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .special_functions import hyp2f1_values

CORNER_REJECT = 1e-12        # evaluation radius around corner pre-images
MODULUS_SLACK = 1e-12        # |w| >= 1 - slack counts as on-sheet
OFF_SHEET_SLACK = 1e-8       # inverted roots below 1 - slack are off the sheet
FD_STEP_FRACTION = 1.0 / 12.0  # arc step as a fraction of corner distance
FD_MAX_STEP = 0.04
NEWTON_MAX_ITER = 100
NEWTON_TOL = 1e-10
LAURENT_IMAG_TOL = 1e-8      # symmetry budget for coefficient imaginary parts
BRANCH_POINT_REJECT = 1e-9   # |p| must stay away from the branch points at +-2
DEGENERATE_DELTA_HALFWIDTH = 1e-4  # right-angle corner window, see _z_of_p_upper
_REAL_P_NOISE = 1e-13        # circle rounding noise folded onto the real p axis


class MapDomainError(ValueError):
    """Point off the physical sheet, or on a branch locus."""


class CornerPreimageError(MapDomainError):
    """Evaluation exactly at a corner pre-image is undefined."""


class InversionError(RuntimeError):
    """Newton inversion failed or landed off the sheet."""

    def __init__(self, message, root=None):
        super().__init__(message)
        self.root = root


@dataclass(frozen=True)
class MapFamily:
    """Parameter bundle selecting one exact self-similar pattern."""

    kind: str
    alpha: float
    beta: float | None = None

    def __post_init__(self):
        if self.kind not in ("one-petal", "two-petal"):
            raise ValueError("unknown family kind %r" % (self.kind,))
        if not 0.0 < self.alpha < 0.5 * math.pi:
            raise ValueError("alpha must lie in (0, pi/2)")
        if self.kind == "one-petal":
            if self.beta is not None:
                raise ValueError("one-petal family takes no beta")
        else:
            if self.beta is None or not 0.0 < self.beta < 0.5 * math.pi:
                raise ValueError("beta must lie in (0, pi/2)")

    @classmethod
    def one_petal(cls, alpha: float) -> "MapFamily":
        return cls("one-petal", float(alpha))

    @classmethod
    def two_petal(cls, alpha: float, beta: float) -> "MapFamily":
        return cls("two-petal", float(alpha), float(beta))

    @property
    def gamma(self) -> float:
        """Corner exponent offset 2 alpha/pi - 1/2 of the one-petal family."""
        if self.kind != "one-petal":
            raise ValueError("gamma is a one-petal parameter")
        return 2.0 * self.alpha / math.pi - 0.5

    @property
    def delta(self) -> float:
        """Top-corner exponent 2 beta/pi of the two-petal family."""
        if self.kind != "two-petal":
            raise ValueError("delta is a two-petal parameter")
        return 2.0 * self.beta / math.pi

    @property
    def corner_preimages(self) -> tuple[complex, ...]:
        if self.kind == "one-petal":
            return (1.0 + 0.0j, -1.0 + 0.0j)
        return (1.0 + 0.0j, -1.0 + 0.0j, 1.0j, -1.0j)

    def label(self) -> str:
        if self.kind == "one-petal":
            return "one-petal(alpha=%.6f)" % self.alpha
        return "two-petal(alpha=%.6f, beta=%.6f)" % (self.alpha, self.beta)


@dataclass(frozen=True)
class TimeState:
    """Growth time T and conserved ratio A; the scale factor is r = T/A."""

    T: float
    A: float = 1.0

    def __post_init__(self):
        if self.T <= 0.0 or self.A <= 0.0:
            raise ValueError("T and A must be positive")

    @property
    def r(self) -> float:
        return self.T / self.A


@dataclass(frozen=True)
class BoundaryTrace:
    """Physical boundary samples z_j = r f(e^{i phi_j}) on a half-offset grid."""

    family: MapFamily
    state: TimeState
    phis: np.ndarray
    points: np.ndarray


@dataclass(frozen=True)
class LaurentCoefficients:
    """Leading expansion data of the scaled map at infinity.

    ``conformal_radius`` is the w-coefficient, ``coefficients[k]`` the
    1/w^k coefficient divided by the radius (k >= 0), and ``capacity`` the
    1/z coefficient of the composed upper map, which must stay positive.
    """

    conformal_radius: float
    coefficients: np.ndarray
    capacity: float
    max_imag: float


# ---------------------------------------------------------------------------
# branch-consistent powers


def _bpow(z, mu: float):
    """Principal power with cheap exact paths for exponents 0, 1, 1/2."""
    z = np.asarray(z, dtype=complex)
    if mu == 0.0:
        return np.ones(z.shape, dtype=complex)
    if mu == 1.0:
        return z.copy()
    if mu == 0.5:
        return np.sqrt(z)
    return np.exp(mu * np.log(z))


def _upper_power(z, mu: float):
    """Principal power that resolves real-negative bases from above."""
    z = np.asarray(z, dtype=complex)
    out = _bpow(z, mu)
    neg = (z.imag == 0.0) & (z.real < 0.0)
    if neg.any():
        out[neg] = _bpow(-z[neg].real, mu) * cmath.exp(1j * math.pi * mu)
    return out


# ---------------------------------------------------------------------------
# sheet checks


def _as_points(w):
    arr = np.asarray(w, dtype=complex)
    return arr.reshape(-1), arr.shape, np.isscalar(w) or arr.shape == ()


def _check_sheet(family: MapFamily, pts: np.ndarray):
    if np.any(np.abs(pts) < 1.0 - MODULUS_SLACK):
        raise MapDomainError("point inside the unit circle is off the sheet")
    for xi in family.corner_preimages:
        if np.any(np.abs(pts - xi) < CORNER_REJECT):
            raise CornerPreimageError("evaluation at corner pre-image %r" % (xi,))


# ---------------------------------------------------------------------------
# one-petal family


def _one_petal_values(family: MapFamily, w: np.ndarray) -> np.ndarray:
    """Closed form, valid on the whole plane cut along [-1, 1].

    All fractional powers act on 1 -/+ 1/w, so every cut stays inside the
    unit disk and the two bracket terms swap under w -> -w, making the sum
    exactly odd.
    """
    g = family.gamma
    a = 1.0 / w
    trunk = w * np.sqrt(1.0 - a * a)
    bracket = _bpow(1.0 - a, g) * _bpow(1.0 + a, 1.0 - g) + _bpow(1.0 + a, g) * _bpow(
        1.0 - a, 1.0 - g
    )
    return 0.5 * trunk * bracket


def one_petal_map(family: MapFamily, w):
    """Normalized map of the one-petal family on |w| >= 1."""
    if family.kind != "one-petal":
        raise ValueError("family is not one-petal")
    pts, shape, scalar = _as_points(w)
    _check_sheet(family, pts)
    vals = _one_petal_values(family, pts)
    return complex(vals[0]) if scalar else vals.reshape(shape)


# ---------------------------------------------------------------------------
# two-petal family


def _sigma_form(family: MapFamily, w: np.ndarray) -> np.ndarray:
    """Hypergeometric product form in w, for |w + 1/w| > 2."""
    mu = 2.0 * family.alpha / math.pi
    aa = (family.alpha + family.beta) / math.pi - 0.5
    bb = (family.alpha - family.beta) / math.pi
    p = w + 1.0 / w
    t = 4.0 / (p * p)
    hyp = hyp2f1_values(aa, bb, 0.5, t)
    inv2 = 1.0 / (w * w)
    return w * _bpow(1.0 - inv2, mu) * _bpow(1.0 + inv2, 1.0 - mu) * hyp


def _elementary_continued(family: MapFamily, p: np.ndarray) -> np.ndarray:
    """Continuation of p (1 - 4/p^2)^(alpha/pi) into Im p >= 0, |p| < 2.

    The principal formula is already analytic for Im p > 0; real p needs the
    upper-side limit, whose phase is exp(+-i alpha) by the side of the cut.
    """
    mu = family.alpha / math.pi
    out = np.empty(p.shape, dtype=complex)
    strict = p.imag > 0.0
    if strict.any():
        ps = p[strict]
        out[strict] = ps * _bpow(1.0 - 4.0 / (ps * ps), mu)
    flat = ~strict
    if flat.any():
        x = p[flat].real
        mag = np.abs(1.0 - 4.0 / (x * x)) ** mu
        phase = np.where(x > 0.0, cmath.exp(1j * family.alpha), cmath.exp(-1j * family.alpha))
        out[flat] = x * mag * phase
    return out


def _z_of_p_upper(family: MapFamily, p: np.ndarray) -> np.ndarray:
    """Continuation of the p-form through the band |p| < 2, Im p >= 0."""
    alpha, beta = family.alpha, family.beta
    aa = (alpha + beta) / math.pi - 0.5
    bb = (alpha - beta) / math.pi
    if aa == 0.0 or bb == 0.0:
        # hypergeometric factor degenerates to 1; the map is the slit map
        return _elementary_continued(family, p)
    delta = family.delta
    if abs(delta - 0.5) < DEGENERATE_DELTA_HALFWIDTH:
        # the two local exponents at p = 0 collide and the connection
        # coefficients blow up; average a symmetric parameter offset
        # (even-order error in the offset) instead of evaluating the
        # degenerate formula.  The offset is twice the window half-width,
        # so both shifted evaluations land outside the window.
        shift = math.pi * DEGENERATE_DELTA_HALFWIDTH
        lo = MapFamily.two_petal(alpha, beta - shift)
        hi = MapFamily.two_petal(alpha, beta + shift)
        return 0.5 * (_z_of_p_upper(lo, p) + _z_of_p_upper(hi, p))

    from .special_functions import _gamma_quotient  # shared scalar helper

    coeff_low = _gamma_quotient((0.5, 0.5 - delta), ((alpha - beta) / math.pi, 1.0 - (alpha + beta) / math.pi))
    coeff_high = _gamma_quotient((0.5, delta - 0.5), ((alpha + beta) / math.pi - 0.5, 0.5 - (alpha - beta) / math.pi))
    t = 0.25 * p * p
    first = hyp2f1_values((alpha + beta) / math.pi - 0.5, (alpha + beta) / math.pi, delta + 0.5, t)
    second = hyp2f1_values((alpha - beta) / math.pi + 0.5, (alpha - beta) / math.pi, 1.5 - delta, t)
    half = 0.5 * p
    prefactor = 2.0 * _bpow(1.0 - t, alpha / math.pi)
    term_low = 1j * cmath.exp(-1j * beta) * coeff_low * _upper_power(half, delta) * first
    term_high = cmath.exp(1j * beta) * coeff_high * _upper_power(half, 1.0 - delta) * second
    return prefactor * (term_low + term_high)


def _two_petal_values(family: MapFamily, w: np.ndarray) -> np.ndarray:
    """Evaluate on the sheet, splitting by |w + 1/w| and reflecting Im w < 0."""
    lower = w.imag < 0.0
    wk = np.where(lower, np.conj(w), w)
    p = wk + 1.0 / wk
    # |w| rounding on the circle can leave Im p at the noise floor with
    # either sign; the upper sheet always has Im p >= 0
    noise = np.abs(p.imag) <= _REAL_P_NOISE * (1.0 + np.abs(p.real))
    p = np.where(noise, p.real + 0.0j, p)

    out = np.empty(w.shape, dtype=complex)
    far = np.abs(p) > 2.0
    if far.any():
        out[far] = _sigma_form(family, wk[far])
    near = ~far
    if near.any():
        out[near] = _z_of_p_upper(family, p[near])
    return np.where(lower, np.conj(out), out)


def two_petal_map(family: MapFamily, w):
    """Normalized map of the two-petal family on |w| >= 1."""
    if family.kind != "two-petal":
        raise ValueError("family is not two-petal")
    pts, shape, scalar = _as_points(w)
    _check_sheet(family, pts)
    vals = _two_petal_values(family, pts)
    return complex(vals[0]) if scalar else vals.reshape(shape)


def z_of_p(family: MapFamily, p):
    """Two-petal pattern in the upper-map variable p = w + 1/w.

    Real p between the branch points means the boundary limit from above.
    The branch points p = +-2 themselves are rejected.
    """
    if family.kind != "two-petal":
        raise ValueError("z_of_p is defined for two-petal families")
    pts, shape, scalar = _as_points(p)
    if np.any(np.abs(np.abs(pts) - 2.0) < BRANCH_POINT_REJECT):
        raise MapDomainError("p too close to a branch point at +-2")
    lower = pts.imag < 0.0
    pk = np.where(lower, np.conj(pts), pts)
    out = np.empty(pts.shape, dtype=complex)
    far = np.abs(pk) > 2.0
    if far.any():
        mu = family.alpha / math.pi
        aa = (family.alpha + family.beta) / math.pi - 0.5
        bb = (family.alpha - family.beta) / math.pi
        pf = pk[far]
        out[far] = pf * _bpow(1.0 - 4.0 / (pf * pf), mu) * hyp2f1_values(
            aa, bb, 0.5, 4.0 / (pf * pf)
        )
    near = ~far
    if near.any():
        out[near] = _z_of_p_upper(family, pk[near])
    out = np.where(lower, np.conj(out), out)
    return complex(out[0]) if scalar else out.reshape(shape)


# ---------------------------------------------------------------------------
# generic evaluation and derivatives


def evaluate_map(family: MapFamily, w):
    """Family-dispatched normalized map value."""
    if family.kind == "one-petal":
        return one_petal_map(family, w)
    return two_petal_map(family, w)


def _values_on_sheet(family: MapFamily, pts: np.ndarray) -> np.ndarray:
    if family.kind == "one-petal":
        return _one_petal_values(family, pts)
    return _two_petal_values(family, pts)


def _corner_distance(family: MapFamily, pts: np.ndarray) -> np.ndarray:
    d = np.full(pts.shape, np.inf)
    for xi in family.corner_preimages:
        d = np.minimum(d, np.abs(pts - xi))
    return d


def _arc_derivatives(values_fn, pts: np.ndarray, h: np.ndarray):
    """(f, f', f'') by arc-direction finite differences with extrapolation.

    Stencil points w e^{is} keep |w| fixed, so a stencil centered on an
    evaluable ring never leaves it.  Three Richardson levels on the 4-point
    (resp. 5-point) central rule leave an O(h^8) truncation error.
    """

    def arc(scale):
        return values_fn(pts * np.exp(1j * (scale * h)))

    g_m2, g_m1, g_p1, g_p2 = arc(-2.0), arc(-1.0), arc(1.0), arc(2.0)
    g_mh, g_ph = arc(-0.5), arc(0.5)
    g_mq, g_pq = arc(-0.25), arc(0.25)
    g_0 = values_fn(pts)

    def d1(step, lo2, lo1, hi1, hi2):
        return (lo2 - 8.0 * lo1 + 8.0 * hi1 - hi2) / (12.0 * step)

    def d2(step, lo2, lo1, mid, hi1, hi2):
        return (-lo2 + 16.0 * lo1 - 30.0 * mid + 16.0 * hi1 - hi2) / (12.0 * step * step)

    first = _richardson3(
        d1(h, g_m2, g_m1, g_p1, g_p2),
        d1(0.5 * h, g_m1, g_mh, g_ph, g_p1),
        d1(0.25 * h, g_mh, g_mq, g_pq, g_ph),
    )
    second = _richardson3(
        d2(h, g_m2, g_m1, g_0, g_p1, g_p2),
        d2(0.5 * h, g_m1, g_mh, g_0, g_ph, g_p1),
        d2(0.25 * h, g_mh, g_mq, g_0, g_pq, g_ph),
    )
    iw = 1j * pts
    f_prime = first / iw
    f_second = (-second + 1j * first) / (pts * pts)
    return g_0, f_prime, f_second


def _richardson3(coarse, mid, fine):
    # successive O(h^4) -> O(h^6) -> O(h^8) eliminations for step halving
    level1 = (16.0 * mid - coarse) / 15.0
    level2 = (16.0 * fine - mid) / 15.0
    return (64.0 * level2 - level1) / 63.0


def _tangential_derivatives(family: MapFamily, pts: np.ndarray):
    """Sheet-checked arc derivatives with corner-aware step control."""
    _check_sheet(family, pts)
    h = np.minimum(FD_MAX_STEP, _corner_distance(family, pts) * FD_STEP_FRACTION)
    return _arc_derivatives(lambda q: _values_on_sheet(family, q), pts, h)


def map_derivative(family: MapFamily, w):
    """df/dw of the normalized map, finite differences along the arc."""
    pts, shape, scalar = _as_points(w)
    _, f_prime, _ = _tangential_derivatives(family, pts)
    return complex(f_prime[0]) if scalar else f_prime.reshape(shape)


def scaled_map(family: MapFamily, state: TimeState, w):
    """Physical map r f(w) at growth state ``state``."""
    return state.r * evaluate_map(family, w)


def invert_map(family: MapFamily, z, state: TimeState | None = None, guess=None):
    """Newton inversion of the scaled map; returns the pre-image w.

    Converged roots inside the unit circle are reported as off-sheet
    failures rather than returned.
    """
    r = state.r if state is not None else 1.0
    target = complex(z) / r
    w = complex(guess) if guess is not None else target
    if abs(w) < 1.0:
        w = 1.5 + 0.5j if w == 0.0 else 1.2 * w / abs(w)
    tol = NEWTON_TOL * (1.0 + abs(z))
    for _ in range(NEWTON_MAX_ITER):
        try:
            val = evaluate_map(family, w)
            err = abs(val * r - complex(z))
            if err <= tol:
                if abs(w) < 1.0 - OFF_SHEET_SLACK:
                    raise InversionError("root lies off the physical sheet", root=w)
                return w
            deriv = map_derivative(family, w)
        except MapDomainError as exc:
            raise InversionError("iteration left the evaluable region: %s" % exc, root=w)
        if deriv == 0.0:
            raise InversionError("stationary point reached", root=w)
        step = (val - target) / deriv
        w_next = w - step
        # keep the iterate on the sheet; halve the step rather than project
        tries = 0
        while abs(w_next) < 1.0 - MODULUS_SLACK and tries < 60:
            step *= 0.5
            w_next = w - step
            tries += 1
        w = w_next
    raise InversionError("no convergence in %d iterations" % NEWTON_MAX_ITER, root=w)


def pressure(family: MapFamily, state: TimeState, z) -> float:
    """Harmonic pressure Im p(z) of the growth problem at a physical point."""
    w = invert_map(family, z, state=state)
    return float((state.r * (w + 1.0 / w)).imag)


def potential_V(family: MapFamily, w):
    """Rational potential of the self-similar oscillator equation."""
    pts, shape, scalar = _as_points(w)
    for xi in family.corner_preimages:
        if np.any(np.abs(pts - xi) < CORNER_REJECT):
            raise MapDomainError("potential pole at %r" % (xi,))
    frac_a = family.alpha / math.pi
    w2 = pts * pts
    vals = 16.0 * frac_a * (1.0 - frac_a) * w2 / (w2 - 1.0) ** 2
    if family.kind == "two-petal":
        frac_b = family.beta / math.pi
        vals = vals - 8.0 * frac_b * (1.0 - 2.0 * frac_b) * w2 / (w2 + 1.0) ** 2
    return complex(vals[0]) if scalar else vals.reshape(shape)


# ---------------------------------------------------------------------------
# boundary sampling and expansion data


def boundary_trace(family: MapFamily, state: TimeState | None = None, n: int = 2048) -> BoundaryTrace:
    """Sample the physical boundary on a half-offset circle grid.

    ``n`` must be a multiple of 4 so the grid is symmetric under both
    reflections while never landing on a corner pre-image.
    """
    if n < 16 or n % 4 != 0:
        raise ValueError("n must be a multiple of 4, at least 16")
    if state is None:
        state = TimeState(1.0, 1.0)
    phis = (np.arange(n) + 0.5) * (2.0 * math.pi / n)
    ring = np.exp(1j * phis)
    points = state.r * _values_on_sheet(family, ring)
    return BoundaryTrace(family, state, phis, points)


def laurent_coefficients(family: MapFamily, kmax: int = 16, radius: float = 2.5, n: int = 256) -> LaurentCoefficients:
    """Expansion data at infinity from circle averages at ``radius``.

    The sampling circle stays well away from the corners, so truncation
    aliasing is below double rounding for kmax << n.
    """
    if kmax < 1 or kmax > n // 4:
        raise ValueError("kmax must lie in [1, n/4]")
    if radius <= 1.2:
        raise ValueError("sampling radius too close to the unit circle")
    phis = (np.arange(n) + 0.5) * (2.0 * math.pi / n)
    ring = np.exp(1j * phis)
    vals = _values_on_sheet(family, radius * ring)

    lead = np.mean(vals * np.exp(-1j * phis)) / radius
    max_imag = abs(lead.imag)
    conformal_radius = float(lead.real)
    coefficients = np.empty(kmax + 1)
    for k in range(kmax + 1):
        raw = np.mean(vals * np.exp(1j * k * phis)) * radius**k
        max_imag = max(max_imag, abs(raw.imag))
        coefficients[k] = raw.real
    # composing with the inverse of z = r w + r c1 / w + ... gives the
    # half-plane capacity r (r - c1) as the 1/z coefficient
    capacity = conformal_radius * (conformal_radius - coefficients[1])
    return LaurentCoefficients(conformal_radius, coefficients, capacity, float(max_imag))
