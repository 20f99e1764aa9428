"""Residual checks, conserved quantities, and pattern diagnostics.

Every check here is a cross-examination: values produced by the closed-form
maps are pushed through an independent route (the governing oscillator
equation, the boundary dynamical identity, Darcy kinematics, a Cauchy
integral, a 2-D moment integral) and the mismatch is reported as a residual
that the caller compares against a pinned tolerance.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .maps import (
    BoundaryTrace,
    MapFamily,
    TimeState,
    _arc_derivatives,
    _bpow,
    _one_petal_values,
    _tangential_derivatives,
    _values_on_sheet,
    boundary_trace,
    laurent_coefficients,
    map_derivative,
    potential_V,
)
from .numerics import fit_power_law, singular_endpoint_quadrature, winding_number

RING_ODE = 1.5               # sampling ring for the oscillator residual
RATIO_SPREAD_TOL = 1e-6
CONFORMAL_RING_EPS = 1e-3
CONFORMAL_SAMPLES = 2048
ANGLE_STEP_LIMIT = 2.5       # max argument increment per node before refining
CORNER_FIT_RANGE = (1e-6, 1e-3)
CORNER_FIT_POINTS = 12
WIDTH_DEGENERATE_FRACTION = 1e-3
MOMENT_MIN_INDEX = 2
PROBE_RADIUS_FRACTION = 0.02  # origin probe ring radius relative to the trace scale
PROBE_ANGLES = 17             # upper half-ring probes, 10 degrees apart
INTERIOR_MARGIN = 0.02       # Cauchy samples stay this fraction of diameter off the curve
ODE_STEPS = 1600             # fixed-step RK4 nodes for the second-solution transport

DEFAULT_TOLERANCES = {
    "oddness": 1e-10,
    "reflection": 1e-10,
    "ode_residual": 1e-7,
    "ratio_spread": RATIO_SPREAD_TOL,
    "dynamical_residual": 1e-7,
    "darcy_mismatch": 1e-6,
    "conformality": 0.0,
    "corner_exponent_base": 0.02,
    "corner_exponent_top": 0.02,
    "integral_equation": 1e-6,
    "laurent_imag": 1e-8,
    "capacity_sign": 0.0,
}


class VerificationError(RuntimeError):
    """A check could not be carried out (as opposed to failing its bound)."""


class DegenerateTraceError(ValueError):
    """Trace touches the origin; its harmonic moments are ill-defined."""


@dataclass(frozen=True)
class RatioEstimate:
    """Conserved-ratio estimate with its relative spread across probes."""

    value: float
    spread: float
    samples: np.ndarray


@dataclass(frozen=True)
class MFunctionSample:
    point: complex
    value: complex
    side: str


@dataclass(frozen=True)
class CheckResult:
    residual: float
    tolerance: float
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    family_label: str
    checks: dict = field(default_factory=dict)

    def add(self, name: str, residual: float, tolerance: float, detail: str = ""):
        self.checks[name] = CheckResult(
            float(residual), float(tolerance), bool(residual <= tolerance), detail
        )

    def add_error(self, name: str, tolerance: float, message: str):
        self.checks[name] = CheckResult(
            math.inf, float(tolerance), False, "error: %s" % message
        )

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    @property
    def has_errors(self) -> bool:
        return any(c.detail.startswith("error:") for c in self.checks.values())

    def to_dict(self) -> dict:
        return {
            "family": self.family_label,
            "all_passed": self.all_passed,
            "checks": {
                name: {
                    "residual": c.residual,
                    "tolerance": c.tolerance,
                    "pass": c.passed,
                    "detail": c.detail,
                }
                for name, c in self.checks.items()
            },
        }


@dataclass(frozen=True)
class SweepRow:
    alpha: float
    beta: float
    winding: int | None
    conformal: bool | None
    degenerate: bool | None
    error: str | None = None


@dataclass(frozen=True)
class SweepResult:
    alphas: np.ndarray
    betas: np.ndarray
    rows: tuple

    def row(self, alpha: float, beta: float) -> SweepRow:
        for r in self.rows:
            if r.alpha == alpha and r.beta == beta:
                return r
        raise KeyError((alpha, beta))


# ---------------------------------------------------------------------------
# oscillator equation


def ode_residual(family: MapFamily, n: int = 64, radius: float = RING_ODE) -> float:
    """Worst normalized residual of the self-similar oscillator equation."""
    phis = (np.arange(n) + 0.5) * (2.0 * math.pi / n)
    pts = radius * np.exp(1j * phis)
    f, fp, fpp = _tangential_derivatives(family, pts)
    v = potential_V(family, pts)
    lhs = pts * pts * fpp - (2.0 * pts / (pts * pts - 1.0)) * fp + v * f
    return float(np.max(np.abs(lhs) / (1.0 + np.abs(v * f))))


# ---------------------------------------------------------------------------
# conserved ratio via the Wronskian of the solution basis


def _second_solution_one_petal(family: MapFamily, w: complex):
    """h(w) = f(1/w) from the closed form, with its w-derivative."""
    v = 1.0 / w
    pts = np.array([v])
    # the closed form is analytic off [-1, 1]; 1/w sits inside the circle
    # but away from the cut for every probe used here
    h_step = np.minimum(0.04, np.abs(pts.imag) / 12.0)
    vals, dvals, _ = _arc_derivatives(lambda q: _one_petal_values(family, q), pts, h_step)
    h = complex(vals[0])
    h_prime = -complex(dvals[0]) / (w * w)
    return h, h_prime


def _second_solution_two_petal(family: MapFamily, theta: float, rho: float):
    """Transport conj-boundary data outward along a ray with fixed-step RK4.

    On the circle the reflected branch equals the conjugate of the map, which
    seeds the oscillator equation; integrating to rho e^{i theta} stays clear
    of the potential's poles for theta well inside (0, pi/2).
    """
    w0 = cmath.exp(1j * theta)
    pts = np.array([w0])
    f0, fp0, _ = _tangential_derivatives(family, pts)
    h = np.conj(f0[0])
    hp = -np.conj(fp0[0]) / (w0 * w0)

    frac_a = family.alpha / math.pi
    frac_b = family.beta / math.pi if family.beta is not None else None

    def second_derivative(w, y0, y1):
        w2 = w * w
        pot = 16.0 * frac_a * (1.0 - frac_a) * w2 / (w2 - 1.0) ** 2
        if frac_b is not None:
            pot -= 8.0 * frac_b * (1.0 - 2.0 * frac_b) * w2 / (w2 + 1.0) ** 2
        return (2.0 / (w * (w2 - 1.0))) * y1 - pot * y0 / w2

    span = w0 * (rho - 1.0)
    ds = 1.0 / ODE_STEPS
    y0, y1 = h, hp
    for k in range(ODE_STEPS):
        s = k * ds
        w = w0 + span * s

        def rhs(y0_, y1_, w_):
            return span * y1_, span * second_derivative(w_, y0_, y1_)

        k1a, k1b = rhs(y0, y1, w)
        k2a, k2b = rhs(y0 + 0.5 * ds * k1a, y1 + 0.5 * ds * k1b, w + 0.5 * ds * span)
        k3a, k3b = rhs(y0 + 0.5 * ds * k2a, y1 + 0.5 * ds * k2b, w + 0.5 * ds * span)
        k4a, k4b = rhs(y0 + ds * k3a, y1 + ds * k3b, w + ds * span)
        y0 = y0 + (ds / 6.0) * (k1a + 2.0 * k2a + 2.0 * k3a + k4a)
        y1 = y1 + (ds / 6.0) * (k1b + 2.0 * k2b + 2.0 * k3b + k4b)
    return y0, y1


def estimate_A(family: MapFamily, thetas=None, rhos=(1.7, 2.1)) -> RatioEstimate:
    """Conserved ratio from the Wronskian of the two oscillator solutions.

    The Wronskian combination w (f' h - f h') of the map with its reflected
    partner equals the ratio times |w - 1/w| in modulus at every off-axis
    probe; agreement across probes is the self-consistency measure.
    """
    if thetas is None:
        thetas = np.linspace(0.35, 1.15, 4)
    samples = []
    for theta in thetas:
        for rho in rhos:
            w = rho * cmath.exp(1j * theta)
            pts = np.array([w])
            f, fp, _ = _tangential_derivatives(family, pts)
            if family.kind == "one-petal":
                h, hp = _second_solution_one_petal(family, w)
            else:
                h, hp = _second_solution_two_petal(family, theta, rho)
            wronskian = w * (complex(fp[0]) * h - complex(f[0]) * hp)
            samples.append(abs(wronskian) / abs(w - 1.0 / w))
    samples = np.array(samples)
    mean = float(np.mean(samples))
    spread = float((np.max(samples) - np.min(samples)) / mean)
    return RatioEstimate(mean, spread, samples)


# ---------------------------------------------------------------------------
# boundary identities


def dynamical_residual(family: MapFamily, ratio: float | None = None, n: int = 128) -> float:
    """Worst mismatch of the boundary evolution identity, per unit scale.

    Both sides grow linearly with the scale factor, so the residual is
    reported for the normalized map; it is invariant under time scaling.
    """
    if ratio is None:
        ratio = estimate_A(family).value
    phis = (np.arange(n) + 0.5) * (2.0 * math.pi / n)
    ring = np.exp(1j * phis)
    f, fp, _ = _tangential_derivatives(family, ring)
    lhs = (2.0 / ratio) * np.real(ring * fp * np.conj(f))
    rhs = np.abs(ring - 1.0 / ring)
    return float(np.max(np.abs(lhs - rhs)))


def darcy_check(family: MapFamily, ratio: float | None = None, n: int = 256) -> float:
    """Relative mismatch between kinematic and Darcy normal velocities."""
    if ratio is None:
        ratio = estimate_A(family).value
    phis = (np.arange(n) + 0.5) * (2.0 * math.pi / n)
    ring = np.exp(1j * phis)
    f, fp, _ = _tangential_derivatives(family, ring)
    speed = np.abs(fp)
    v_kinematic = np.imag(np.conj(f) * 1j * ring * fp) / (ratio * speed)
    v_darcy = np.abs(1.0 - 1.0 / (ring * ring)) / (2.0 * speed)
    return float(np.max(np.abs(v_kinematic - v_darcy) / v_darcy))


# ---------------------------------------------------------------------------
# conformality


def conformality_check(family: MapFamily, epsilon: float = CONFORMAL_RING_EPS, n: int = CONFORMAL_SAMPLES):
    """Count zeros of f' outside the unit circle by its winding on a tight ring.

    Returns (winding, ok); the map is locally invertible on the exterior iff
    the winding vanishes.  A derivative value collapsing on the ring (corner
    pre-images sit exactly on |w| = 1) makes the count unstable, in which case
    the ring is pushed out once before giving up.
    """
    if not 1e-5 <= epsilon <= 0.2:
        raise ValueError("epsilon outside [1e-5, 0.2]")
    for ring_eps in (epsilon, 2.0 * epsilon):
        radius = math.exp(ring_eps)
        for samples in (n, 4 * n):
            phis = (np.arange(samples) + 0.5) * (2.0 * math.pi / samples)
            ring = radius * np.exp(1j * phis)
            fp = map_derivative(family, ring)
            scale = float(np.median(np.abs(fp)))
            if scale == 0.0 or float(np.min(np.abs(fp))) < 1e-9 * scale:
                break  # derivative vanishes on this ring; push the ring out
            increments = np.angle(np.roll(fp, -1) / fp)
            if float(np.max(np.abs(increments))) > ANGLE_STEP_LIMIT:
                continue  # under-resolved turn; refine the grid
            winding = int(round(float(np.sum(increments)) / (2.0 * math.pi)))
            return winding, winding == 0
    raise VerificationError("derivative winding could not be resolved")


# ---------------------------------------------------------------------------
# corner exponents


def corner_exponent(family: MapFamily, corner: complex, n_pts: int = CORNER_FIT_POINTS):
    """Power-law fit of |f| along the circle approaching a corner pre-image."""
    corner = complex(corner)
    if corner not in family.corner_preimages:
        raise ValueError("%r is not a corner pre-image of %s" % (corner, family.label()))
    theta_c = cmath.phase(corner)
    d = np.geomspace(CORNER_FIT_RANGE[0], CORNER_FIT_RANGE[1], n_pts)
    pts = np.exp(1j * (theta_c + d))
    vals = np.abs(_values_on_sheet(family, pts))
    return fit_power_law(d, vals)


# ---------------------------------------------------------------------------
# one-petal integral identity


def _one_petal_profile(family: MapFamily, v):
    """Map divided by its trunk: the bracket combination of inverse powers.

    Exactly 1 when the corner offset vanishes (the two terms merge), which
    keeps the identity bit-exact in that case.
    """
    g = family.gamma
    v = np.asarray(v, dtype=complex)
    if g == 0.0:
        return np.ones(v.shape, dtype=complex)
    a = 1.0 / v
    return 0.5 * (
        _bpow(1.0 - a, g) * _bpow(1.0 + a, 1.0 - g)
        + _bpow(1.0 + a, g) * _bpow(1.0 - a, 1.0 - g)
    )


def integral_equation_residual(family: MapFamily, probes=None, quad_n: int = 220) -> float:
    """Worst defect of the singular integral identity for the petal profile.

    The profile g satisfies g(w) = 1 + coeff * I(w) with I the inverse-slit
    integral and coeff proportional to the sine of pi times the corner
    offset; at the symmetric family the coefficient vanishes identically and
    the residual is exactly zero.
    """
    if family.kind != "one-petal":
        raise ValueError("the integral identity applies to one-petal families")
    g = family.gamma
    coeff = -2.0 * math.sin(math.pi * g) / math.pi
    if probes is None:
        reals = np.linspace(1.05, 5.0, 12).astype(complex)
        rays = np.array(
            [
                1.3 * cmath.exp(0.4j),
                1.6 * cmath.exp(1.1j),
                2.2 * cmath.exp(0.8j),
                3.0 * cmath.exp(2.3j),
                1.4 * cmath.exp(-0.7j),
                2.6 * cmath.exp(-1.9j),
                1.9 * cmath.exp(2.9j),
                4.1 * cmath.exp(-2.5j),
            ]
        )
        probes = np.concatenate([reals, rays])
    worst = 0.0
    for w in probes:
        w = complex(w)
        if abs(w) <= 1.0:
            raise ValueError("probes must lie outside the unit circle")
        value = complex(_one_petal_profile(family, np.array([w]))[0])
        if coeff == 0.0:
            integral = 0.0 + 0.0j  # coefficient kills the correction exactly
        else:
            def integrand(x):
                prof = complex(_one_petal_profile(family, np.array([1.0 / x]))[0])
                return prof / (x * x - w * w)

            integral = singular_endpoint_quadrature(
                integrand, (0.0, 1.0), (0.0, g), n=quad_n
            )
        worst = max(worst, abs(value - 1.0 + coeff * integral))
    return float(worst)


# ---------------------------------------------------------------------------
# Cauchy transform of the imaginary part


def _trace_with_tangents(family: MapFamily, state: TimeState, n: int):
    phis = (np.arange(n) + 0.5) * (2.0 * math.pi / n)
    ring = np.exp(1j * phis)
    f, fp, _ = _tangential_derivatives(family, ring)
    points = state.r * f
    dz_dphi = state.r * fp * 1j * ring
    return points, dz_dphi


def m_plus_samples(family: MapFamily, state: TimeState, zs, n: int = 16384):
    """Cauchy transform of |Im| over the pattern boundary at interior points."""
    points, dz_dphi = _trace_with_tangents(family, state, n)
    width = float(np.max(points.real) - np.min(points.real))
    height = float(np.max(points.imag) - np.min(points.imag))
    diameter = max(width, height)
    weight = 2.0 * math.pi / n
    out = []
    for z in np.atleast_1d(np.asarray(zs, dtype=complex)):
        z = complex(z)
        if float(np.min(np.abs(points - z))) < INTERIOR_MARGIN * diameter:
            raise ValueError("sample point %r too close to the boundary" % (z,))
        rel = points - z
        turns = int(round(float(np.sum(np.angle(np.roll(rel, -1) / rel))) / (2.0 * math.pi)))
        if turns != 1:
            raise ValueError("sample point %r is not inside the pattern" % (z,))
        value = complex(np.sum(np.abs(points.imag) / rel * dz_dphi) * weight / (1j * math.pi))
        side = "upper" if z.imag > 0.0 else "lower"
        out.append(MFunctionSample(z, value, side))
    return out


def m_plus_cauchy(family: MapFamily, state: TimeState, z, n: int = 16384) -> complex:
    return m_plus_samples(family, state, [z], n=n)[0].value


def m_plus_time_derivative(family: MapFamily, state: TimeState, z, rel_step: float = 1e-3, n: int = 16384) -> complex:
    """Central difference of the Cauchy transform in the growth time."""
    h = rel_step * state.T
    hi = TimeState(state.T + h, state.A)
    lo = TimeState(state.T - h, state.A)
    m_hi = m_plus_cauchy(family, hi, z, n=n)
    m_lo = m_plus_cauchy(family, lo, z, n=n)
    return (m_hi - m_lo) / (2.0 * h)


# ---------------------------------------------------------------------------
# harmonic moments


def _trace_points(trace) -> np.ndarray:
    if isinstance(trace, BoundaryTrace):
        return np.asarray(trace.points, dtype=complex)
    pts = np.asarray(trace, dtype=complex)
    if pts.ndim != 1 or len(pts) < 16:
        raise ValueError("trace must be a 1-d array of at least 16 points")
    return pts


def _reject_degenerate(points: np.ndarray):
    """Refuse traces whose exterior region reaches the origin.

    The moments integrate z**(-k) over the region complementary to the
    pattern in the upper half plane, so they exist only when the pattern
    covers a neighborhood of the origin from above, the way a fat slit with
    anchors x- < 0 < x+ does.  A pattern pinched at the origin leaves
    exterior wedges there and its moments diverge.  Probe points on a small
    upper half ring decide between the two by winding number.
    """
    mags = np.abs(points)
    scale = float(np.max(mags))
    if scale <= 0.0:
        raise DegenerateTraceError("trace collapses to the origin")
    radius = PROBE_RADIUS_FRACTION * scale
    thetas = np.linspace(math.pi / 18.0, math.pi * 17.0 / 18.0, PROBE_ANGLES)
    decided = False
    for theta in thetas:
        probe = radius * cmath.exp(1j * theta)
        try:
            turns = winding_number(points, probe)
        except ValueError:
            continue  # probe sits on the trace itself; neighbors decide
        decided = True
        if turns == 0:
            raise DegenerateTraceError(
                "exterior region reaches the origin (open at angle %.0f deg); "
                "the moments of such a domain are ill-defined" % math.degrees(theta)
            )
    if not decided:
        raise DegenerateTraceError("trace overruns the origin probe ring")


def _reject_self_similar(trace):
    # every family trace has both slit anchors at the origin
    if isinstance(trace, BoundaryTrace):
        raise DegenerateTraceError(
            "self-similar pattern hangs at the origin (x- = x+ = 0); "
            "its moments are ill-defined"
        )


def harmonic_moment(trace, k: int) -> complex:
    """Exterior harmonic moment from the boundary line integral."""
    if k < MOMENT_MIN_INDEX:
        raise ValueError("moment index must be >= %d" % MOMENT_MIN_INDEX)
    _reject_self_similar(trace)
    points = _trace_points(trace)
    _reject_degenerate(points)
    nxt = np.roll(points, -1)
    mids = 0.5 * (points + nxt)
    steps = nxt - points
    # |Im z| vanishes on the real axis, killing the z**-k blowup there
    integrand = np.zeros_like(mids)
    live = mids.imag != 0.0
    integrand[live] = np.abs(mids[live].imag) * mids[live] ** (-k)
    return complex(np.sum(integrand * steps) / (1j * math.pi * k))


def harmonic_moment_area(trace, k: int, n_theta: int = 512, n_radial: int = 32) -> complex:
    """Same moment from the complementary-region area integral.

    The region outside the pattern in the upper half plane is described in
    polar form r > rho(theta); the radial integral runs numerically to a
    finite horizon and analytically beyond it.  The logarithmic horizon term
    of k = 2 integrates to zero over (0, pi) and is dropped.
    """
    if k < MOMENT_MIN_INDEX:
        raise ValueError("moment index must be >= %d" % MOMENT_MIN_INDEX)
    _reject_self_similar(trace)
    points = _trace_points(trace)
    _reject_degenerate(points)
    upper = points[points.imag > 0.0]
    if len(upper) < 8:
        raise ValueError("trace has too few upper-half samples")
    theta = np.angle(upper)
    order = np.argsort(theta)
    theta = theta[order]
    rho = np.abs(upper)[order]
    if np.any(np.diff(theta) <= 0.0):
        keep = np.concatenate([[True], np.diff(theta) > 0.0])
        theta, rho = theta[keep], rho[keep]
    if len(theta) < 8:
        raise ValueError("trace is not star-shaped about the origin")

    nodes, wts = np.polynomial.legendre.leggauss(n_theta)
    th = 0.5 * math.pi * (nodes + 1.0)
    wth = 0.5 * math.pi * wts
    rho_th = np.interp(th, theta, rho, left=rho[0], right=rho[-1])

    if k == 2:
        integrand = np.sin(2.0 * th) * np.log(rho_th)
        return complex(np.sum(integrand * wth) / math.pi)

    horizon = 4.0 * float(np.max(rho))
    rn, rw = np.polynomial.legendre.leggauss(n_radial)
    total = 0.0
    for t, wt, r0 in zip(th, wth, rho_th):
        rr = r0 + 0.5 * (horizon - r0) * (rn + 1.0)
        jac = 0.5 * (horizon - r0)
        radial = float(np.sum(rr ** (1 - k) * rw) * jac)
        radial += horizon ** (2 - k) / (k - 2)
        total += -math.sin(k * t) * radial * wt
    return complex(total * 2.0 / (math.pi * k))


# ---------------------------------------------------------------------------
# parameter sweep


def _ray_distance(z: np.ndarray, angle: float) -> np.ndarray:
    rot = z * cmath.exp(-1j * angle)
    return np.where(rot.real >= 0.0, np.abs(rot.imag), np.abs(z))


def petal_width(family: MapFamily, n: int = 512) -> float:
    """Largest distance from the first-quadrant boundary arc to its corner rays.

    The two-petal pattern collapses onto the slit through angle alpha when
    beta reaches alpha, so this width is the degeneracy measure.
    """
    trace = boundary_trace(family, n=n)
    quarter = (trace.phis > 0.0) & (trace.phis < 0.5 * math.pi)
    pts = trace.points[quarter]
    d_base = _ray_distance(pts, family.alpha)
    if family.kind == "two-petal":
        d_top = _ray_distance(pts, 0.5 * math.pi - family.beta)
    else:
        d_top = np.full(pts.shape, np.inf)
    return float(np.max(np.minimum(d_base, d_top)))


def sweep(alphas, betas, n_trace: int = 512, epsilon: float = CONFORMAL_RING_EPS, conformal_n: int = 1024) -> SweepResult:
    """Conformality and degeneracy classification over a parameter grid.

    Nodes that cannot be evaluated record their failure and the sweep moves
    on; they come back with winding/conformal/degenerate set to None.
    """
    alphas = np.asarray(alphas, dtype=float)
    betas = np.asarray(betas, dtype=float)
    rows = []
    for alpha in alphas:
        for beta in betas:
            try:
                family = MapFamily.two_petal(alpha, beta)
                winding, ok = conformality_check(family, epsilon=epsilon, n=conformal_n)
                width = petal_width(family, n=n_trace)
                degenerate = width < WIDTH_DEGENERATE_FRACTION
                rows.append(SweepRow(float(alpha), float(beta), winding, ok, degenerate))
            except Exception as exc:  # noqa: BLE001 - sweep must keep going
                rows.append(SweepRow(float(alpha), float(beta), None, None, None, str(exc)))
    return SweepResult(alphas, betas, tuple(rows))


# ---------------------------------------------------------------------------
# bundled report


def run_standard_checks(family: MapFamily, tolerances: dict | None = None) -> VerificationReport:
    """Run the family-appropriate checks and collect them into a report."""
    tol = dict(DEFAULT_TOLERANCES)
    if tolerances:
        unknown = set(tolerances) - set(tol)
        if unknown:
            raise ValueError("unknown tolerance overrides: %s" % sorted(unknown))
        tol.update(tolerances)
    report = VerificationReport(family.label())

    def stage(names, body):
        # a crashing check is recorded against every name it owes, not raised
        try:
            body()
        except Exception as exc:  # noqa: BLE001
            for name in names:
                if name not in report.checks:
                    report.add_error(name, tol[name], str(exc))

    def check_symmetry():
        phis = (np.arange(48) + 0.5) * (2.0 * math.pi / 48)
        ring = 1.31 * np.exp(1j * phis)
        vals = _values_on_sheet(family, ring)
        odd = _values_on_sheet(family, -ring)
        refl = _values_on_sheet(family, np.conj(ring))
        report.add("oddness", float(np.max(np.abs(vals + odd))), tol["oddness"])
        report.add("reflection", float(np.max(np.abs(np.conj(refl) - vals))), tol["reflection"])

    def check_ode():
        report.add("ode_residual", ode_residual(family), tol["ode_residual"])

    def check_growth():
        ratio = estimate_A(family)
        report.add(
            "ratio_spread",
            ratio.spread,
            tol["ratio_spread"],
            detail="A=%.12g" % ratio.value,
        )
        report.add(
            "dynamical_residual", dynamical_residual(family, ratio.value), tol["dynamical_residual"]
        )
        report.add("darcy_mismatch", darcy_check(family, ratio.value), tol["darcy_mismatch"])

    def check_conformality():
        winding, _ok = conformality_check(family)
        report.add("conformality", abs(winding), tol["conformality"], detail="winding=%d" % winding)

    def check_corners():
        base_fit = corner_exponent(family, 1.0 + 0.0j)
        base_target = 2.0 * family.alpha / math.pi
        report.add(
            "corner_exponent_base",
            abs(base_fit.exponent - base_target) / base_target,
            tol["corner_exponent_base"],
            detail="fit=%.6f target=%.6f" % (base_fit.exponent, base_target),
        )
        if family.kind == "two-petal":
            top_fit = corner_exponent(family, 1.0j)
            top_target = family.delta
            report.add(
                "corner_exponent_top",
                abs(top_fit.exponent - top_target) / top_target,
                tol["corner_exponent_top"],
                detail="fit=%.6f target=%.6f" % (top_fit.exponent, top_target),
            )

    def check_integral():
        report.add("integral_equation", integral_equation_residual(family), tol["integral_equation"])

    def check_laurent():
        coeffs = laurent_coefficients(family)
        report.add("laurent_imag", coeffs.max_imag, tol["laurent_imag"])
        report.add(
            "capacity_sign",
            max(0.0, -coeffs.capacity),
            tol["capacity_sign"],
            detail="capacity=%.12g" % coeffs.capacity,
        )

    stage(("oddness", "reflection"), check_symmetry)
    stage(("ode_residual",), check_ode)
    stage(("ratio_spread", "dynamical_residual", "darcy_mismatch"), check_growth)
    stage(("conformality",), check_conformality)
    corner_names = ("corner_exponent_base", "corner_exponent_top")
    stage(corner_names if family.kind == "two-petal" else corner_names[:1], check_corners)
    if family.kind == "one-petal":
        stage(("integral_equation",), check_integral)
    stage(("laurent_imag", "capacity_sign"), check_laurent)
    return report
