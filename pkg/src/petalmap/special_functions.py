"""Gauss hypergeometric function, log-gamma, and branch-consistent powers.

These are the scalar building blocks for the map families: the series
``gauss_2f1`` with real parameters and complex argument, a Lanczos
``log_gamma``, and principal-branch real-exponent powers.  A vectorized
hypergeometric kernel (`hyp2f1_values`) is exposed for the map evaluators,
which batch thousands of boundary points at once.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

# ---- knobs ----
SERIES_RADIUS = 0.7        # direct power series is preferred below this modulus
TRANSFORM_RADIUS = 0.95    # largest modulus any route is allowed to sum over
TERM_TOL = 1e-16           # series tail cutoff relative to the running sum
MAX_TERMS = 10_000
EULER_PARAM_GUARD = 0.02   # keep c-a-b this far from integers before using the 1-t formula

_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)


class Hyp2F1DomainError(ValueError):
    """Argument not reachable: on the cut [1, inf) or past every transformation."""


class Hyp2F1ConvergenceError(RuntimeError):
    """Series failed to settle within the iteration cap."""


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0.0 and x == math.floor(x)


@dataclass(frozen=True)
class Hyp2F1Params:
    """Real parameter triple (a, b, c) of the Gauss series."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        if _is_nonpositive_integer(self.c):
            raise Hyp2F1DomainError(
                "lower parameter c = %r is a non-positive integer" % (self.c,)
            )


def log_gamma(x) -> complex:
    """Principal-branch log of the gamma function, poles rejected.

    Lanczos approximation on Re x >= 0.5, reflection below.  Accurate to
    about 1e-13 relative over the parameter ranges used here.
    """
    z = complex(x)
    if z.imag == 0.0 and z.real == math.floor(z.real) and z.real <= 0.0:
        raise ValueError("log_gamma pole at non-positive integer %r" % (x,))
    if z.real < 0.5:
        # reflection keeps the recursion in the well-conditioned half plane
        return cmath.log(math.pi / cmath.sin(math.pi * z)) - log_gamma(1.0 - z)
    z = z - 1.0
    acc = complex(_LANCZOS_COEFFS[0])
    for k, coeff in enumerate(_LANCZOS_COEFFS[1:], start=1):
        acc += coeff / (z + k)
    base = z + _LANCZOS_G + 0.5
    return _HALF_LOG_TWO_PI + (z + 0.5) * cmath.log(base) - base + cmath.log(acc)


def _gamma_quotient(numerators, denominators) -> complex:
    """prod Gamma(numerators) / prod Gamma(denominators).

    A pole in a denominator kills the quotient (reciprocal gamma is entire),
    so those return exactly 0.  A pole in a numerator is a caller bug.
    """
    for x in denominators:
        if _is_nonpositive_integer(x):
            return 0.0 + 0.0j
    total = 0.0 + 0.0j
    for x in numerators:
        total += log_gamma(x)
    for x in denominators:
        total -= log_gamma(x)
    return cmath.exp(total)


def branch_power(base, exponent: float) -> complex:
    """Principal-branch power exp(exponent * Log base) for real exponents."""
    zb = complex(base)
    if zb == 0.0:
        if exponent > 0.0:
            return 0.0 + 0.0j
        raise ValueError("zero base with non-positive exponent %r" % (exponent,))
    if exponent == 0.0:
        return 1.0 + 0.0j
    if exponent == 1.0:
        return zb
    return cmath.exp(exponent * cmath.log(zb))


def _series_sum(a: float, b: float, c: float, t: np.ndarray) -> np.ndarray:
    """Sum the Gauss series termwise for a batch of arguments.

    Callers guarantee every |t| is summable (< 1, or the series terminates
    because a or b is a non-positive integer).
    """
    t = np.asarray(t, dtype=complex)
    total = np.ones(t.shape, dtype=complex)
    term = np.ones(t.shape, dtype=complex)
    active = np.ones(t.shape, dtype=bool)
    for n in range(1, MAX_TERMS + 1):
        ratio = (a + n - 1.0) * (b + n - 1.0) / ((c + n - 1.0) * n)
        term = term * (ratio * t)
        total = total + np.where(active, term, 0.0)
        active &= np.abs(term) > TERM_TOL * np.abs(total)
        if not active.any():
            return total
    worst = t.ravel()[int(np.argmax(np.abs(t)))] if t.size else 0.0
    raise Hyp2F1ConvergenceError(
        "series did not settle in %d terms (argument near %r)" % (MAX_TERMS, worst)
    )


def _euler_blocked(a: float, b: float, c: float) -> bool:
    cab = c - a - b
    return abs(cab - round(cab)) < EULER_PARAM_GUARD


def _euler_connection(a: float, b: float, c: float, t: np.ndarray) -> np.ndarray:
    """Evaluate through the argument 1 - t; requires c - a - b off the integers."""
    cab = c - a - b
    one_minus = 1.0 - t
    coeff_direct = _gamma_quotient((c, cab), (c - a, c - b))
    coeff_power = _gamma_quotient((c, -cab), (a, b))
    first = _series_sum(a, b, a + b - c + 1.0, one_minus)
    second = _series_sum(c - a, c - b, cab + 1.0, one_minus)
    power = np.exp(cab * np.log(one_minus))
    return coeff_direct * first + coeff_power * power * second


def hyp2f1_values(a: float, b: float, c: float, t) -> np.ndarray:
    """Vectorized Gauss series with automatic argument transformations.

    Each point is routed to the representation (direct, Pfaff t/(t-1), or
    the 1-t connection) with the smallest effective argument; moduli up to
    ``TRANSFORM_RADIUS`` are accepted at the cost of a longer summation.
    """
    if _is_nonpositive_integer(c):
        raise Hyp2F1DomainError("lower parameter c = %r is a non-positive integer" % c)
    t = np.asarray(t, dtype=complex)
    out = np.empty(t.shape, dtype=complex)

    if _is_nonpositive_integer(a) or _is_nonpositive_integer(b):
        # terminating polynomial, valid for every argument
        return _series_sum(a, b, c, t)

    on_cut = (t.imag == 0.0) & (t.real >= 1.0)
    if on_cut.any():
        raise Hyp2F1DomainError("argument on the cut [1, inf)")

    m_direct = np.abs(t)
    with np.errstate(divide="ignore", invalid="ignore"):
        pfaff_arg = t / (t - 1.0)
    m_pfaff = np.abs(pfaff_arg)
    m_euler = np.abs(1.0 - t)
    if _euler_blocked(a, b, c):
        m_euler = np.full(t.shape, np.inf)

    moduli = np.stack([m_direct, m_pfaff, m_euler])
    route = np.argmin(moduli, axis=0)
    best = np.min(moduli, axis=0)
    if np.any(best > TRANSFORM_RADIUS):
        raise Hyp2F1DomainError(
            "argument not reachable by any implemented transformation"
        )

    direct_mask = route == 0
    if direct_mask.any():
        out[direct_mask] = _series_sum(a, b, c, t[direct_mask])
    pfaff_mask = route == 1
    if pfaff_mask.any():
        u = pfaff_arg[pfaff_mask]
        prefactor = np.exp(-a * np.log(1.0 - t[pfaff_mask]))
        out[pfaff_mask] = prefactor * _series_sum(a, c - b, c, u)
    euler_mask = route == 2
    if euler_mask.any():
        out[euler_mask] = _euler_connection(a, b, c, t[euler_mask])
    return out


def gauss_2f1(params: Hyp2F1Params, t) -> complex:
    """Gauss hypergeometric value at a single complex argument."""
    values = hyp2f1_values(params.a, params.b, params.c, np.array([complex(t)]))
    return complex(values[0])
