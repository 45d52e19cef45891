"""Truncated power-series (jet) arithmetic for the fluctuation prefactor.

The kernel series needs derivatives of g(phi) = sqrt(phi/sin(phi)) up to
high order at arbitrary complex phi. Hand-derived formulas are error-prone,
so the derivatives are computed with jet arithmetic: build the Taylor
coefficients of sin about the expansion point, divide, and take the square
root of the series. All operations are exact to rounding.

Coefficient arrays have shape (order+1, *batch); axis 0 is the Taylor
index, so a whole grid of expansion points is processed in one pass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NearCaustic

# Below this radius the series division picks up a spurious pole/zero pair
# at the origin (removable singularity of phi/sin(phi)); switch to composing
# the entire function sin(phi)/phi instead.
_ORIGIN_RADIUS = 0.5

_CAUSTIC_FLOOR = 1e-8


@dataclass(frozen=True)
class PhaseJet:
    """Taylor coefficients of sqrt(phi/sin(phi)) about a fixed phase."""

    center: np.ndarray
    coefficients: np.ndarray  # shape (order+1, *batch), complex

    @property
    def order(self) -> int:
        return self.coefficients.shape[0] - 1

    def derivative(self, n: int):
        """n-th derivative of g at the center: n! * coefficients[n]."""
        if not 0 <= n <= self.order:
            raise ValueError(f"derivative order {n} outside jet order {self.order}")
        return self.coefficients[n] * math.factorial(n)


def seq_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Truncated Cauchy product along axis 0."""
    order = a.shape[0] - 1
    out = np.zeros_like(a)
    for n in range(order + 1):
        for j in range(n + 1):
            out[n] = out[n] + a[j] * b[n - j]
    return out


def seq_div(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Series quotient u/v along axis 0; requires v[0] != 0."""
    order = u.shape[0] - 1
    q = np.zeros_like(u)
    q[0] = u[0] / v[0]
    for n in range(1, order + 1):
        acc = u[n]
        for j in range(n):
            acc = acc - q[j] * v[n - j]
        q[n] = acc / v[0]
    return q


def seq_sqrt(h: np.ndarray) -> np.ndarray:
    """Principal square root of a series with h[0] != 0."""
    order = h.shape[0] - 1
    s = np.zeros_like(h)
    s[0] = np.sqrt(h[0])
    for n in range(1, order + 1):
        acc = h[n]
        for j in range(1, n):
            acc = acc - s[j] * s[n - j]
        s[n] = acc / (2.0 * s[0])
    return s


def sin_jet(center: np.ndarray, order: int) -> np.ndarray:
    """Taylor coefficients of sin about center: sin^(n)(c)/n!."""
    c = np.asarray(center, dtype=complex)
    out = np.zeros((order + 1,) + c.shape, dtype=complex)
    s, co = np.sin(c), np.cos(c)
    cycle = (s, co, -s, -co)
    for n in range(order + 1):
        out[n] = cycle[n % 4] / math.factorial(n)
    return out


def _variable_jet(center: np.ndarray, order: int) -> np.ndarray:
    c = np.asarray(center, dtype=complex)
    out = np.zeros((order + 1,) + c.shape, dtype=complex)
    out[0] = c
    if order >= 1:
        out[1] = 1.0
    return out


def _sinc_maclaurin(degree: int) -> list[float]:
    """Coefficients of sin(x)/x = sum (-1)^k x^(2k)/(2k+1)!."""
    coeffs = [0.0] * (degree + 1)
    for k in range(degree // 2 + 1):
        coeffs[2 * k] = (-1.0) ** k / math.factorial(2 * k + 1)
    return coeffs


def _compose_poly(poly: list[float], center: np.ndarray, order: int) -> np.ndarray:
    """Jet of P(c + delta) truncated at `order`, by Horner in jet arithmetic."""
    c = np.asarray(center, dtype=complex)
    acc = np.zeros((order + 1,) + c.shape, dtype=complex)
    for p in reversed(poly):
        # acc <- acc*(c + delta) + p, with (c+delta) a linear jet
        shifted = np.zeros_like(acc)
        shifted[0] = acc[0] * c
        for n in range(1, order + 1):
            shifted[n] = acc[n] * c + acc[n - 1]
        shifted[0] = shifted[0] + p
        acc = shifted
    return acc


def phi_over_sin_jet(center, order: int) -> np.ndarray:
    """Taylor coefficients of phi/sin(phi) about complex center(s)."""
    c = np.asarray(center, dtype=complex)
    scalar = c.ndim == 0
    c = np.atleast_1d(c)

    near_origin = np.abs(c) < _ORIGIN_RADIUS
    pole = (~near_origin) & (np.abs(np.sin(c)) < _CAUSTIC_FLOOR)
    if np.any(pole):
        raise NearCaustic(
            f"|sin(phi)| below {_CAUSTIC_FLOOR} at {int(np.sum(pole))} point(s); "
            "shift the time of flight away from the caustic"
        )

    out = np.zeros((order + 1,) + c.shape, dtype=complex)
    far = ~near_origin
    if np.any(far):
        cf = c[far]
        out[:, far] = seq_div(_variable_jet(cf, order), sin_jet(cf, order))
    if np.any(near_origin):
        cn = c[near_origin]
        # sin(phi)/phi is entire with fast-decaying coefficients; compose its
        # Maclaurin polynomial with (c + delta), then invert the series.
        sinc = _compose_poly(_sinc_maclaurin(order + 30), cn, order)
        one = np.zeros_like(sinc)
        one[0] = 1.0
        out[:, near_origin] = seq_div(one, sinc)
    if scalar:
        out = out[:, 0]
    return out


def g_jet(phi, order: int) -> PhaseJet:
    """Jet of g(phi) = sqrt(phi/sin(phi)) about phi, to the given order.

    Principal branch of the square root at the center; raises NearCaustic
    within 1e-8 of a nonzero multiple of pi (the origin is removable).
    """
    if order < 0:
        raise ValueError("jet order must be non-negative")
    if order > 64:
        raise ValueError("jet order capped at 64")
    h = phi_over_sin_jet(phi, order)
    g = seq_sqrt(h)
    return PhaseJet(center=np.asarray(phi, dtype=complex), coefficients=g)


def g_value(phi):
    """sqrt(phi/sin(phi)) alone, for callers that need no derivatives."""
    return g_jet(phi, 0).coefficients[0]
