"""Polynomial potentials with exact derivatives of every order.

The kernel series needs high-order spatial derivatives of V evaluated along
a path; restricting to polynomials keeps every derivative closed-form and
makes the derivative-order sum finite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

MAX_DEGREE = 16


@dataclass(frozen=True)
class PotentialModel:
    """V(x) = sum_m coefficients[m] * x**m, plus the particle mass and hbar.

    Immutable; safe to share between threads.
    """

    coefficients: tuple[float, ...]
    mass: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coefficients)
        if len(coeffs) - 1 > MAX_DEGREE:
            raise ValueError(f"polynomial degree capped at {MAX_DEGREE}")
        if not all(math.isfinite(c) for c in coeffs):
            raise ValueError("potential coefficients must be finite")
        if self.mass <= 0:
            raise ValueError("mass must be positive")
        if self.hbar <= 0:
            raise ValueError("hbar must be positive")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        """Highest degree with a nonzero coefficient (0 for V identically 0)."""
        for m in range(len(self.coefficients) - 1, -1, -1):
            if self.coefficients[m] != 0.0:
                return m
        return 0

    def value(self, x):
        """Evaluate V(x); x may be a scalar or array, real or complex."""
        return self.derivative(0, x)

    def derivative(self, order: int, x):
        """Exact d^m V / dx^m at x by closed-form polynomial differentiation."""
        if order < 0:
            raise ValueError("derivative order must be non-negative")
        if order >= len(self.coefficients):
            return _zero_like(x)
        # coefficient of x^j in V^(order): c_{j+order} * (j+order)!/j!
        coeffs = [
            self.coefficients[j + order] * _falling_factorial(j + order, order)
            for j in range(len(self.coefficients) - order)
        ]
        return _horner(coeffs, x)

    def force(self, x):
        """Classical force -V'(x)."""
        return -self.derivative(1, x)

    def __add__(self, other: "PotentialModel") -> "PotentialModel":
        if not isinstance(other, PotentialModel):
            return NotImplemented
        if other.mass != self.mass or other.hbar != self.hbar:
            raise ValueError("can only add potentials with matching mass and hbar")
        n = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (0.0,) * (n - len(self.coefficients))
        b = other.coefficients + (0.0,) * (n - len(other.coefficients))
        return PotentialModel(tuple(x + y for x, y in zip(a, b)), self.mass, self.hbar)

    # -- constructors for the stock families -------------------------------

    @classmethod
    def free(cls, mass: float = 1.0, hbar: float = 1.0) -> "PotentialModel":
        return cls((0.0,), mass, hbar)

    @classmethod
    def harmonic(cls, omega0: float, mass: float = 1.0, hbar: float = 1.0) -> "PotentialModel":
        """V = (1/2) M omega0^2 x^2."""
        return cls((0.0, 0.0, 0.5 * mass * omega0**2), mass, hbar)

    @classmethod
    def double_well(
        cls,
        a: float,
        lam: float,
        K: float,
        mass: float = 1.0,
        hbar: float = 1.0,
    ) -> "PotentialModel":
        """V = (1/2) M a x^2 + (1/4) M lam K x^4 (a < 0 gives the double well)."""
        return cls((0.0, 0.0, 0.5 * mass * a, 0.0, 0.25 * mass * lam * K), mass, hbar)

    # -- double-well parameter recovery ------------------------------------

    def quadratic_param(self) -> float:
        """The 'a' in V = (1/2)M a x^2 + ...; equals V''(0)/M."""
        c2 = self.coefficients[2] if len(self.coefficients) > 2 else 0.0
        return 2.0 * c2 / self.mass

    def quartic_param(self) -> float:
        """The product lam*K in V = ... + (1/4)M lam K x^4."""
        c4 = self.coefficients[4] if len(self.coefficients) > 4 else 0.0
        return 4.0 * c4 / self.mass

    def is_quartic_well(self) -> bool:
        """True when V has only the x^2 and x^4 terms of the quartic family."""
        nonzero = {m for m, c in enumerate(self.coefficients) if c != 0.0}
        return nonzero <= {2, 4}


def _falling_factorial(n: int, k: int) -> float:
    out = 1.0
    for i in range(k):
        out *= n - i
    return out


def _horner(coeffs, x):
    """Evaluate sum_j coeffs[j] x^j, preserving scalar/array and dtype of x."""
    xa = np.asarray(x)
    acc = np.zeros_like(xa, dtype=np.result_type(xa.dtype, float))
    for c in reversed(coeffs):
        acc = acc * xa + c
    if np.isscalar(x) or np.ndim(x) == 0:
        return acc.item() if acc.ndim == 0 else acc
    return acc


def _zero_like(x):
    xa = np.asarray(x)
    if np.isscalar(x) or xa.ndim == 0:
        return 0.0
    return np.zeros_like(xa, dtype=float)
