import cmath
import math

import numpy as np
import pytest

from qflow.errors import NearCaustic
from qflow.jets import g_jet, g_value, phi_over_sin_jet, seq_div, seq_mul, seq_sqrt


def g_direct(phi):
    """Reference evaluation sqrt(phi/sin(phi)) without jet machinery."""
    phi = complex(phi)
    if phi == 0:
        return 1.0 + 0.0j
    return cmath.sqrt(phi / cmath.sin(phi))


def fd_derivative(f, x, n, h):
    """Central finite difference for the n-th derivative (n <= 4), O(h^2)."""
    if n == 0:
        return f(x)
    if n == 1:
        return (f(x + h) - f(x - h)) / (2 * h)
    if n == 2:
        return (f(x + h) - 2 * f(x) + f(x - h)) / h**2
    if n == 3:
        return (f(x + 2 * h) - 2 * f(x + h) + 2 * f(x - h) - f(x - 2 * h)) / (2 * h**3)
    if n == 4:
        return (f(x + 2 * h) - 4 * f(x + h) + 6 * f(x) - 4 * f(x - h) + f(x - 2 * h)) / h**4
    raise ValueError(n)


def richardson_derivative(f, x, n, h=0.04):
    """Two-level Richardson extrapolation of the central difference, O(h^6)."""
    r1 = [
        (4.0 * fd_derivative(f, x, n, hh / 2) - fd_derivative(f, x, n, hh)) / 3.0
        for hh in (h, h / 2)
    ]
    return (16.0 * r1[1] - r1[0]) / 15.0


class TestSeriesArithmetic:
    def test_mul_against_polynomial_product(self):
        a = np.array([1.0, 2.0, 3.0, 0.0], dtype=complex)
        b = np.array([4.0, -1.0, 0.5, 2.0], dtype=complex)
        prod = seq_mul(a, b)
        expected = np.polynomial.polynomial.polymul(a, b)[:4]
        np.testing.assert_allclose(prod, expected, atol=1e-15)

    def test_div_inverts_mul(self):
        rng = np.random.default_rng(3)
        a = rng.normal(size=8) + 1j * rng.normal(size=8)
        b = rng.normal(size=8) + 1j * rng.normal(size=8)
        b[0] += 4.0  # keep the leading coefficient well away from zero
        q = seq_div(seq_mul(a.copy(), b.copy()), b)
        np.testing.assert_allclose(q, a, rtol=1e-12, atol=1e-12)

    def test_sqrt_squares_back(self):
        rng = np.random.default_rng(4)
        h = rng.normal(size=10) + 1j * rng.normal(size=10)
        h[0] = 2.0 + 0.5j
        s = seq_sqrt(h.copy())
        np.testing.assert_allclose(seq_mul(s, s), h, rtol=1e-12, atol=1e-12)


class TestGJet:
    def test_maclaurin_limit(self):
        # g = 1 + phi^2/12 + ... so g(0)=1, g'(0)=0, g''(0)=1/6
        jet = g_jet(1e-12, order=4)
        assert jet.derivative(0) == pytest.approx(1.0, abs=1e-10)
        assert abs(jet.derivative(1)) < 1e-9
        assert jet.derivative(2) == pytest.approx(1.0 / 6.0, abs=1e-8)

    def test_value_at_pi_over_2(self):
        assert g_value(math.pi / 2) == pytest.approx(math.sqrt(math.pi / 2), rel=1e-14)

    @pytest.mark.parametrize(
        "phi",
        [0.3, 1.2, 2.5, -1.7, 0.4 + 0.9j, 1.0j, -2.0j, 1.5 - 0.5j, 0.05, 0.05j],
    )
    def test_derivatives_match_finite_differences(self, phi):
        jet = g_jet(phi, order=4)
        for n in range(1, 5):
            fd = richardson_derivative(g_direct, complex(phi), n)
            err = abs(fd - jet.derivative(n)) / max(1.0, abs(jet.derivative(n)))
            assert err < 1e-6, (phi, n, err)

    def test_consistency_across_origin_branch_switch(self):
        # derivatives straddling the |phi| = 0.5 branch threshold must agree
        # with the same reference values
        for n in range(5):
            ref_lo = richardson_derivative(g_direct, 0.499, n)
            ref_hi = richardson_derivative(g_direct, 0.501, n)
            a = g_jet(0.499, order=6).derivative(n)
            b = g_jet(0.501, order=6).derivative(n)
            assert abs(a - ref_lo) < 1e-6 * max(1.0, abs(ref_lo))
            assert abs(b - ref_hi) < 1e-6 * max(1.0, abs(ref_hi))

    def test_batch_matches_scalars(self):
        phis = np.array([0.3, 1.2 + 0.4j, 0.01, 2.8, 1e-9])
        batch = g_jet(phis, order=6)
        for i, p in enumerate(phis):
            single = g_jet(complex(p), order=6)
            np.testing.assert_allclose(
                batch.coefficients[:, i], single.coefficients, rtol=1e-12, atol=1e-13
            )

    def test_imaginary_axis_is_real_ratio(self):
        # phi = iy gives phi/sin(phi) = y/sinh(y), real and in (0, 1)
        y = 1.3
        val = g_value(1j * y)
        expected = math.sqrt(y / math.sinh(y))
        assert val == pytest.approx(expected, rel=1e-13)

    def test_near_caustic_raises(self):
        with pytest.raises(NearCaustic):
            g_jet(math.pi + 1e-10, order=2)
        with pytest.raises(NearCaustic):
            phi_over_sin_jet(np.array([1.0, 2 * math.pi + 1e-12]), 3)

    def test_origin_not_a_caustic(self):
        jet = g_jet(0.0, order=6)
        assert jet.derivative(0) == pytest.approx(1.0, abs=1e-14)

    def test_order_validation(self):
        with pytest.raises(ValueError):
            g_jet(1.0, order=-1)
        with pytest.raises(ValueError):
            g_jet(1.0, order=65)
