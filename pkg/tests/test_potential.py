import numpy as np
import pytest

from qflow.potential import PotentialModel


def central_diff(f, x, h):
    return (f(x + h) - f(x - h)) / (2.0 * h)


class TestDerivative:
    def test_double_well_curvature_at_origin(self):
        # Fig-1 style parameters: V''(0) = M*a
        pot = PotentialModel.double_well(a=-2.0, lam=1e-4, K=1.0, mass=1.0)
        assert pot.derivative(2, 0.0) == pytest.approx(-2.0, abs=1e-15)

    def test_order_beyond_degree_is_exactly_zero(self):
        pot = PotentialModel((1.0, -2.0, 3.0, 0.5))
        for x in (-2.0, 0.0, 1.7):
            assert pot.derivative(pot.degree + 1, x) == 0.0
            assert pot.derivative(11, x) == 0.0

    def test_double_well_fourth_derivative(self):
        # d4/dx4 of (1/4) M lam K x^4 = 6 M lam K, independent of x
        pot = PotentialModel.double_well(a=-2.0, lam=1e-4, K=1.0, mass=1.0)
        for x in (-3.0, 0.0, 2.5):
            assert pot.derivative(4, x) == pytest.approx(6e-4, rel=1e-14)

    def test_matches_finite_differences_over_orders(self):
        rng = np.random.default_rng(7)
        coeffs = tuple(rng.normal(size=7))
        pot = PotentialModel(coeffs)
        for m in range(1, 6):
            for x in (-1.3, 0.2, 2.1):
                best = np.inf
                for h in (1e-3, 5e-4, 2.5e-4):
                    fd = central_diff(lambda y: pot.derivative(m - 1, y), x, h)
                    best = min(best, abs(fd - pot.derivative(m, x)) / max(1.0, abs(pot.derivative(m, x))))
                assert best < 1e-6

    def test_linearity_of_derivative(self):
        a = PotentialModel((0.0, 1.0, -0.5, 0.25))
        b = PotentialModel((2.0, 0.0, 1.5))
        total = a + b
        for m in range(5):
            for x in (-2.0, 0.3, 4.0):
                assert total.derivative(m, x) == a.derivative(m, x) + b.derivative(m, x)

    def test_array_and_complex_evaluation(self):
        pot = PotentialModel.double_well(a=-2.0, lam=1e-4, K=1.0)
        xs = np.linspace(-3, 3, 11)
        vals = pot.value(xs)
        assert vals.shape == xs.shape
        z = 1.0 + 2.0j
        expected = 0.5 * -2.0 * z**2 + 0.25 * 1e-4 * z**4
        assert pot.value(z) == pytest.approx(expected, rel=1e-14)


class TestValidation:
    def test_degree_cap(self):
        with pytest.raises(ValueError):
            PotentialModel(tuple(range(20)))

    def test_positive_mass_and_hbar(self):
        with pytest.raises(ValueError):
            PotentialModel((0.0,), mass=-1.0)
        with pytest.raises(ValueError):
            PotentialModel((0.0,), hbar=0.0)

    def test_quartic_family_detection(self):
        assert PotentialModel.double_well(a=-2.0, lam=1e-4, K=1.0).is_quartic_well()
        assert PotentialModel.harmonic(1.0).is_quartic_well()
        assert not PotentialModel((0.0, 1.0)).is_quartic_well()

    def test_parameter_recovery(self):
        pot = PotentialModel.double_well(a=-2.0, lam=1e-4, K=3.0, mass=2.0)
        assert pot.quadratic_param() == pytest.approx(-2.0)
        assert pot.quartic_param() == pytest.approx(3e-4)
