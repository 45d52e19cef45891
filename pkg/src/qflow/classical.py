"""Classical boundary-value paths and actions.

Two routes to the classical path between (x0, 0) and (xt, t): a damped-Newton
shooting solver on a fixed-step RK4 integrator, and the first-order
frequency-renormalized perturbative ansatz for the quartic family. The
second stays meaningful for a < 0 only through analytic continuation, so
every trigonometric evaluation on that route is complex.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import ConjugatePoint, NoConvergence
from .potential import PotentialModel

DEFAULT_STEPS = 512
_MAX_NEWTON = 50


class PathSource(enum.Enum):
    SHOOTING = "shooting"
    LINDSTEDT_POINCARE = "lindstedt-poincare"


@dataclass(frozen=True)
class ClassicalPath:
    """A classical trajectory sampled on a uniform time grid.

    `positions`/`velocities` may be complex for perturbative paths with
    analytically continued frequency. Closed-form callables, when present,
    take precedence over Hermite interpolation of the samples.
    """

    x0: complex
    xt: complex
    duration: float
    times: np.ndarray
    positions: np.ndarray
    velocities: np.ndarray
    source: PathSource
    action: complex | None = None
    position_fn: object = None
    velocity_fn: object = None

    def position(self, t):
        if self.position_fn is not None:
            return self.position_fn(t)
        x, _ = _hermite_eval(self.times, self.positions, self.velocities, t)
        return x

    def velocity(self, t):
        if self.velocity_fn is not None:
            return self.velocity_fn(t)
        _, v = _hermite_eval(self.times, self.positions, self.velocities, t)
        return v


@dataclass(frozen=True)
class LindstedtConstants:
    """Boundary constants of the perturbative path.

    amplitude and phase come out real and positive when that branch exists;
    otherwise they carry the analytic continuation.
    """

    amplitude_A: complex
    phase_phi0: complex
    omega0: complex
    omega: complex


# ---------------------------------------------------------------------------
# Shooting solver
# ---------------------------------------------------------------------------


def _rk4_sweep(potential: PotentialModel, x0, v0, duration: float, n_steps: int):
    """Integrate M x'' = -V'(x) plus its variational system, batched.

    Returns (trajectory positions, velocities, terminal sensitivity
    d x_end / d v0) with leading axis = time sample, remaining axes = batch.
    """
    x = np.array(x0, dtype=float, ndmin=1).copy()
    v = np.array(v0, dtype=float, ndmin=1).copy()
    x, v = np.broadcast_arrays(x, v)
    x, v = x.copy(), v.copy()
    dx = np.zeros_like(x)
    dv = np.ones_like(v)
    m = potential.mass
    h = duration / n_steps

    xs = np.empty((n_steps + 1,) + x.shape)
    vs = np.empty_like(xs)
    xs[0], vs[0] = x, v

    def rhs(x, v, dx, dv):
        return v, potential.force(x) / m, dv, -potential.derivative(2, x) / m * dx

    for i in range(n_steps):
        k1 = rhs(x, v, dx, dv)
        k2 = rhs(x + 0.5 * h * k1[0], v + 0.5 * h * k1[1], dx + 0.5 * h * k1[2], dv + 0.5 * h * k1[3])
        k3 = rhs(x + 0.5 * h * k2[0], v + 0.5 * h * k2[1], dx + 0.5 * h * k2[2], dv + 0.5 * h * k2[3])
        k4 = rhs(x + h * k3[0], v + h * k3[1], dx + h * k3[2], dv + h * k3[3])
        x = x + (h / 6.0) * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
        v = v + (h / 6.0) * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
        dx = dx + (h / 6.0) * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2])
        dv = dv + (h / 6.0) * (k1[3] + 2 * k2[3] + 2 * k3[3] + k4[3])
        xs[i + 1], vs[i + 1] = x, v

    return xs, vs, dx


def shoot_terminal_batch(potential, x0, v0, duration, n_steps=DEFAULT_STEPS):
    """Terminal position/sensitivity of the IVP for an array of launch speeds."""
    xs, vs, jac = _rk4_sweep(potential, x0, v0, duration, n_steps)
    return xs[-1], jac, (xs, vs)


def solve_bvp_batch(
    potential: PotentialModel,
    x0,
    xt,
    duration: float,
    guess_v0=None,
    tol: float = 1e-10,
    n_steps: int = DEFAULT_STEPS,
):
    """Damped-Newton shooting for a batch of boundary pairs.

    Returns (times, positions, velocities, v0) with sample axis leading.
    Raises NoConvergence if any element fails within the iteration cap.
    """
    x0 = np.atleast_1d(np.asarray(x0, dtype=float))
    xt = np.atleast_1d(np.asarray(xt, dtype=float))
    x0, xt = np.broadcast_arrays(x0, xt)
    if guess_v0 is None:
        guess_v0 = (xt - x0) / duration
    v0 = np.broadcast_to(np.asarray(guess_v0, dtype=float), x0.shape).copy()

    x_end, jac, traj = shoot_terminal_batch(potential, x0, v0, duration, n_steps)
    resid = x_end - xt
    lam = np.ones_like(v0)

    for _ in range(_MAX_NEWTON):
        done = np.abs(resid) <= tol
        if np.all(done):
            break
        jac_safe = np.where(np.abs(jac) > 1e-14, jac, np.where(jac >= 0, 1e-14, -1e-14))
        candidate = np.where(done, v0, v0 - lam * resid / jac_safe)
        x_end_c, jac_c, traj_c = shoot_terminal_batch(potential, x0, candidate, duration, n_steps)
        resid_c = x_end_c - xt
        better = np.abs(resid_c) < np.abs(resid)
        accept = better | done
        v0 = np.where(accept, candidate, v0)
        resid = np.where(accept, resid_c, resid)
        jac = np.where(accept, jac_c, jac)
        traj = (
            np.where(accept, traj_c[0], traj[0]),
            np.where(accept, traj_c[1], traj[1]),
        )
        lam = np.where(accept, np.minimum(1.0, lam * 2.0), lam * 0.5)
    else:
        bad = int(np.sum(np.abs(resid) > tol))
        worst = float(np.max(np.abs(resid)))
        raise NoConvergence(
            f"shooting failed for {bad} boundary pair(s); worst residual "
            f"{worst:.3e} (try another branch guess)"
        )

    times = np.linspace(0.0, duration, n_steps + 1)
    return times, traj[0], traj[1], v0


def solve_bvp_shooting(
    potential: PotentialModel,
    x0: float,
    xt: float,
    duration: float,
    guess_v0: float | None = None,
    tol: float = 1e-10,
    n_steps: int = DEFAULT_STEPS,
) -> ClassicalPath:
    """Classical path between (x0, 0) and (xt, duration) by shooting.

    The boundary-value problem may have several branches; the returned one
    is selected by `guess_v0` (straight-line speed by default).
    """
    if duration <= 0:
        raise ValueError("duration must be positive")
    if tol <= 0:
        raise ValueError("tol must be positive")
    times, xs, vs, _ = solve_bvp_batch(
        potential, [x0], [xt], duration, None if guess_v0 is None else [guess_v0], tol, n_steps
    )
    path = ClassicalPath(
        x0=x0,
        xt=xt,
        duration=duration,
        times=times,
        positions=xs[:, 0],
        velocities=vs[:, 0],
        source=PathSource.SHOOTING,
    )
    return replace(path, action=classical_action(path, potential))


# ---------------------------------------------------------------------------
# Perturbative (frequency-renormalized) path for the quartic family
# ---------------------------------------------------------------------------


def fit_boundary_constants(
    x_i: float,
    x_f: float,
    duration: float,
    omega0: complex,
    lam: float = 0.0,
) -> LindstedtConstants:
    """Boundary constants (A, phi) for the zeroth-order path A cos(w0 t + phi).

    Complex-capable throughout; the branch is fixed by Re(A) >= 0 plus the
    requirement that the zeroth-order path actually hits x_f at `duration`
    (the inverse of the boundary map is two-valued in phi).
    """
    A, phi, omega0_c, omega = _fit_constants_arrays(
        np.asarray([x_i], dtype=complex),
        np.asarray([x_f], dtype=complex),
        duration,
        complex(omega0),
        lam,
    )
    return LindstedtConstants(
        amplitude_A=complex(A[0]),
        phase_phi0=complex(phi[0]),
        omega0=complex(omega0_c),
        omega=complex(omega[0]),
    )


def _fit_constants_arrays(x_i, x_f, duration, omega0, lam):
    """Vectorized core of fit_boundary_constants."""
    theta = omega0 * duration
    sin_t, cos_t = np.sin(theta), np.cos(theta)
    if abs(sin_t) < 1e-12 * max(1.0, abs(theta)):
        raise ConjugatePoint(
            f"omega0*duration = {theta} is a multiple of pi; amplitude diverges"
        )
    radicand = x_f**2 + x_i**2 - 2.0 * x_f * x_i * cos_t
    A = np.sqrt(radicand) / sin_t
    # Bring A to the Re >= 0 half-plane; compensate in the phase argument.
    flip = np.real(A) < 0
    A = np.where(flip, -A, A)

    safe = np.abs(A) > 1e-300
    cos_phi = np.where(safe, x_i / np.where(safe, A, 1.0), 1.0)
    phi = np.arccos(cos_phi.astype(complex))
    # arccos fixes phi only up to sign; pick the sign that lands on x_f.
    end_plus = A * np.cos(theta + phi)
    end_minus = A * np.cos(theta - phi)
    phi = np.where(np.abs(end_minus - x_f) < np.abs(end_plus - x_f), -phi, phi)
    phi = np.where(safe, phi, 0.0)

    omega = omega0 + 3.0 * lam * A**2 / (8.0 * omega0)
    return A, phi, omega0, omega


def lindstedt_path(constants: LindstedtConstants, potential: PotentialModel, t):
    """Perturbative path position at time(s) t, complex arithmetic throughout."""
    lamK = potential.quartic_param()
    return _lp_position(
        constants.amplitude_A,
        constants.phase_phi0,
        constants.omega0,
        constants.omega,
        lamK,
        t,
    )


def lindstedt_velocity(constants: LindstedtConstants, potential: PotentialModel, t):
    lamK = potential.quartic_param()
    return _lp_velocity(
        constants.amplitude_A,
        constants.phase_phi0,
        constants.omega0,
        constants.omega,
        lamK,
        t,
    )


def _lp_position(A, phi, omega0, omega, lamK, t):
    u = omega * np.asarray(t, dtype=complex)
    corr = lamK * A**3 / (8.0 * omega0**2)
    return A * np.cos(u + phi) - corr * np.cos(u + 3.0 * phi) * np.sin(u) ** 2


def _lp_velocity(A, phi, omega0, omega, lamK, t):
    u = omega * np.asarray(t, dtype=complex)
    corr = lamK * A**3 / (8.0 * omega0**2)
    return -A * omega * np.sin(u + phi) - corr * omega * (
        -np.sin(u + 3.0 * phi) * np.sin(u) ** 2
        + 2.0 * np.sin(u) * np.cos(u) * np.cos(u + 3.0 * phi)
    )


def lindstedt_classical_path(
    potential: PotentialModel,
    x_i: float,
    x_f: float,
    duration: float,
    n_steps: int = DEFAULT_STEPS,
) -> ClassicalPath:
    """Assemble a ClassicalPath from the perturbative ansatz for V of the
    quartic family, with closed-form position/velocity callables attached."""
    if not potential.is_quartic_well():
        raise ValueError("perturbative path defined for the x^2 + x^4 family only")
    a = potential.quadratic_param()
    lamK = potential.quartic_param()
    omega0 = np.sqrt(complex(a))
    # The frequency shift formula carries the bare quartic strength.
    consts = fit_boundary_constants(x_i, x_f, duration, omega0, lam=lamK)

    times = np.linspace(0.0, duration, n_steps + 1)
    pos_fn = lambda t: lindstedt_path(consts, potential, t)  # noqa: E731
    vel_fn = lambda t: lindstedt_velocity(consts, potential, t)  # noqa: E731
    path = ClassicalPath(
        x0=x_i,
        xt=x_f,
        duration=duration,
        times=times,
        positions=pos_fn(times),
        velocities=vel_fn(times),
        source=PathSource.LINDSTEDT_POINCARE,
        position_fn=pos_fn,
        velocity_fn=vel_fn,
    )
    return replace(path, action=classical_action(path, potential))


# ---------------------------------------------------------------------------
# Action
# ---------------------------------------------------------------------------


def classical_action(path: ClassicalPath, potential: PotentialModel, order: int = 8):
    """Integral of (1/2) M xdot^2 - V(x) along the path.

    Composite Gauss-Legendre with panels aligned to the sample grid, which
    integrates the piecewise-polynomial interpolant essentially exactly.
    Complex for analytically continued paths.
    """
    nodes, weights = leggauss(order)
    t_panels = path.times
    mid = 0.5 * (t_panels[1:] + t_panels[:-1])
    half = 0.5 * (t_panels[1:] - t_panels[:-1])
    tq = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    wq = (half[:, None] * weights[None, :]).ravel()

    x = path.position(tq)
    v = path.velocity(tq)
    lagr = 0.5 * potential.mass * v**2 - potential.value(x)
    total = np.sum(wq * lagr)
    if np.iscomplexobj(total) and abs(np.imag(total)) < 1e-14 * max(1.0, abs(np.real(total))):
        return float(np.real(total))
    return complex(total) if np.iscomplexobj(total) else float(total)


def _hermite_eval(times, xs, vs, t):
    """Cubic Hermite interpolation of (x, v) samples on a uniform grid."""
    t_arr = np.asarray(t, dtype=float)
    h = times[1] - times[0]
    idx = np.clip(((t_arr - times[0]) / h).astype(int), 0, len(times) - 2)
    s = (t_arr - times[idx]) / h
    x0, x1 = xs[idx], xs[idx + 1]
    v0, v1 = vs[idx], vs[idx + 1]
    s2, s3 = s * s, s * s * s
    h00 = 2 * s3 - 3 * s2 + 1
    h10 = s3 - 2 * s2 + s
    h01 = -2 * s3 + 3 * s2
    h11 = s3 - s2
    x = h00 * x0 + h10 * h * v0 + h01 * x1 + h11 * h * v1
    d00 = (6 * s2 - 6 * s) / h
    d10 = 3 * s2 - 4 * s + 1
    d01 = (-6 * s2 + 6 * s) / h
    d11 = 3 * s2 - 2 * s
    v = d00 * x0 + d10 * v0 + d01 * x1 + d11 * v1
    return x, v
