"""Exception types shared across the engine.

Every failure mode that callers are expected to catch has its own class so
the CLI can map it to a machine-readable name and exit code.
"""


class QflowError(Exception):
    """Base class for all engine failures."""


class NoConvergence(QflowError):
    """An iterative solve (shooting Newton, kernel series) failed to converge."""


class ConjugatePoint(QflowError):
    """Boundary fit requested at a conjugate time (sin(omega0*t) = 0)."""


class NearCaustic(QflowError):
    """Accumulated phase too close to a multiple of pi; prefactor diverges."""


class FrequencyZero(QflowError):
    """Instantaneous frequency vanishes at a quadrature node."""


class DiscriminantZero(QflowError):
    """Closed-form frequency integral undefined (vanishing discriminant)."""


class GridTooNarrow(QflowError):
    """Wavefunction does not decay below threshold at the grid edges."""


class GridMismatch(QflowError):
    """Two fields expected on identical grids differ in extent or resolution."""


class BoundaryContamination(QflowError):
    """Reference evolution reached the hard-wall boundary."""


class EigenFailure(QflowError):
    """Tridiagonal eigendecomposition failed."""


class ConfigError(QflowError):
    """Run configuration is malformed or inconsistent."""
