"""
Projection types: the moment constraint, solver options, the dual solution
and the resulting weight vector.
"""

from dataclasses import dataclass

import numpy as np
from django.conf import settings

from core.exceptions import NonFiniteInput


def _readonly(values, ndim):
    array = np.array(values, dtype=np.float64, copy=True)
    if ndim == 2 and array.ndim == 1:
        array = array.reshape(-1, 1)
    array.flags.writeable = False
    return array


@dataclass(frozen=True, eq=False)
class ConstraintSpec:
    """
    Deformation map and target: phi[i] is Phi(X_i, Yhat_i, Y_i) in R^k and
    the projected measure must satisfy (1/n) sum_i lambda_i phi[i] = target.
    """

    phi: np.ndarray
    target: np.ndarray
    labels: tuple

    def __post_init__(self):
        phi = _readonly(self.phi, 2)
        target = _readonly(np.atleast_1d(self.target), 1)
        if phi.ndim != 2 or phi.shape[1] < 1:
            raise NonFiniteInput("phi must be an n x k matrix with k >= 1")
        if target.shape != (phi.shape[1],):
            raise NonFiniteInput(f"target has shape {target.shape}, expected ({phi.shape[1]},)")
        if not (np.isfinite(phi).all() and np.isfinite(target).all()):
            raise NonFiniteInput("constraint values and target must be finite")
        labels = tuple(self.labels) or tuple(f"phi{i}" for i in range(phi.shape[1]))
        if len(labels) != phi.shape[1]:
            raise NonFiniteInput(f"{len(labels)} labels for {phi.shape[1]} constraint coordinates")
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "labels", labels)

    @property
    def n(self):
        return self.phi.shape[0]

    @property
    def k(self):
        return self.phi.shape[1]

    @property
    def scale(self):
        """Per-coordinate spread max - min of phi."""
        return self.phi.max(axis=0) - self.phi.min(axis=0)


@dataclass(frozen=True)
class SolverOptions:
    tol_abs: float = 1e-10
    tol_rel: float = 1e-9
    max_iter: int = 100

    @classmethod
    def from_settings(cls, **overrides):
        engine = getattr(settings, "ENGINE", {}) if settings.configured else {}
        options = {
            "tol_abs": engine.get("TOL_ABS", cls.tol_abs),
            "tol_rel": engine.get("TOL_REL", cls.tol_rel),
            "max_iter": engine.get("MAX_ITER", cls.max_iter),
        }
        options.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**options)

    def tolerance(self, spec):
        """Per-coordinate residual tolerance tol_abs + tol_rel * (max - min)."""
        return self.tol_abs + self.tol_rel * spec.scale


@dataclass(frozen=True, eq=False)
class DualSolution:
    xi: np.ndarray
    log_partition: float
    achieved_moment: np.ndarray
    iterations: int
    converged: bool
    residual: float


@dataclass(frozen=True, eq=False)
class WeightVector:
    """Positive weights with mean 1, their KL divergence to the uniform weighting, and the dual."""

    lambdas: np.ndarray
    kl: float
    dual: DualSolution

    @property
    def n(self):
        return self.lambdas.shape[0]

    @property
    def xi(self):
        return self.dual.xi

    @property
    def log_partition(self):
        return self.dual.log_partition

    @property
    def converged(self):
        return self.dual.converged

    @property
    def iterations(self):
        return self.dual.iterations

    @property
    def residual(self):
        return self.dual.residual

