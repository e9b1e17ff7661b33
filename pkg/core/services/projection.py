"""
Entropic projection of the empirical test-set measure under moment constraints.

Given constraint values phi[i] in R^k and a target t, the measure closest in
KL divergence to the uniform weighting that satisfies the constraint is the
exponential tilt lambda_i = exp(<xi, phi_i> - log Z(xi)), where xi minimizes
the strictly convex dual H(xi) = log Z(xi) - <xi, t> and
Z(xi) = (1/n) sum_i exp(<xi, phi_i>).

The gradient of log Z is the tilted mean of phi and its Hessian the tilted
covariance, so the dual is solved by Newton's method: bracketed with
bisection for k = 1, damped by an Armijo backtracking line search on H for
k > 1. Every exponential sum is max-shifted.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from core.exceptions import (
    DidNotConverge,
    InfeasibleTarget,
    NonFiniteInput,
    NotConverged,
    SameVariable,
    SingularHessian,
)
from core.models import ConstraintSpec, DualSolution, SolverOptions, StressSpec, WeightVector
from core.models.stress import DEFAULT_ALPHA
from core.services import dataset, stress

logger = logging.getLogger(__name__)
solver_logger = logging.getLogger("solver")

ARMIJO = 1e-4
MIN_STEP = 1e-12
# Relative eigenvalue floor of the scaled tilted covariance.
SINGULAR_RTOL = 1e-12
# |xi_j| * scale_j beyond DIVERGENCE_BOUND means the dual is running off to infinity; a
# singular tilted covariance past COLLAPSE_BOUND means the tilt collapsed onto a face of the hull.
DIVERGENCE_BOUND = 700.0
COLLAPSE_BOUND = 50.0
KL_CROSSCHECK_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class PartitionStats:
    log_z: float
    mean: np.ndarray
    cov: np.ndarray


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    reason: str = ""

    def __bool__(self):
        return self.feasible


def _as_matrix(phi):
    phi = np.asarray(phi, dtype=np.float64)
    if phi.ndim == 1:
        phi = phi.reshape(-1, 1)
    return phi


def log_partition_stats(phi, xi):
    """
    log Z(xi) with Z(xi) = (1/n) sum_i exp(<xi, phi_i>), and the tilted mean and
    covariance of phi (the gradient and Hessian of log Z).
    """
    phi = _as_matrix(phi)
    xi = np.atleast_1d(np.asarray(xi, dtype=np.float64))
    if not (np.isfinite(phi).all() and np.isfinite(xi).all()):
        raise NonFiniteInput("log-partition inputs must be finite")
    if xi.shape != (phi.shape[1],):
        raise NonFiniteInput(f"xi has shape {xi.shape}, expected ({phi.shape[1]},)")

    scores = np.einsum("ij,j->i", phi, xi)
    shift = scores.max()
    exps = np.exp(scores - shift)
    total = float(np.einsum("i->", exps))
    log_z = float(shift + math.log(total / phi.shape[0]))
    probs = exps / total
    mean = np.einsum("i,ij->j", probs, phi)
    centered = phi - mean
    cov = np.einsum("i,ij,ik->jk", probs, centered, centered)
    if not math.isfinite(log_z):
        raise NonFiniteInput("log-partition overflowed")
    return PartitionStats(log_z=log_z, mean=mean, cov=cov)


def _box_check(spec, opts):
    """Strict per-coordinate min < t < max; targets within tolerance of an extreme fail too."""
    lows = spec.phi.min(axis=0)
    highs = spec.phi.max(axis=0)
    tolerance = opts.tolerance(spec)
    for j in range(spec.k):
        where = "" if spec.k == 1 else f" of {spec.labels[j]}"
        low, high, target = lows[j], highs[j], spec.target[j]
        if low == high:
            return Feasibility(False, f"degenerate column{where}: all values equal {low!r}")
        if target > high:
            return Feasibility(False, f"target exceeds column maximum{where}")
        if target < low:
            return Feasibility(False, f"target below column minimum{where}")
        if target == high:
            return Feasibility(False, f"target equals column maximum{where}")
        if target == low:
            return Feasibility(False, f"target equals column minimum{where}")
        if high - target <= tolerance[j]:
            return Feasibility(False, f"target within tolerance of column maximum{where}")
        if target - low <= tolerance[j]:
            return Feasibility(False, f"target within tolerance of column minimum{where}")
    return Feasibility(True)


def feasibility_check(spec, opts=None):
    """
    Diagnose whether the target lies strictly inside the convex hull of the rows.

    Exact for k = 1. For k > 1 the box check is only necessary, so a trial
    solve follows; a diverging dual is reported as infeasible-or-boundary.
    """
    opts = opts or SolverOptions.from_settings()
    verdict = _box_check(spec, opts)
    if not verdict or spec.k == 1:
        return verdict
    try:
        _solve(spec, opts, warm_start=None)
    except DidNotConverge as exc:
        return Feasibility(
            False, f"solver diverged, target outside the hull or on its boundary: {exc}"
        )
    except SingularHessian as exc:
        return Feasibility(False, str(exc))
    return Feasibility(True)


def _solve_scalar(phi, target, xi, tolerance, scale, opts):
    """Safeguarded Newton on g(xi) = E_xi[phi] - t, increasing in xi."""
    stats = log_partition_stats(phi, xi)
    gap = stats.mean[0] - target[0]
    low, high = -math.inf, math.inf
    expansion = 1.0 / scale[0]
    iterations = 0
    while abs(gap) > tolerance[0]:
        if iterations >= opts.max_iter:
            raise DidNotConverge(
                iterations, abs(gap), diverged=not (math.isfinite(low) and math.isfinite(high))
            )
        if gap < 0:
            low = xi[0]
        else:
            high = xi[0]
        variance = stats.cov[0, 0]
        candidate = xi[0] - gap / variance if variance > 0 else math.nan
        if not low < candidate < high:
            if math.isfinite(low) and math.isfinite(high):
                candidate = 0.5 * (low + high)
            elif math.isfinite(low):
                candidate = low + expansion
                expansion *= 2.0
            else:
                candidate = high - expansion
                expansion *= 2.0
            solver_logger.debug(f"Newton step rejected, safeguard moved xi to {candidate:.6g}")
        xi = np.array([candidate])
        stats = log_partition_stats(phi, xi)
        gap = stats.mean[0] - target[0]
        iterations += 1
    return xi, stats, iterations


def _solve_vector(spec, phi, target, xi, tolerance, scale, opts):
    """Damped Newton with Armijo backtracking on H(xi) = log Z(xi) - <xi, t>."""
    stats = log_partition_stats(phi, xi)
    gap = stats.mean - target
    objective = stats.log_z - float(xi @ target)
    iterations = 0
    while np.any(np.abs(gap) > tolerance):
        residual = float(np.max(np.abs(gap)))
        if iterations >= opts.max_iter:
            raise DidNotConverge(iterations, residual)
        if np.max(np.abs(xi) * scale) > DIVERGENCE_BOUND:
            raise DidNotConverge(iterations, residual, diverged=True)

        scaled = stats.cov / np.outer(scale, scale)
        eigenvalues, eigenvectors = np.linalg.eigh(scaled)
        if eigenvalues[0] <= SINGULAR_RTOL * max(eigenvalues[-1], np.finfo(float).tiny):
            if iterations > 0 and np.max(np.abs(xi) * scale) > COLLAPSE_BOUND:
                raise DidNotConverge(iterations, residual, diverged=True)
            raise SingularHessian(eigenvectors[:, 0], spec.labels)

        direction = -np.linalg.solve(stats.cov, gap)
        slope = float(gap @ direction)
        step = 1.0
        while True:
            candidate = xi + step * direction
            trial = log_partition_stats(phi, candidate)
            trial_objective = trial.log_z - float(candidate @ target)
            if trial_objective <= objective + ARMIJO * step * slope:
                break
            step *= 0.5
            if step < MIN_STEP:
                raise DidNotConverge(iterations, residual)
        if step < 1.0:
            solver_logger.debug(f"Line search damped the Newton step to {step:.3g}")
        xi, stats, objective = candidate, trial, trial_objective
        gap = stats.mean - target
        iterations += 1
    return xi, stats, iterations


def _polish(phi, target, xi, stats):
    """One more Newton step after convergence; kept only if the residual shrinks."""
    gap = stats.mean - target
    try:
        candidate = xi - np.linalg.solve(stats.cov, gap)
        trial = log_partition_stats(phi, candidate)
    except (np.linalg.LinAlgError, NonFiniteInput):
        return xi, stats
    if np.max(np.abs(trial.mean - target)) < np.max(np.abs(gap)):
        return candidate, trial
    return xi, stats


def _solve(spec, opts, warm_start):
    # The tilt is invariant to shifting phi, so work on columns centered at their mean.
    center = spec.phi.mean(axis=0)
    phi = spec.phi - center
    target = spec.target - center
    tolerance = opts.tolerance(spec)
    scale = spec.scale
    if warm_start is None:
        xi = np.zeros(spec.k)
    else:
        xi = np.array(np.atleast_1d(warm_start), dtype=np.float64)
        if xi.shape != (spec.k,) or not np.isfinite(xi).all():
            xi = np.zeros(spec.k)

    if spec.k == 1:
        xi, stats, iterations = _solve_scalar(phi, target, xi, tolerance, scale, opts)
    else:
        xi, stats, iterations = _solve_vector(spec, phi, target, xi, tolerance, scale, opts)
    if iterations > 0:
        xi, stats = _polish(phi, target, xi, stats)
    return center, target, xi, stats, iterations


def solve_dual(spec, opts=None, warm_start=None):
    """
    Find xi(t), the minimizer of H(xi) = log Z(xi) - <xi, t>.

    Starts from xi = 0 (the no-stress solution) unless a warm start is given.
    Raises InfeasibleTarget when the target fails the strict box check.
    """
    opts = opts or SolverOptions.from_settings()
    verdict = _box_check(spec, opts)
    if not verdict:
        raise InfeasibleTarget(verdict.reason)

    center, target, xi, stats, iterations = _solve(spec, opts, warm_start)
    residual = float(np.max(np.abs(stats.mean - target)))
    converged = bool(np.all(np.abs(stats.mean - target) <= opts.tolerance(spec)))
    solver_logger.debug(
        f"Dual solved for {', '.join(spec.labels)}: xi={xi.tolist()} "
        f"iterations={iterations} residual={residual:.3e}"
    )
    return DualSolution(
        xi=xi,
        log_partition=float(stats.log_z + xi @ center),
        achieved_moment=stats.mean + center,
        iterations=iterations,
        converged=converged,
        residual=residual,
    )


def weights_from_dual(spec, dual):
    """lambda_i = exp(<xi, phi_i> - log Z(xi)), normalized to mean 1, and KL(Q_t, Q_n)."""
    if not dual.converged:
        raise NotConverged()
    center = spec.phi.mean(axis=0)
    scores = np.einsum("ij,j->i", spec.phi - center, dual.xi)
    shifted = scores - scores.max()
    log_lambdas = shifted - math.log(np.mean(np.exp(shifted)))
    lambdas = np.exp(log_lambdas)
    # Renormalize the rounding away, then keep tails that underflow strictly positive.
    scale = float(np.mean(lambdas))
    lambdas /= scale
    log_lambdas -= math.log(scale)
    lambdas = np.maximum(lambdas, np.finfo(np.float64).tiny)
    lambdas.flags.writeable = False

    log_z = dual.log_partition - float(dual.xi @ center)
    kl = float(dual.xi @ (spec.target - center)) - log_z + 0.0
    primal = float(np.mean(lambdas * log_lambdas))
    if not abs(primal - kl) <= KL_CROSSCHECK_TOL:
        solver_logger.warning(
            f"KL dual identity off by {abs(primal - kl):.3e} (dual {kl:.6g}, primal {primal:.6g})"
        )
    return WeightVector(lambdas=lambdas, kl=kl, dual=dual)


def project(spec, opts=None, warm_start=None):
    """solve_dual followed by weights_from_dual."""
    return weights_from_dual(spec, solve_dual(spec, opts, warm_start))


def mean_constraint(ts, j0, t):
    """E[X^j0] = t."""
    j0 = dataset.check_index(ts, j0)
    return ConstraintSpec(phi=ts.column(j0), target=[t], labels=(ts.feature_names[j0],))


def mean_cov_constraint(ts, i, j, m_i, m_j, c_ij):
    """E[X^i] = m_i, E[X^j] = m_j and Cov(X^i, X^j) = c_ij, via Phi = (X^i, X^j, X^i X^j)."""
    i = dataset.check_index(ts, i)
    j = dataset.check_index(ts, j)
    if i == j:
        raise SameVariable(i)
    x_i = ts.column(i)
    x_j = ts.column(j)
    name_i, name_j = ts.feature_names[i], ts.feature_names[j]
    return ConstraintSpec(
        phi=np.column_stack([x_i, x_j, x_i * x_j]),
        target=[m_i, m_j, c_ij + m_i * m_j],
        labels=(name_i, name_j, f"{name_i}*{name_j}"),
    )


def stress_weights(ts, j0, tau, alpha=DEFAULT_ALPHA, opts=None, warm_start=None):
    """Weights of the projection moving the mean of X^j0 to its tau-stressed target."""
    stats = dataset.column_stats(ts, j0)
    target = stress.target_for_tau(stats, StressSpec(variable=j0, tau=tau, alpha=alpha))
    return project(mean_constraint(ts, j0, target), opts, warm_start)
