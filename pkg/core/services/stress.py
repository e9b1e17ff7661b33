"""
Quantile-anchored stress: maps tau in [-1, 1] to a mean target for one variable.

tau = -1 moves the mean to the lower anchor q(alpha), tau = 1 to the upper
anchor q(1 - alpha), tau = 0 leaves it unchanged; in between the target is
linear in tau on each side.
"""

import logging

from core.exceptions import AlphaOutOfRange, DegenerateColumn, InadmissibleTarget, TauOutOfRange
from core.models import StressSpec
from core.services.dataset import empirical_quantile

logger = logging.getLogger(__name__)


def epsilon_for_tau(stats, tau, alpha):
    """
    Mean shift for stress level tau:
    tau * (m - q(alpha)) for tau <= 0, tau * (q(1 - alpha) - m) for tau >= 0.
    """
    if not -1.0 <= tau <= 1.0:
        raise TauOutOfRange(tau)
    if not 0.0 < alpha < 0.5:
        raise AlphaOutOfRange(alpha)
    if tau == 0.0:
        return 0.0

    mean = stats.mean
    if tau < 0.0:
        half_range = mean - empirical_quantile(stats, alpha)
        side = "lower"
    else:
        half_range = empirical_quantile(stats, 1.0 - alpha) - mean
        side = "upper"
    if half_range == 0.0:
        logger.warning(
            f"Variable {stats.index}: {side} quantile anchor equals the mean, "
            f"no stress applied at tau={tau}"
        )
        return 0.0
    return tau * half_range


def warn_if_binary_valued(stats, variable):
    if stats.is_binary_valued:
        logger.warning(
            f"Variable {variable} takes at most two values; its quantile anchors are degenerate"
        )


def target_for_tau(stats, spec, warn_binary=True):
    """
    t = m + epsilon(tau), required to lie strictly between the column extremes.

    Sweeps pass warn_binary=False and warn once per variable instead.
    """
    if not isinstance(spec, StressSpec):
        spec = StressSpec(**spec)
    if stats.is_degenerate:
        raise DegenerateColumn(spec.variable)
    if warn_binary:
        warn_if_binary_valued(stats, spec.variable)

    target = stats.mean + epsilon_for_tau(stats, spec.tau, spec.alpha)
    if not stats.minimum < target < stats.maximum:
        raise InadmissibleTarget(spec.variable, spec.tau, target, stats.minimum, stats.maximum)
    return target
