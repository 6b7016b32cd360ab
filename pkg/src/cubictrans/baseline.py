"""Baseline distributions.

A baseline is the distribution ``G`` that gets transmuted.  Only the Pareto
distribution is shipped, but anything implementing
:class:`BaselineDistribution` can be plugged into
:class:`cubictrans.transmute.TransmutedDistribution`.

All cdf/pdf evaluations are total functions: below the support they return
0 instead of raising, so likelihood and plotting code can probe freely.
"""

from __future__ import annotations

import abc
from dataclasses import dataclass

import numpy as np

from .errors import ConstructionError, DomainError

__all__ = [
    "BaselineDistribution",
    "Pareto",
    "pareto_cdf",
    "pareto_pdf",
    "pareto_quantile",
]


class BaselineDistribution(abc.ABC):
    """Interface for a continuous baseline distribution."""

    @abc.abstractmethod
    def cdf(self, x):
        ...

    @abc.abstractmethod
    def pdf(self, x):
        ...

    @abc.abstractmethod
    def quantile(self, u):
        ...

    @property
    @abc.abstractmethod
    def support(self) -> tuple[float, float]:
        ...

    def log_pdf(self, x):
        with np.errstate(divide="ignore"):
            return np.log(self.pdf(x))


def _check_unit_interval(u):
    u = np.asarray(u, dtype=float)
    if np.any(~((u >= 0.0) & (u < 1.0))):
        raise DomainError("quantile level must lie in [0, 1)")
    return u


def _maybe_scalar(a):
    a = np.asarray(a)
    return a.item() if a.ndim == 0 else a


@dataclass(frozen=True)
class Pareto(BaselineDistribution):
    """Pareto (type I) distribution with scale ``x0`` and shape ``alpha``.

    ``G(x) = 1 - (x0/x)**alpha`` for ``x >= x0``.
    """

    x0: float
    alpha: float

    def __post_init__(self):
        if not (self.x0 > 0 and np.isfinite(self.x0)):
            raise ConstructionError(f"Pareto scale must be positive, got {self.x0}")
        if not (self.alpha > 0 and np.isfinite(self.alpha)):
            raise ConstructionError(f"Pareto shape must be positive, got {self.alpha}")

    @property
    def support(self) -> tuple[float, float]:
        return (self.x0, np.inf)

    def survival(self, x):
        """``(x0/x)**alpha`` on the support, 1 below it."""
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            s = np.where(x >= self.x0, (self.x0 / np.where(x > 0, x, 1.0)) ** self.alpha, 1.0)
        return _maybe_scalar(s)

    def cdf(self, x):
        return _maybe_scalar(1.0 - np.asarray(self.survival(x)))

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            safe = np.where(x >= self.x0, x, self.x0)
            val = self.alpha * (self.x0 / safe) ** self.alpha / safe
        return _maybe_scalar(np.where(x >= self.x0, val, 0.0))

    def log_pdf(self, x):
        x = np.asarray(x, dtype=float)
        safe = np.where(x >= self.x0, x, self.x0)
        val = np.log(self.alpha) + self.alpha * np.log(self.x0) - (self.alpha + 1.0) * np.log(safe)
        return _maybe_scalar(np.where(x >= self.x0, val, -np.inf))

    def quantile(self, u):
        u = _check_unit_interval(u)
        return _maybe_scalar(self.x0 * (1.0 - u) ** (-1.0 / self.alpha))


def pareto_cdf(p: Pareto, x):
    return p.cdf(x)


def pareto_pdf(p: Pareto, x):
    return p.pdf(x)


def pareto_quantile(p: Pareto, u):
    return p.quantile(u)
