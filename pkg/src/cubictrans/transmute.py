"""Transmuted distributions ``F(x) = R(G(x))`` over an arbitrary baseline."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .baseline import BaselineDistribution, _check_unit_interval, _maybe_scalar
from .errors import ConstructionError, DomainError
from .kernels import FamilySpec, TransmutationKernel, get_family, kernel_of
from .validity import in_range, kernel_is_valid

__all__ = [
    "TransmutedDistribution",
    "invert_kernel_cdf",
    "ct_cdf",
    "ct_pdf",
    "ct_quantile",
    "ct_sample",
]

QUANTILE_TOL = 1e-12
QUANTILE_MAXITER = 200


def invert_kernel_cdf(kernel: TransmutationKernel, u, tol: float = QUANTILE_TOL,
                      maxiter: int = QUANTILE_MAXITER) -> np.ndarray:
    """Solve ``R(t) = u`` on ``[0, 1]`` elementwise.

    Newton steps are taken only when they stay inside the current bracket,
    otherwise the bracket is bisected.  ``r`` may vanish at isolated points
    for boundary kernels, where a bare Newton iteration would blow up.
    """
    u = np.asarray(u, dtype=float)
    lo = np.zeros_like(u)
    hi = np.ones_like(u)
    t = np.clip(u, 0.0, 1.0)
    for _ in range(maxiter):
        resid = kernel.cdf(t) - u
        done = np.abs(resid) <= tol
        if np.all(done):
            break
        below = resid < 0
        lo = np.where(below, t, lo)
        hi = np.where(below, hi, t)
        slope = kernel.density(t)
        with np.errstate(divide="ignore", invalid="ignore"):
            newton = t - resid / slope
        ok = np.isfinite(newton) & (newton > lo) & (newton < hi)
        t = np.where(done, t, np.where(ok, newton, 0.5 * (lo + hi)))
    return t


@dataclass(frozen=True)
class TransmutedDistribution:
    """Baseline ``G`` transmuted by one of the registered families.

    By default the parameters must lie in the family's constraint set and
    produce a nonnegative kernel.  Use :meth:`unchecked` to evaluate
    deliberately invalid members.
    """

    baseline: BaselineDistribution
    family: FamilySpec
    params: tuple[float, ...]
    kernel: TransmutationKernel = field(init=False)
    checked: bool = True

    def __post_init__(self):
        fam = get_family(self.family)
        params = tuple(float(p) for p in np.atleast_1d(np.asarray(self.params, dtype=float)))
        object.__setattr__(self, "family", fam)
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "kernel", kernel_of(fam, params))
        if self.checked:
            if not in_range(fam, params):
                raise ConstructionError(
                    f"{fam.family_id}{params} lies outside the family's parameter range")
            cert = kernel_is_valid(self.kernel)
            if not cert:
                raise ConstructionError(
                    f"{fam.family_id}{params} is not a distribution: "
                    f"r({cert.t_min:.6g}) = {cert.r_min:.6g} < 0")

    @classmethod
    def unchecked(cls, baseline, family, params: Sequence[float]) -> "TransmutedDistribution":
        return cls(baseline, family, params, checked=False)

    @property
    def is_valid(self) -> bool:
        return kernel_is_valid(self.kernel).valid

    def cdf(self, x):
        return _maybe_scalar(self.kernel.cdf(self.baseline.cdf(x)))

    def pdf(self, x):
        g = np.asarray(self.baseline.pdf(x))
        return _maybe_scalar(g * self.kernel.density(self.baseline.cdf(x)))

    def log_pdf(self, x):
        r = self.kernel.density(self.baseline.cdf(x))
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.asarray(self.baseline.log_pdf(x)) + np.log(np.where(r > 0, r, np.nan))
        return _maybe_scalar(np.where(r > 0, out, -np.inf))

    def quantile(self, u):
        u = _check_unit_interval(u)
        t = invert_kernel_cdf(self.kernel, u)
        # Guard against t landing on 1.0 through rounding when u < 1.
        t = np.minimum(t, np.nextafter(1.0, 0.0))
        return self.baseline.quantile(_maybe_scalar(t))

    def sample(self, n: int, seed=None) -> np.ndarray:
        """``n`` inverse-transform draws from a PCG64 stream seeded with ``seed``."""
        if int(n) < 1:
            raise DomainError(f"sample size must be at least 1, got {n}")
        rng = np.random.default_rng(seed)
        return np.asarray(self.quantile(rng.random(int(n))), dtype=float).reshape(-1)


def ct_cdf(d: TransmutedDistribution, x):
    return d.cdf(x)


def ct_pdf(d: TransmutedDistribution, x):
    return d.pdf(x)


def ct_quantile(d: TransmutedDistribution, u):
    return d.quantile(u)


def ct_sample(d: TransmutedDistribution, n: int, seed=None):
    return d.sample(n, seed)
