"""Certification that a kernel is a genuine density, and parameter-range scans.

The check is exact up to floating point: a quadratic on ``[0, 1]`` attains
its minimum either at an endpoint or at the vertex ``-c1 / (2 c2)`` when the
parabola opens upwards.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import ConstructionError, DomainError
from .kernels import TransmutationKernel, get_family, kernel_coefficients

__all__ = [
    "VALIDITY_TOL",
    "KernelCertificate",
    "kernel_minimum",
    "kernel_is_valid",
    "in_range",
    "Axis",
    "RegionScan",
    "region_scan",
    "negative_intervals",
]

# Boundary kernels (minimum exactly 0) must pass despite rounding at the vertex.
VALIDITY_TOL = 1e-12


@dataclass(frozen=True)
class KernelCertificate:
    valid: bool
    t_min: float
    r_min: float

    def __bool__(self):
        return self.valid


def kernel_minimum(c0, c1, c2):
    """Minimizer and minimum of ``c0 + c1 t + c2 t^2`` over ``[0, 1]``, elementwise."""
    c0, c1, c2 = np.broadcast_arrays(*(np.asarray(c, dtype=float) for c in (c0, c1, c2)))
    r0 = c0
    r1 = c0 + c1 + c2
    t_min = np.where(r1 < r0, 1.0, 0.0)
    r_min = np.minimum(r0, r1)
    with np.errstate(divide="ignore", invalid="ignore"):
        tv = np.where(c2 > 0, -c1 / (2.0 * np.where(c2 > 0, c2, 1.0)), -1.0)
    inside = (c2 > 0) & (tv > 0.0) & (tv < 1.0)
    rv = c0 + tv * (c1 + tv * c2)
    use_vertex = inside & (rv < r_min)
    t_min = np.where(use_vertex, tv, t_min)
    r_min = np.where(use_vertex, rv, r_min)
    return t_min, r_min


def kernel_is_valid(kernel: TransmutationKernel) -> KernelCertificate:
    """Decide whether ``r(t) >= 0`` on ``[0, 1]`` and report where the minimum sits."""
    t_min, r_min = kernel_minimum(kernel.c0, kernel.c1, kernel.c2)
    r_min = float(r_min)
    return KernelCertificate(r_min >= -VALIDITY_TOL, float(t_min), r_min)


def in_range(family, params: Sequence[float]) -> bool:
    """Membership of ``params`` in the family's closed constraint set."""
    family = get_family(family)
    params = np.atleast_1d(np.asarray(params, dtype=float))
    if params.shape != (family.arity,):
        raise ConstructionError(
            f"{family.family_id} takes {family.arity} parameter(s), got {params.size}")
    return family.constraints.contains(params)


@dataclass(frozen=True)
class Axis:
    """Inclusive grid ``lo, lo + step, ..., hi``."""

    lo: float
    hi: float
    step: float

    def __post_init__(self):
        if not (self.step > 0 and np.isfinite(self.step)):
            raise DomainError(f"grid step must be positive, got {self.step}")
        if not (np.isfinite(self.lo) and np.isfinite(self.hi)) or self.hi < self.lo:
            raise DomainError(f"degenerate grid [{self.lo}, {self.hi}]")

    @classmethod
    def parse(cls, text: str) -> "Axis":
        """Parse ``"lo:hi:step"``."""
        parts = text.split(":")
        if len(parts) != 3:
            raise DomainError(f"grid spec must be lo:hi:step, got {text!r}")
        try:
            lo, hi, step = (float(p) for p in parts)
        except ValueError:
            raise DomainError(f"non-numeric grid spec {text!r}") from None
        return cls(lo, hi, step)

    @property
    def values(self) -> np.ndarray:
        n = int(np.floor((self.hi - self.lo) / self.step + 1e-9)) + 1
        # Rounding strips the accumulated 0.1-step noise (e.g. 0.30000000000000004).
        return np.round(self.lo + self.step * np.arange(n), 10) + 0.0

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class RegionScan:
    """Validity of the kernel over a parameter grid (``cells[i, j]`` for axis1[i], axis2[j])."""

    family_id: str
    axis1: Axis
    axis2: Axis | None
    cells: np.ndarray
    fixed: tuple = ()

    @property
    def coordinates(self) -> tuple[np.ndarray, np.ndarray | None]:
        return self.axis1.values, (self.axis2.values if self.axis2 is not None else None)

    def points(self) -> np.ndarray:
        """Row-major list of scanned parameter points."""
        x, y = self.coordinates
        if y is None:
            return x[:, None]
        X, Y = np.meshgrid(x, y, indexing="ij")
        return np.column_stack([X.ravel(), Y.ravel()])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["param1", "param2", "valid"])
        x, y = self.coordinates
        if y is None:
            for xi, ok in zip(x, self.cells):
                w.writerow([f"{xi:.6g}", "", int(ok)])
        else:
            for i, xi in enumerate(x):
                for j, yj in enumerate(y):
                    w.writerow([f"{xi:.6g}", f"{yj:.6g}", int(self.cells[i, j])])
        return buf.getvalue()


def region_scan(family, axis1: Axis, axis2: Axis | None = None,
                fixed: dict[int, float] | None = None) -> RegionScan:
    """Evaluate kernel validity on a rectangular grid of parameter values.

    ``fixed`` pins parameters that are not scanned, e.g. ``{1: 2.0}`` scans
    only the first parameter of a two-parameter family.
    """
    family = get_family(family)
    fixed = dict(fixed or {})
    bad = [i for i in fixed if not 0 <= i < family.arity]
    if bad:
        raise DomainError(f"{family.family_id} has no parameter index {bad[0]}")
    free = [i for i in range(family.arity) if i not in fixed]
    axes = [a for a in (axis1, axis2) if a is not None]
    if len(free) != len(axes):
        raise DomainError(
            f"{family.family_id}: {len(free)} free parameter(s) but {len(axes)} axis/axes given")
    grids = np.meshgrid(*(a.values for a in axes), indexing="ij")
    params = [None] * family.arity
    for i, g in zip(free, grids):
        params[i] = g
    for i, v in fixed.items():
        params[i] = np.full(grids[0].shape, float(v))
    _, r_min = kernel_minimum(*kernel_coefficients(family, *params))
    return RegionScan(family.family_id, axis1, axis2, r_min >= -VALIDITY_TOL,
                      tuple(sorted(fixed.items())))


def negative_intervals(func: Callable, lo: float, hi: float, n: int = 2000,
                       tol: float = 1e-10) -> list[tuple[float, float]]:
    """Sub-intervals of ``[lo, hi]`` where ``func`` is negative.

    Sign changes are located on an ``n``-point grid and refined by bisection.
    """
    x = np.linspace(lo, hi, n)
    neg = np.asarray(func(x)) < 0

    def refine(a, b):
        fa_neg = func(a) < 0
        while b - a > tol * max(1.0, abs(a)):
            m = 0.5 * (a + b)
            if (func(m) < 0) == fa_neg:
                a = m
            else:
                b = m
        return 0.5 * (a + b)

    out = []
    start = lo if neg[0] else None
    for i in range(1, n):
        if neg[i] and not neg[i - 1]:
            start = refine(x[i - 1], x[i])
        elif not neg[i] and neg[i - 1]:
            out.append((start, refine(x[i - 1], x[i])))
            start = None
    if start is not None:
        out.append((start, hi))
    return out
