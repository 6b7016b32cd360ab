"""Transmutation kernels, constraint sets and the family registry.

Every family in this package is a map from its transmutation parameters to
a quadratic density ``r(t) = c0 + c1*t + c2*t**2`` on ``[0, 1]``.  The
transmuted cdf is then ``F(x) = R(G(x))`` with ``R`` the cubic antiderivative
of ``r`` satisfying ``R(0) = 0``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import ConstructionError

__all__ = [
    "TransmutationKernel",
    "ConstraintSet",
    "FamilySpec",
    "FAMILIES",
    "PARETO",
    "UNMODIFIED_SET",
    "MODIFIED_SET",
    "get_family",
    "kernel_of",
    "kernel_coefficients",
]

NORMALIZATION_TOL = 1e-12


@dataclass(frozen=True)
class TransmutationKernel:
    """Quadratic density on ``[0, 1]`` and its cubic cdf."""

    c0: float
    c1: float
    c2: float

    def __post_init__(self):
        total = self.c0 + self.c1 / 2.0 + self.c2 / 3.0
        if not abs(total - 1.0) <= NORMALIZATION_TOL:
            raise ConstructionError(f"kernel integrates to {total!r}, not 1")

    @property
    def coefficients(self) -> tuple[float, float, float]:
        return (self.c0, self.c1, self.c2)

    def density(self, t):
        t = np.asarray(t, dtype=float)
        return self.c0 + t * (self.c1 + t * self.c2)

    def derivative(self, t):
        return self.c1 + 2.0 * self.c2 * np.asarray(t, dtype=float)

    def cdf(self, t):
        t = np.asarray(t, dtype=float)
        return t * (self.c0 + t * (self.c1 / 2.0 + t * self.c2 / 3.0))

    # Short aliases matching the usual r / R notation.
    r = density
    R = cdf


@dataclass(frozen=True)
class ConstraintSet:
    """Conjunction of closed half-spaces ``a . theta <= b``."""

    inequalities: tuple[tuple[tuple[float, ...], float], ...]
    dim: int

    @classmethod
    def from_bounds(cls, dim: int, *, boxes=(), sums=()) -> "ConstraintSet":
        """Build from per-coordinate boxes ``(i, lo, hi)`` and sum ranges ``(lo, hi)``."""
        rows = []
        for i, lo, hi in boxes:
            e = [0.0] * dim
            e[i] = 1.0
            rows.append((tuple(-v for v in e), -float(lo)))
            rows.append((tuple(e), float(hi)))
        for lo, hi in sums:
            rows.append(((-1.0,) * dim, -float(lo)))
            rows.append(((1.0,) * dim, float(hi)))
        return cls(tuple(rows), dim)

    @property
    def A(self) -> np.ndarray:
        return np.array([a for a, _ in self.inequalities], dtype=float).reshape(-1, self.dim)

    @property
    def b(self) -> np.ndarray:
        return np.array([b for _, b in self.inequalities], dtype=float)

    def slack(self, theta) -> np.ndarray:
        """``b - A theta``; nonnegative entries mean the inequality holds."""
        theta = np.asarray(theta, dtype=float)
        return self.b - self.A @ theta

    def contains(self, theta, tol: float = 1e-12) -> bool:
        theta = np.asarray(theta, dtype=float)
        if theta.shape != (self.dim,):
            raise ConstructionError(f"expected {self.dim} parameters, got {theta.shape}")
        if self.dim == 0:
            return True
        return bool(np.all(self.slack(theta) >= -tol))

    def contains_many(self, thetas, tol: float = 1e-12) -> np.ndarray:
        """Vectorized membership for an ``(n, dim)`` array."""
        thetas = np.asarray(thetas, dtype=float).reshape(-1, self.dim)
        if self.dim == 0:
            return np.ones(len(thetas), dtype=bool)
        return np.all(thetas @ self.A.T <= self.b + tol, axis=1)

    def vertices(self) -> np.ndarray:
        """Corner points of the (bounded) feasible polytope, deduplicated."""
        A, b = self.A, self.b
        pts = []
        for rows in itertools.combinations(range(len(b)), self.dim):
            sub = A[list(rows)]
            if abs(np.linalg.det(sub)) < 1e-12:
                continue
            p = np.linalg.solve(sub, b[list(rows)])
            if self.contains(p, tol=1e-9):
                pts.append(np.round(p, 12) + 0.0)
        if not pts:
            return np.empty((0, self.dim))
        uniq = np.unique(np.array(pts), axis=0)
        if self.dim == 2:
            c = uniq.mean(axis=0)
            order = np.argsort(np.arctan2(uniq[:, 1] - c[1], uniq[:, 0] - c[0]))
            uniq = uniq[order]
        return uniq

    def centroid(self) -> np.ndarray:
        v = self.vertices()
        return v.mean(axis=0) if len(v) else np.empty(0)

    def bounding_box(self) -> tuple[np.ndarray, np.ndarray]:
        v = self.vertices()
        return v.min(axis=0), v.max(axis=0)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """``n`` points uniformly distributed in the set (rejection from the bounding box)."""
        lo, hi = self.bounding_box()
        out = np.empty((0, self.dim))
        while len(out) < n:
            cand = rng.uniform(lo, hi, size=(max(2 * n, 16), self.dim))
            out = np.vstack([out, cand[self.contains_many(cand)]])
        return out[:n]


CoefficientMap = Callable[..., tuple]


@dataclass(frozen=True)
class FamilySpec:
    """One transmutation family: coefficient map plus admissible parameter range."""

    family_id: str
    label: str
    param_names: tuple[str, ...]
    constraints: ConstraintSet
    coefficient_map: CoefficientMap = field(repr=False, compare=False)
    modified: bool = False

    @property
    def arity(self) -> int:
        return len(self.param_names)

    @property
    def k(self) -> int:
        """Number of estimated parameters: the Pareto shape plus the transmutation ones."""
        return 1 + self.arity

    def __str__(self):
        return self.family_id


def _qt(lam):
    return (1.0 + lam, -2.0 * lam, 0.0 * lam)


def _granzotto(l1, l2):
    return (l1, 2.0 * (l2 - l1), 3.0 * (1.0 - l2))


def _alkadim(lam):
    return (1.0 + lam, -4.0 * lam, 3.0 * lam)


def _r18a(l1, l2):
    return (1.0 + l1, 2.0 * (l2 - l1), -3.0 * l2)


def _r18b(l1, l2):
    return (1.0 + l1 + l2, -2.0 * (l1 + 2.0 * l2), 3.0 * l2)


def _r19(lam):
    return (1.0 - lam, 6.0 * lam, -6.0 * lam)


def _r23(lam, eta):
    return (1.0 - lam * (eta - 1.0), 2.0 * lam * (2.0 * eta - 1.0), -3.0 * lam * eta)


def _baseline():
    return (1.0, 0.0, 0.0)


def _interval(lo, hi):
    return ConstraintSet.from_bounds(1, boxes=[(0, lo, hi)])


_box2 = ConstraintSet.from_bounds

FAMILIES: dict[str, FamilySpec] = {
    f.family_id: f
    for f in [
        FamilySpec("QT", "TP", ("lambda",), _interval(-1, 1), _qt),
        FamilySpec("G", "CTP_G", ("lambda1", "lambda2"),
                   _box2(2, boxes=[(0, 0, 1), (1, -1, 1)]), _granzotto),
        FamilySpec("MG", "CTP_MG", ("lambda1", "lambda2"),
                   _box2(2, boxes=[(0, 0, 3), (1, 0, 3)], sums=[(0, 3)]), _granzotto, True),
        FamilySpec("A", "CTP_A", ("lambda",), _interval(-1, 1), _alkadim),
        FamilySpec("MA", "CTP_MA", ("lambda",), _interval(-1, 3), _alkadim, True),
        FamilySpec("R18a", "CTP_R18a", ("lambda1", "lambda2"),
                   _box2(2, boxes=[(0, -1, 1), (1, -1, 1)], sums=[(-2, 1)]), _r18a),
        FamilySpec("MR18a", "CTP_MR18a", ("lambda1", "lambda2"),
                   _box2(2, boxes=[(0, -1, 2), (1, -1, 2)], sums=[(-2, 1)]), _r18a, True),
        FamilySpec("R18b", "CTP_R18b", ("lambda1", "lambda2"),
                   _box2(2, boxes=[(0, -1, 1), (1, 0, 1)]), _r18b),
        FamilySpec("MR18b", "CTP_MR18b", ("lambda1", "lambda2"),
                   _box2(2, boxes=[(0, -2, 1), (1, -2, 1)], sums=[(-1, 2)]), _r18b, True),
        FamilySpec("R19", "CTP_R19", ("lambda",), _interval(-1, 1), _r19),
        FamilySpec("MR19", "CTP_MR19", ("lambda",), _interval(-2, 1), _r19, True),
        FamilySpec("R23", "CTP_R23", ("lambda", "eta"),
                   _box2(2, boxes=[(0, -1, 1), (1, 0, 2)]), _r23),
    ]
}

# Plain baseline with no transmutation parameters; used as a reference model
# in fits and comparison tables.
PARETO = FamilySpec("Pareto", "Pareto", (), ConstraintSet((), 0), _baseline)

UNMODIFIED_SET = ("G", "A", "R18a", "R18b", "R19", "R23", "QT", "Pareto")
MODIFIED_SET = ("MG", "MA", "MR18a", "MR18b", "MR19", "R23", "QT", "Pareto")

_ALIASES = {name.lower(): name for name in FAMILIES}
_ALIASES.update({"pareto": "Pareto", "p": "Pareto", "tp": "QT"})


def get_family(name: str | FamilySpec) -> FamilySpec:
    """Look up a family by id, case-insensitively (``"mg"``, ``"R18a"``, ``"pareto"``...)."""
    if isinstance(name, FamilySpec):
        return name
    key = _ALIASES.get(str(name).strip().lower())
    if key is None:
        raise KeyError(f"unknown family {name!r}")
    return PARETO if key == "Pareto" else FAMILIES[key]


def kernel_coefficients(family, *params):
    """Vectorized coefficient map: arrays of parameters in, ``(c0, c1, c2)`` arrays out."""
    family = get_family(family)
    if len(params) != family.arity:
        raise ConstructionError(
            f"{family.family_id} takes {family.arity} parameter(s), got {len(params)}")
    arrays = [np.asarray(p, dtype=float) for p in params]
    coeffs = family.coefficient_map(*arrays)
    shape = np.broadcast(*arrays).shape if arrays else ()
    return tuple(np.broadcast_to(np.asarray(c, dtype=float), shape) for c in coeffs)


def kernel_of(family, params: Sequence[float]) -> TransmutationKernel:
    family = get_family(family)
    params = tuple(float(p) for p in np.atleast_1d(np.asarray(params, dtype=float)))
    if len(params) != family.arity:
        raise ConstructionError(
            f"{family.family_id} takes {family.arity} parameter(s), got {len(params)}")
    return TransmutationKernel(*(float(c) for c in family.coefficient_map(*params)))
