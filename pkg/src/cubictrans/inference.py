"""Maximum likelihood fitting of transmuted Pareto models and their comparison.

The Pareto scale ``x0`` is always estimated by the sample minimum; the shape
``alpha`` and the transmutation parameters are found by a multi-start
log-barrier search over the family's constraint set.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .baseline import Pareto
from .errors import DomainError
from .kernels import FamilySpec, get_family, kernel_coefficients
from .optimize import PENALTY, barrier_minimize
from scipy.optimize import root
from .transmute import TransmutedDistribution

__all__ = [
    "Dataset",
    "FitConfig",
    "FitResult",
    "ComparisonTable",
    "log_likelihood",
    "score",
    "pareto_shape_mle",
    "fit",
    "information_criteria",
    "compare",
    "fitted_distribution",
    "CRITERIA",
]

ALPHA_FLOOR = 1e-8
CRITERIA = ("neg_log_lik", "aic", "aicc", "bic")


@dataclass(frozen=True)
class Dataset:
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).reshape(-1)
        if v.size < 1:
            raise DomainError("dataset is empty")
        if not np.all(np.isfinite(v)) or np.any(v <= 0):
            raise DomainError("observations must be positive and finite")
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return int(self.values.size)

    @property
    def x0(self) -> float:
        return float(self.values.min())

    @property
    def sum_log(self) -> float:
        return float(np.log(self.values).sum())


def _as_dataset(data) -> Dataset:
    return data if isinstance(data, Dataset) else Dataset(np.asarray(data, dtype=float))


def pareto_shape_mle(data) -> float:
    """Closed-form shape estimate ``n / sum(log(x_i / x0))``."""
    data = _as_dataset(data)
    denom = float(np.log(data.values / data.x0).sum())
    if denom <= 0:
        raise DomainError("shape is not identifiable: all observations are equal")
    return data.n / denom


def log_likelihood(family, data, alpha: float, params: Sequence[float] = (),
                   x0: float | None = None) -> float:
    """Log-likelihood of a transmuted Pareto model; ``-inf`` if some ``r(G(x_i)) <= 0``."""
    family = get_family(family)
    data = _as_dataset(data)
    if not alpha > 0:
        raise DomainError(f"Pareto shape must be positive, got {alpha}")
    x0 = data.x0 if x0 is None else float(x0)
    if np.any(data.values < x0):
        raise DomainError("all observations must be at least x0")
    n = data.n
    ll = n * math.log(alpha) + n * alpha * math.log(x0) - (alpha + 1.0) * data.sum_log
    if family.arity == 0:
        return ll
    c0, c1, c2 = (float(c) for c in kernel_coefficients(family, *params))
    G = 1.0 - (x0 / data.values) ** alpha
    r = c0 + G * (c1 + G * c2)
    if np.any(r <= 0):
        return -math.inf
    return ll + float(np.log(r).sum())


def score(family, data, alpha: float, params: Sequence[float] = (),
           x0: float | None = None) -> np.ndarray:
    """Gradient of :func:`log_likelihood` with respect to ``(alpha, *params)``.

    Requires ``r(G(x_i)) > 0`` for every observation.
    """
    family = get_family(family)
    data = _as_dataset(data)
    x0 = data.x0 if x0 is None else float(x0)
    L = np.log(x0 / data.values)
    g_alpha = data.n / alpha + L.sum()
    if family.arity == 0:
        return np.array([g_alpha])
    params = np.asarray(params, dtype=float)
    c0, c1, c2 = (float(c) for c in kernel_coefficients(family, *params))
    s = np.exp(alpha * L)
    G = 1.0 - s
    r = c0 + G * (c1 + G * c2)
    g_alpha += float(np.sum((c1 + 2 * c2 * G) * (-s * L) / r))
    # Coefficient maps are at most bilinear, so central differences are exact.
    grads = [g_alpha]
    for j in range(family.arity):
        e = np.zeros_like(params)
        e[j] = 0.5
        hi = np.array([float(c) for c in kernel_coefficients(family, *(params + e))])
        lo = np.array([float(c) for c in kernel_coefficients(family, *(params - e))])
        d0, d1, d2 = hi - lo
        grads.append(float(np.sum((d0 + G * (d1 + G * d2)) / r)))
    return np.array(grads)


def information_criteria(neg_log_lik: float, k: int, n: int) -> tuple[float, float, float]:
    """AIC, corrected AIC and BIC from a minimized negative log-likelihood."""
    if n <= k + 1:
        raise DomainError(f"AICC needs n > k + 1 (n={n}, k={k})")
    aic = 2.0 * neg_log_lik + 2.0 * k
    aicc = aic + 2.0 * k * (k + 1) / (n - (k + 1))
    bic = 2.0 * neg_log_lik + k * math.log(n)
    return aic, aicc, bic


@dataclass(frozen=True)
class FitConfig:
    starts: int = 16
    start_fraction: float = 0.6
    alpha_multipliers: tuple[float, ...] = (0.5, 1.0, 2.0)
    mu0: float = 1e-4
    mu_factor: float = 0.1
    outer_rtol: float = 1e-8
    max_outer: int = 12
    snap_tol: float = 1e-3
    snap_loss: float = 1e-6


@dataclass(frozen=True)
class FitResult:
    family: str
    x0: float
    alpha: float
    params: tuple[float, ...]
    neg_log_lik: float
    aic: float
    aicc: float
    bic: float
    k: int
    n: int
    converged: bool
    boundary: tuple[bool, ...]
    nfev: int = field(default=0, compare=False)

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("nfev")
        d["params"] = list(self.params)
        d["boundary"] = list(self.boundary)
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def fitted_distribution(result: FitResult) -> TransmutedDistribution:
    """The fitted model as a distribution object (no validity check)."""
    return TransmutedDistribution.unchecked(Pareto(result.x0, result.alpha),
                                            result.family, result.params)


def _parameter_starts(family: FamilySpec, fraction: float) -> list[np.ndarray]:
    cs = family.constraints
    if family.arity == 0:
        return [np.empty(0)]
    c = cs.centroid()
    pts = [c] + [c + fraction * (v - c) for v in cs.vertices()]
    uniq = []
    for p in pts:
        if not any(np.allclose(p, q) for q in uniq):
            uniq.append(p)
    return uniq


def _snap(theta, cs, objective_of_params, config: FitConfig):
    """Move near-active constraints exactly onto their boundary when that costs nothing."""
    if cs.dim == 0:
        return theta
    A, b = cs.A, cs.b
    dist = (b - A @ theta) / np.linalg.norm(A, axis=1)
    active = np.flatnonzero(dist < config.snap_tol)
    if not len(active):
        return theta
    base = objective_of_params(theta)

    def project(rows):
        Aa = A[rows]
        resid = Aa @ theta - b[rows]
        step = Aa.T @ np.linalg.lstsq(Aa @ Aa.T, resid, rcond=None)[0]
        return theta - step

    candidates = [list(active)] + [[j] for j in active] if len(active) > 1 else [list(active)]
    for rows in candidates:
        p = project(rows)
        if cs.contains(p, tol=1e-12) and objective_of_params(p) <= base + config.snap_loss:
            return p
    return theta


def _polish(family, data, alpha, theta, config: FitConfig):
    """Solve the score equations on the face of the constraint set holding ``theta``.

    Derivative-free search stalls where the likelihood is flat; a root of the
    exact gradient pins the estimate down to rounding error.  The refined point
    is kept only if it stays feasible and does not lower the likelihood.
    """
    cs = family.constraints
    z = np.r_[alpha, theta]
    if cs.dim:
        slack = cs.b - cs.A @ theta
        Aa = cs.A[slack <= 1e-12]
        basis = np.eye(cs.dim)
        if len(Aa):
            _, sv, vt = np.linalg.svd(Aa)
            rank = int(np.sum(sv > 1e-12))
            basis = vt[rank:].T
        N = np.zeros((1 + cs.dim, 1 + basis.shape[1]))
        N[0, 0] = 1.0
        N[1:, 1:] = basis
    else:
        N = np.eye(1)

    def reduced(u):
        w = z + N @ u
        if w[0] <= 0 or not cs.contains(w[1:]) or \
                not np.isfinite(log_likelihood(family, data, w[0], w[1:])):
            return np.full(N.shape[1], 1e10)
        return N.T @ score(family, data, w[0], w[1:])

    sol = root(reduced, np.zeros(N.shape[1]), method="hybr", options={"xtol": 1e-13})
    # hybr can report slow progress once it is already at the root; judge by the residual
    if not np.all(np.abs(sol.fun) < 1e-8):
        return z
    w = z + N @ sol.x
    if w[0] <= 0 or not cs.contains(w[1:], tol=1e-12):
        return z
    before = log_likelihood(family, data, z[0], z[1:])
    after = log_likelihood(family, data, w[0], w[1:])
    return w if after >= before - 1e-12 else z


def _boundary_flags(theta, cs, tol) -> tuple[bool, ...]:
    if cs.dim == 0:
        return ()
    A, b = cs.A, cs.b
    near = (b - A @ theta) / np.linalg.norm(A, axis=1) < tol
    return tuple(bool(np.any(near & (A[:, i] != 0))) for i in range(cs.dim))


def fit(family, data, config: FitConfig | None = None) -> FitResult:
    """Maximize the likelihood over ``alpha > 0`` and the family's constraint set."""
    config = config or FitConfig()
    family = get_family(family)
    data = _as_dataset(data)
    k, n = family.k, data.n
    if n < k + 2:
        raise DomainError(f"need at least {k + 2} observations to fit {family.family_id}, got {n}")
    alpha_p = pareto_shape_mle(data)
    x0 = data.x0
    cs = family.constraints

    def objective(z):
        ll = log_likelihood(family, data, z[0], z[1:], x0=x0)
        return -ll if np.isfinite(ll) else PENALTY

    A = np.hstack([np.zeros((len(cs.b), 1)), cs.A]) if family.arity else np.zeros((0, 1))
    lower = np.r_[ALPHA_FLOOR, np.full(family.arity, -np.inf)]

    starts = [np.r_[m * alpha_p, p]
              for p in _parameter_starts(family, config.start_fraction)
              for m in config.alpha_multipliers][: max(1, config.starts)]

    best = None
    nfev = 0
    for z0 in starts:
        res = barrier_minimize(objective, A, cs.b, z0, lower=lower, mu0=config.mu0,
                               mu_factor=config.mu_factor, rtol=config.outer_rtol,
                               max_outer=config.max_outer)
        nfev += res.nfev
        # Strict comparison keeps the earliest start on ties.
        if best is None or res.fun < best.fun:
            best = res

    alpha_hat = float(best.x[0])
    theta = np.asarray(best.x[1:], dtype=float)
    theta = _snap(theta, cs, lambda p: objective(np.r_[alpha_hat, p]), config)
    if best.fun < PENALTY:
        z = _polish(family, data, alpha_hat, theta, config)
        alpha_hat, theta = float(z[0]), z[1:]
    nll = float(objective(np.r_[alpha_hat, theta]))
    aic, aicc, bic = information_criteria(nll, k, n)
    return FitResult(
        family=family.family_id, x0=x0, alpha=alpha_hat,
        params=tuple(float(t) for t in theta), neg_log_lik=nll,
        aic=aic, aicc=aicc, bic=bic, k=k, n=n,
        converged=bool(best.converged and nll < PENALTY),
        boundary=_boundary_flags(theta, cs, config.snap_tol), nfev=nfev)


def _min_ranks(values: Sequence[float], decimals: int) -> list[int]:
    v = np.round(np.asarray(values, dtype=float), decimals)
    return [int(np.sum(v < x)) + 1 for x in v]


@dataclass(frozen=True)
class ComparisonTable:
    """Fitted models ordered by negative log-likelihood, with per-criterion ranks.

    Values equal after rounding to ``tie_decimals`` share the smaller rank.
    """

    rows: tuple[FitResult, ...]
    tie_decimals: int = 3

    def ranks(self, criterion: str) -> list[int]:
        return _min_ranks([getattr(r, criterion) for r in self.rows], self.tie_decimals)

    def row(self, family) -> FitResult:
        fid = get_family(family).family_id
        for r in self.rows:
            if r.family == fid:
                return r
        raise KeyError(fid)

    def rank_of(self, family, criterion: str = "neg_log_lik") -> int:
        fid = get_family(family).family_id
        idx = [r.family for r in self.rows].index(fid)
        return self.ranks(criterion)[idx]

    def to_tsv(self) -> str:
        header = ["family", "negloglik", "aic", "aicc", "bic",
                  "rank_negloglik", "rank_aic", "rank_aicc", "rank_bic"]
        ranks = [self.ranks(c) for c in CRITERIA]
        lines = ["\t".join(header)]
        for i, r in enumerate(self.rows):
            vals = [f"{getattr(r, c):.6g}" for c in CRITERIA]
            lines.append("\t".join([r.family, *vals, *(str(rk[i]) for rk in ranks)]))
        return "\n".join(lines) + "\n"


def compare(data, families: Iterable, config: FitConfig | None = None,
            tie_decimals: int = 3) -> ComparisonTable:
    """Fit every family and rank them (smaller criterion is better)."""
    data = _as_dataset(data)
    fits = [fit(f, data, config) for f in families]
    order = sorted(range(len(fits)), key=lambda i: (fits[i].neg_log_lik, i))
    return ComparisonTable(tuple(fits[i] for i in order), tie_decimals)
