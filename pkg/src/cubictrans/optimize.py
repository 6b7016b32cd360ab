"""Log-barrier minimization under linear inequalities with a simplex inner solver."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

__all__ = ["BarrierResult", "initial_simplex", "barrier_minimize", "PENALTY"]

# Objective value reported for infeasible points or vanishing likelihood.
PENALTY = 1e15


@dataclass
class BarrierResult:
    x: np.ndarray
    fun: float
    converged: bool
    nfev: int
    n_outer: int


def initial_simplex(x, feasible, rel_step=0.05, min_step=0.02):
    """Simplex around ``x`` whose vertices all satisfy ``feasible``.

    Each edge is flipped and then halved until it lands inside the region.
    """
    x = np.asarray(x, dtype=float)
    verts = [x.copy()]
    for i in range(len(x)):
        h = max(rel_step * abs(x[i]), min_step)
        for _ in range(60):
            for sign in (1.0, -1.0):
                v = x.copy()
                v[i] += sign * h
                if feasible(v):
                    break
            else:
                h *= 0.5
                continue
            break
        verts.append(v)
    return np.array(verts)


def barrier_minimize(fun, A, b, x_start, *, lower=None, mu0=1e-4, mu_factor=0.1,
                     rtol=1e-8, max_outer=12, xatol=1e-10, fatol=1e-12, maxiter=None):
    """Minimize ``fun`` subject to ``A x <= b`` (and optional hard lower bounds).

    Each outer step minimizes ``fun(x) - mu * sum(log(b - A x))`` with
    Nelder-Mead, warm-started at the previous optimum; ``mu`` shrinks by
    ``mu_factor`` until successive optima of ``fun`` agree to ``rtol``.
    """
    A = np.asarray(A, dtype=float).reshape(-1, len(x_start))
    b = np.asarray(b, dtype=float)
    lower = None if lower is None else np.asarray(lower, dtype=float)
    dim = len(x_start)
    maxiter = maxiter or 1500 * dim

    def feasible(z):
        if lower is not None and np.any(z < lower):
            return False
        return len(b) == 0 or bool(np.all(b - A @ z > 0))

    nfev = 0
    x = np.asarray(x_start, dtype=float)
    prev = None
    converged = False
    k = 0
    for k in range(1, max_outer + 1):
        mu = mu0 * mu_factor ** (k - 1)

        def penalized(z, mu=mu):
            if not feasible(z):
                return PENALTY
            f = fun(z)
            if len(b):
                f = f - mu * np.sum(np.log(b - A @ z))
            return f

        res = minimize(penalized, x, method="Nelder-Mead",
                       options={"initial_simplex": initial_simplex(x, feasible),
                                "xatol": xatol, "fatol": fatol,
                                "maxiter": maxiter, "maxfev": maxiter})
        nfev += res.nfev
        if feasible(res.x) and res.fun < PENALTY:
            x = res.x
        fx = float(fun(x))
        if prev is not None and abs(fx - prev) <= rtol * max(1.0, abs(prev)):
            converged = True
            break
        prev = fx
    return BarrierResult(x, float(fun(x)), converged, nfev, k)
