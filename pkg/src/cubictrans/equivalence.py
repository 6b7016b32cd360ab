"""Order-statistics mixtures and reparameterizations between families.

The three-draw mixture gives the ``MG`` cdf independently of any
kernel algebra, which makes it a useful cross-check for the polynomial form.
The maps below move parameter vectors between families that describe the
same set of distributions; each one refuses inputs outside the range where
the correspondence actually holds.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import DomainError
from .kernels import get_family

__all__ = [
    "MixtureWeights",
    "order_stat_cdf",
    "order_stat_mixture_cdf",
    "two_point_mixture_cdf",
    "weights_to_mg",
    "map_mr18a_to_mg",
    "map_mg_to_mr18a",
    "map_mr18b_to_mg",
    "map_mg_to_mr18b",
    "embed_a_in_mg",
    "embed_r19_in_mg",
]

WEIGHT_TOL = 1e-12


@dataclass(frozen=True)
class MixtureWeights:
    """Probabilities of picking the minimum, median and maximum of three draws."""

    pi1: float
    pi2: float
    pi3: float

    def __post_init__(self):
        w = self.as_array()
        if np.any(w < -WEIGHT_TOL) or np.any(w > 1 + WEIGHT_TOL):
            raise DomainError(f"mixture weights must lie in [0, 1], got {tuple(w)}")
        if abs(w.sum() - 1.0) > WEIGHT_TOL:
            raise DomainError(f"mixture weights must sum to 1, got {w.sum()!r}")

    def as_array(self) -> np.ndarray:
        return np.array([self.pi1, self.pi2, self.pi3], dtype=float)


def order_stat_cdf(G, i: int, m: int = 3):
    """``P(X_(i:m) <= x)`` given ``G = G(x)``, by the binomial tail sum."""
    G = np.asarray(G, dtype=float)
    return sum(comb(m, r) * G**r * (1.0 - G) ** (m - r) for r in range(i, m + 1))


def _check_unit(G):
    G = np.asarray(G, dtype=float)
    if np.any((G < 0) | (G > 1)):
        raise DomainError("baseline cdf values must lie in [0, 1]")
    return G


def order_stat_mixture_cdf(G_vals, w: MixtureWeights):
    """cdf of the mixture that returns the i-th smallest of three draws with probability ``w_i``."""
    G = _check_unit(G_vals)
    return sum(p * order_stat_cdf(G, i, 3) for i, p in enumerate(w.as_array(), start=1))


def two_point_mixture_cdf(G_vals, pi: float):
    """Minimum of two draws with probability ``pi``, maximum otherwise.

    Equals the quadratic transmutation with ``lambda = 2 pi - 1``.
    """
    if not 0.0 <= pi <= 1.0:
        raise DomainError(f"mixture probability must lie in [0, 1], got {pi}")
    G = _check_unit(G_vals)
    return pi * order_stat_cdf(G, 1, 2) + (1.0 - pi) * order_stat_cdf(G, 2, 2)


def weights_to_mg(w: MixtureWeights) -> tuple[float, float]:
    return (3.0 * w.pi1, 3.0 * w.pi2)


def _require(family_id, params):
    fam = get_family(family_id)
    params = tuple(float(p) for p in params)
    if len(params) != fam.arity or not fam.constraints.contains(np.array(params)):
        raise DomainError(f"{params} is outside the {fam.family_id} parameter range")
    return params


def map_mr18a_to_mg(params) -> tuple[float, float]:
    l1, l2 = _require("MR18a", params)
    return (l1 + 1.0, l2 + 1.0)


def map_mg_to_mr18a(params) -> tuple[float, float]:
    l1, l2 = _require("MG", params)
    return (l1 - 1.0, l2 - 1.0)


def map_mr18b_to_mg(params) -> tuple[float, float]:
    l1, l2 = _require("MR18b", params)
    return (1.0 + l1 + l2, 1.0 - l2)


def map_mg_to_mr18b(params) -> tuple[float, float]:
    l1, l2 = _require("MG", params)
    return (l1 + l2 - 2.0, 1.0 - l2)


def embed_a_in_mg(lam: float) -> tuple[float, float]:
    """``A(lambda)`` as an ``MG`` member; only established for ``-1 <= lambda <= 1``."""
    if not -1.0 <= lam <= 1.0:
        raise DomainError(f"A-to-MG embedding holds for lambda in [-1, 1], got {lam}")
    return (1.0 + lam, 1.0 - lam)


def embed_r19_in_mg(lam: float) -> tuple[float, float]:
    """``R19(lambda)`` as an ``MG`` member; only established for ``-1/2 <= lambda <= 1``."""
    if not -0.5 <= lam <= 1.0:
        raise DomainError(f"R19-to-MG embedding holds for lambda in [-0.5, 1], got {lam}")
    return (1.0 - lam, 1.0 + 2.0 * lam)
