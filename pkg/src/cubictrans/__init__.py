"""Quadratic and cubic transmutation of probability distributions.

Families are built as ``F(x) = R(G(x))`` for a baseline cdf ``G`` and a
cubic ``R`` on ``[0, 1]``.  The package covers construction, validity
certification of parameter ranges, reparameterizations between families,
sampling, constrained maximum likelihood for a Pareto baseline, and
information-criterion comparison.
"""

from .baseline import BaselineDistribution, Pareto, pareto_cdf, pareto_pdf, pareto_quantile
from .equivalence import (
    MixtureWeights,
    embed_a_in_mg,
    embed_r19_in_mg,
    map_mg_to_mr18a,
    map_mg_to_mr18b,
    map_mr18a_to_mg,
    map_mr18b_to_mg,
    order_stat_mixture_cdf,
    two_point_mixture_cdf,
    weights_to_mg,
)
from .errors import ConstructionError, DomainError
from .inference import (
    ComparisonTable,
    Dataset,
    FitConfig,
    FitResult,
    compare,
    fit,
    fitted_distribution,
    information_criteria,
    log_likelihood,
    pareto_shape_mle,
    score,
)
from .kernels import (
    FAMILIES,
    MODIFIED_SET,
    PARETO,
    UNMODIFIED_SET,
    ConstraintSet,
    FamilySpec,
    TransmutationKernel,
    get_family,
    kernel_coefficients,
    kernel_of,
)
from .transmute import TransmutedDistribution, ct_cdf, ct_pdf, ct_quantile, ct_sample
from .validity import (
    Axis,
    RegionScan,
    in_range,
    kernel_is_valid,
    kernel_minimum,
    negative_intervals,
    region_scan,
)

__version__ = "0.1.0"
