"""
Sampling by inverting the kernel cdf
====================================

Draws from ``F = R(G)`` come from ``G^{-1}(R^{-1}(U))``.  ``R`` is a cubic,
inverted with a safeguarded Newton iteration.  The empirical cdf of a large
sample should track the model cdf.
"""

# %%
import numpy as np

from cubictrans import Pareto, TransmutedDistribution

d = TransmutedDistribution(Pareto(1.0, 1.5), "MA", (2.5,))
x = d.sample(20_000, seed=3)

# %%
grid = np.quantile(x, np.linspace(0.01, 0.99, 9))
ecdf = np.searchsorted(np.sort(x), grid, side="right") / x.size
for g, e, f in zip(grid, ecdf, d.cdf(grid)):
    print(f"x={g:8.3f}  empirical={e:.4f}  model={f:.4f}")
print("max gap:", float(np.abs(ecdf - d.cdf(grid)).max()))

# %% [markdown]
# The same seed gives the same stream.

# %%
print(np.array_equal(d.sample(5, seed=3), x[:5]))
