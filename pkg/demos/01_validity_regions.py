"""
Where is a transmuted family a real distribution?
=================================================

The kernel ``r(t) = c0 + c1 t + c2 t^2`` must be non-negative on [0, 1].
This walk-through scans the two-parameter G family on a grid,
draws the valid region as text, and shows that the classical range lets
through a kernel that dips below zero.
"""

# %%
import numpy as np

from cubictrans import Axis, get_family, kernel_of, region_scan
from cubictrans.validity import kernel_is_valid

# %% [markdown]
# A coarse scan so the map fits on a terminal. ``#`` marks valid kernels,
# ``+`` marks points inside the corrected (modified) range -- they are all valid.

# %%
scan = region_scan("G", Axis(-0.5, 4.5, 0.25), Axis(-3.5, 3.5, 0.25))
xs, ys = scan.coordinates
inside = get_family("MG").constraints.contains_many(scan.points()).reshape(scan.cells.shape)

for j in range(len(ys) - 1, -1, -1):
    row = "".join("+" if inside[i, j] else ("#" if scan.cells[i, j] else ".")
                  for i in range(len(xs)))
    print(f"{ys[j]:5.2f} {row}")
print("      lambda1 from", xs[0], "to", xs[-1])

# %% [markdown]
# The classical constraint set for G contains (0, -0.5), yet that kernel is
# negative near t = 0.

# %%
k = kernel_of("G", (0.0, -0.5))
cert = kernel_is_valid(k)
print("in classical range:", get_family("G").constraints.contains(np.array([0.0, -0.5])))
print(f"valid kernel: {cert.valid}, minimum {cert.r_min:.4f} at t = {cert.t_min:.4f}")

# %% [markdown]
# Optional picture, if matplotlib is around.

# %%
try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fine = region_scan("G", Axis.parse("-0.5:4.5:0.02"), Axis.parse("-3.5:3.5:0.02"))
    fx, fy = fine.coordinates
    plt.pcolormesh(fx, fy, fine.cells.T, cmap="Blues", shading="auto")
    plt.xlabel("lambda1"); plt.ylabel("lambda2")
    plt.title("valid G kernels")
    plt.savefig("validity_g.png", dpi=120)
    print("wrote validity_g.png")
