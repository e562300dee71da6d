# %% [markdown]
# # Equigeodesic residuals and bilinear systems
#
# A vector X is geodesic for the metric Lambda when `[X, Lambda X]_m = 0`.
# Because Lambda is constant on each module, this residual expands as a sum
# over module pairs weighted by `lambda_j - lambda_i`, so X is equigeodesic
# (geodesic for every invariant metric) exactly when every cross residual
# `[X_i, X_j]_m` vanishes.

# %%
import numpy as np

from equigeodesic import MetricSpec, build_space, compare_systems, cross_residuals, equigeodesic_residual, generate_system
from equigeodesic.catalog import printed_systems

w6 = build_space("wallach-u3")
X = w6.vector(a12=1.0, b13=1.0)
print(equigeodesic_residual(w6, MetricSpec((1.0, 2.0, 3.0)), X).as_dict())
for pair, res in cross_residuals(w6, X).items():
    print(pair, np.round(res.values, 12))

# %% [markdown]
# The identity behind the expansion, checked at a random point.

# %%
rng = np.random.default_rng(0)
x = rng.standard_normal(w6.dim_m)
lam = np.array([0.7, 1.9, 3.1])
idx = {lab: i for i, lab in enumerate(w6.module_labels)}
expanded = sum((lam[idx[b]] - lam[idx[a]]) * r.values for (a, b), r in cross_residuals(w6, x).items())
print(np.abs(equigeodesic_residual(w6, MetricSpec(tuple(lam)), x).values - expanded).max())

# %% [markdown]
# `generate_system` reads the equations straight off the structure constants,
# normalised to integer coefficients.

# %%
system = generate_system(w6)
for eq in system.equations:
    print(eq.render(system.variables))

# %% [markdown]
# With a coarser metric-class partition only pairs in different classes
# contribute.  The Jensen metrics on V4(R^6) have classes {so(3), m12} and
# {m13, m23}.

# %%
v46 = build_space("stiefel-v1k", (3, 2))
jensen = generate_system(v46, "so(3),m12|m13,m23")
print(len(jensen), "equations")
for eq in jensen.equations:
    print(" ", eq.render(jensen.variables))

# %% [markdown]
# Generated systems can be compared with hand-written ones up to sign and
# scale.  The reference list for V4(R^6) has one sign misprint, which the
# comparison pinpoints.

# %%
ref = printed_systems()["stiefel-v1k(3,2)-jensen"]
cmp = compare_systems(v46, jensen, ref["equations"], {})
print("equal:", cmp.equal)
print("reference only:", cmp.missing)
print("generated only:", cmp.extra)
