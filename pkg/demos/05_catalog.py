# %% [markdown]
# # The solution-family catalog
#
# Families are stored as JSON: free parameters, rational expressions for the
# dependent coefficients, nonvanishing constraints, the metric partition and
# the expected classification.

# %%
import numpy as np

from equigeodesic import instantiate, list_families, verify_family

families = list_families("wallach-so(1,3,2)")
for fam in families:
    print(fam.id, fam.claim, "free:", ", ".join(fam.free_params))
    for var, expr in fam.assignments.items():
        if str(expr) not in (var, "0"):
            print(f"    {var} = {expr}")

# %% [markdown]
# Instantiating a family substitutes parameter values; constraints guard the
# denominators.

# %%
fam = families[1]
rng = np.random.default_rng(1)
params = {p: float(rng.uniform(0.5, 2.0)) for p in fam.free_params}
print(instantiate(fam, params).as_dict())

# %% [markdown]
# `verify_family` samples the family, checks the cross residuals, checks the
# geodesic equation for random metrics compatible with the partition, and
# compares the computed classification with the recorded one.

# %%
for space, metric in [("stiefel-v2(6)", "generic"), ("stiefel-v2(6)", "einstein"), ("wallach-sp3", "generic")]:
    for fam in list_families(space, metric):
        print(verify_family(fam.config, fam, samples=20, seed=0).summary())

# %% [markdown]
# The 42 Jensen-metric families on V4(R^6) verify in a few seconds.

# %%
jensen = list_families("stiefel-v1k(3,2)", "jensen")
reports = [verify_family(f.config, f, samples=20) for f in jensen]
print(sum(r.passed for r in reports), "of", len(reports), "pass")
