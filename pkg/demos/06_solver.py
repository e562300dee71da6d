# %% [markdown]
# # Numeric search for equigeodesic vectors
#
# The solver looks for unit-norm zeros of a generated system with
# Levenberg-Marquardt from random starting points, then groups the converged
# points by their module support.  On spaces whose equigeodesic vectors are
# all trivial, every converged point has single-module support.

# %%
from collections import Counter

from equigeodesic import build_space, exhaustiveness_report, list_families
from equigeodesic.solver import solve_space

for family, params in [("wallach-u3", ()), ("sphere-u", (2,)), ("sphere-sp", (1,))]:
    config = build_space(family, params)
    result = solve_space(config, restarts=200, seed=0)
    supports = Counter(tuple(sorted(s.support)) for s in result.solutions)
    print(f"{config.name:<14} converged {result.converged_count}/200, distinct {len(result.solutions)}")
    print("   supports:", dict(supports), " multi-module:", len(result.multi_module()))

# %% [markdown]
# On V2(R^5) there are genuinely mixed solutions.  The exhaustiveness report
# matches each one against the catalog families.

# %%
config = build_space("stiefel-v2", (5,))
result = solve_space(config, restarts=200, seed=0)
report = exhaustiveness_report(config, result, list_families("stiefel-v2(5)"))
print("solutions:", report["solutions"], "unmatched:", len(report["unmatched"]), "recheck:", report["recheck"])
print("supports left unmatched:", Counter(map(tuple, report["unmatched_supports"])))
