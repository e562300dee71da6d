# %% [markdown]
# # Homogeneous spaces and their isotropy modules
#
# `build_space` assembles one of seven families.  Each configuration knows the
# isotropy subalgebra `h`, the B-orthogonal complement `m`, and how `m`
# splits into labelled modules.

# %%
from equigeodesic import build_space, metric_presets, validate_wallach

for family, params in [
    ("wallach-so", (1, 3, 2)),
    ("stiefel-v2", (5,)),
    ("stiefel-v1k", (3, 2)),
    ("wallach-u3", ()),
    ("wallach-sp3", ()),
    ("sphere-u", (2,)),
    ("sphere-sp", (1,)),
]:
    config = build_space(family, params)
    dims = {label: len(pos) for label, pos in config.modules}
    print(f"{config.name:<20} dim m = {config.dim_m:2d}  modules {dims}")

# %% [markdown]
# Coefficient vectors are addressed by the variable names used throughout
# the package, for instance `a12, b12` on the Wallach space W6.

# %%
w6 = build_space("wallach-u3")
print(w6.variables)
X = w6.vector(a12=1.0, b13=2.0)
print(X.module_norms())

# %% [markdown]
# Three-module spaces can be checked for the generalized Wallach relations
# `[m_i, m_i] in h` and `[m_i, m_j] in m_k`.

# %%
print(validate_wallach(w6).summary())

# %% [markdown]
# Named invariant metrics come with their metric-class partitions.  The
# Einstein metric on V2(R^n) has the form (1, l, l) with an exact rational l.

# %%
for spec in metric_presets(build_space("stiefel-v2", (6,))):
    print(spec.name, [str(v) for v in spec.exact], spec.partition)
for spec in metric_presets(build_space("stiefel-v1k", (3, 2))):
    print(spec.name, [str(v) for v in spec.exact])
