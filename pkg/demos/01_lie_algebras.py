# %% [markdown]
# # Matrix Lie algebras and their bracket tables
#
# Each basis is stored as real/imaginary matrix pairs together with its
# structure constants `[e_i, e_j] = sum_k c[i, j, k] e_k` and the Gram matrix
# of `B(X, Y) = -Re tr(XY)`.

# %%
import numpy as np

from equigeodesic import build_so_basis, build_sp_basis, build_u_basis, commutator, validate_bracket_lemma

so4 = build_so_basis(4)
print(so4.labels)
print("structure tensor shape:", so4.structure.shape)

# %% [markdown]
# The usual sanity checks are exposed directly on the basis.

# %%
for basis in (build_so_basis(5), build_u_basis(3), build_sp_basis(2)):
    print(
        f"{basis.tag:>6}  dim={len(basis):2d}  "
        f"jacobi={basis.jacobi_residual():.1e}  ad-invariance={basis.ad_invariance_residual():.1e}"
    )

# %% [markdown]
# Brackets of named elements come from plain matrix arithmetic.

# %%
u2 = build_u_basis(2)
e12, f12 = u2.element("e(1,2)"), u2.element("f(1,2)")
coords = u2.coordinates(commutator(e12, f12))
print({lab: c for lab, c in zip(u2.labels, coords) if abs(c) > 1e-12})

# %% [markdown]
# Closed-form bracket tables can be checked against the matrices.  For u(n)
# the table disagrees with the matrices on repeated-index brackets; the report
# lists every such case.

# %%
print(validate_bracket_lemma(build_so_basis(5), "so-lemma").summary())
print(validate_bracket_lemma(build_sp_basis(2), "sp-lemma").summary())
report = validate_bracket_lemma(build_u_basis(3), "u-lemma")
print(report.summary())
print("share of mismatches with a repeated index:", np.mean([c.repeated_index for c in report.mismatches]))
