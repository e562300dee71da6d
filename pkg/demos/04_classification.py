# %% [markdown]
# # Classifying equigeodesic vectors
#
# A nonzero vector is
#
# * trivial when it lies in one module;
# * structural-nontrivial when every cross bilinear map vanishes identically
#   on the coordinate subspace spanned by its support;
# * algebraic when the cross residuals vanish at X only because of the
#   relations between its coefficients;
# * not equigeodesic otherwise.

# %%
from equigeodesic import MetricSpec, build_space, classify_vector, geodesic_vector_check

v24 = build_space("stiefel-v2", (4,))
examples = {
    "xi13 + xi14": dict(a13=1.0, a14=1.0),
    "xi13 + xi24": dict(a13=1.0, a24=1.0),
    "xi13 + xi14 + xi23 - xi24": dict(a13=1.0, a14=1.0, a23=1.0, a24=-1.0),
    "xi12 + xi13": dict(a12=1.0, a13=1.0),
}
for name, coeffs in examples.items():
    result = classify_vector(v24, v24.vector(coeffs))
    print(f"{name:<28} {result.kind.value:<22} support={sorted(result.support)}")

# %% [markdown]
# Classification can be taken relative to a metric-class partition.  Under
# the Einstein partition {m0}, {m1, m2} the mixed vector xi13 + xi23 only has
# to satisfy the equations between classes.

# %%
X = v24.vector(a13=1.0, a23=1.0)
print(classify_vector(v24, X).kind.value)
print(classify_vector(v24, X, "m0|m1,m2").kind.value)

# %% [markdown]
# An equigeodesic vector is geodesic for every invariant metric.  The check
# below evaluates `[X, Lambda X]_m` directly.

# %%
X = v24.vector(a13=1.0, a14=1.0, a23=1.0, a24=-1.0)
for lam in [(1.0, 1.0, 1.0), (1.0, 0.3, 4.0), (2.5, 0.7, 1.1)]:
    print(lam, geodesic_vector_check(v24, MetricSpec(lam), X))
