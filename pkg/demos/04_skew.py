"""
Skew-symmetric matrices and isotropic projections
=================================================

An alternating matrix is congruent to blocks [[0, d], [-d, 0]] followed by
zeros. With the maximal-rank element in that shape, pairs of border columns
of the direction space project onto totally isotropic subspaces.
"""

# %%
import numpy as np

from rankrange import AffineSpace, Mat, SearchSpec, exists_affine_of_dim, make_field, skew_normal_form
from rankrange.forms import skew_block_form, skew_isotropy_failures

F7 = make_field(7)
M = Mat([[0, 3, 1, 2], [4, 0, 5, 0], [6, 2, 0, 1], [5, 0, 6, 0]], F7)
nf = skew_normal_form(M)
print("rank", nf.r, "d", nf.d)
print((nf.H.T @ M @ nf.H).array)

# %%
# A space of rank <= 2: every alternating matrix supported on row/column 1.
n = 4
gens = []
for j in range(1, n):
    e = np.zeros((n, n), dtype=np.int64)
    e[0, j], e[j, 0] = 1, 6
    gens.append(Mat(e, F7))
S = AffineSpace(gens[0], gens[1:], "skew")
print("isotropy failures:", skew_isotropy_failures(S))
print(skew_block_form([1], F7).coeffs)

# %%
# A seeded random search for a 3-dimensional skew space of constant rank 2
# in 4 x 4 over F_5 (the bound is 2) comes back empty.
spec = SearchSpec(4, 4, 2, 2, make_field(5), 3, ambient="skew", mode="random", samples=2000, seed=1)
print(exists_affine_of_dim(spec, budget=10**8).to_dict())
