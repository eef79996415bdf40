"""
Affine spaces with ranks in a range
===================================

Build the largest known affine space of m x n matrices whose ranks all lie
in [s, r], scan every element, and look at the rank histogram.
"""

# %%
import numpy as np

from rankrange import bound, construct_range, make_field, rank_profile

F5 = make_field(5)
S = construct_range(3, 4, 1, 2, F5)
print(S)
print("offset:")
print(S.offset.array)

# The direction space has dimension r*max(m, n) - C(s+1, 2).
print("dimension", S.dim, "formula", bound("range-mxn", m=3, n=4, s=1, r=2))

# %%
# Every one of the 5^7 elements is enumerated in blocks and ranked in a
# batch; the histogram maps rank -> count.
prof = rank_profile(S)
print(prof.histogram, "min", prof.min_rank, "max", prof.max_rank)

# %%
# Splitting the enumeration into contiguous partitions (optionally on a
# thread pool) gives the same histogram.
print(rank_profile(S, workers=4).histogram == prof.histogram)

# %%
# A random element, for a feel of the shape: the leading s x s block is the
# identity, the rows s+1..r carry the free part.
rng = np.random.default_rng(0)
print(S.element(rng.integers(0, 5, size=S.dim)).array)

# %%
# Setting s = 0 recovers r * max(m, n), and r = min(m, n) recovers the
# bound for spaces whose ranks are merely at least s.
print(bound("range-mxn", m=3, n=4, s=0, r=2), bound("flanders", m=3, n=4, r=2))
print(bound("range-mxn", m=3, n=4, s=1, r=3), bound("rank-below", m=3, n=4, s=1))
