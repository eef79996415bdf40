"""
Affine spaces as rank-metric codes
==================================

Distances rk(A - B) between elements of G + V are ranks of elements of V,
so the distance distribution is the rank histogram of the direction space.
Element ranks and distances are different things.
"""

# %%
from rankrange import construct_counterexample_f3, construct_range, make_field, rank_profile
from rankrange import singleton_check, weight_enumerator

for S in (construct_counterexample_f3(), construct_range(2, 3, 1, 2, make_field(5))):
    cp = weight_enumerator(S)
    print(S)
    print("  element ranks:", rank_profile(S).histogram)
    print("  distances:    ", cp.distance_enumerator, "d_min", cp.min_distance)
    print("  Singleton ok: ", singleton_check(S))
