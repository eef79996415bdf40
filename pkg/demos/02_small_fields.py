"""
When the field is too small
===========================

The dimension bound needs at least r + 2 field elements. Over F_3 with
r = 2 there is a 4-dimensional space of 3 x 3 matrices of constant rank 2,
one more than the bound allows.
"""

# %%
from rankrange import (
    SearchSpec,
    bound,
    construct_counterexample_f3,
    exists_affine_of_dim,
    make_field,
    max_affine_dim,
    qualifies,
    rank_profile,
)
from rankrange.constructions import field_hypotheses
from rankrange.search import exhaustive_cost

S = construct_counterexample_f3()
print(S.offset.array)
for b in S.basis:
    print(b.array)
print("dimension", S.dim, "bound", bound("range-mxn", m=3, n=3, s=2, r=2))
print("profile", rank_profile(S).histogram)
print("field large enough?", field_hypotheses(2, make_field(3)))

# %%
# The search filter accepts this space as a witness of dimension 4.
F3 = make_field(3)
spec = SearchSpec(3, 3, 2, 2, F3, 4)
print("qualifies:", qualifies(spec, S))

# An exhaustive search finds a witness on its own, but the worst-case cost
# estimate is far above the default budget and the run takes tens of
# seconds, so it is opt-in here.
print("worst-case element evaluations:", exhaustive_cost(spec, 4))
RUN_SEARCH = False
if RUN_SEARCH:
    print(exists_affine_of_dim(spec, budget=exhaustive_cost(spec, 4)).to_dict())

# %%
# Over F_5 the bound is tight already for 2 x 2 matrices.
for s, r in [(1, 1), (2, 2)]:
    dim, res = max_affine_dim(SearchSpec(2, 2, s, r, make_field(5)), budget=10**8)
    print((s, r), "max dim", dim, "bound", bound("range-mxn", m=2, n=2, s=s, r=r), res.probes)
