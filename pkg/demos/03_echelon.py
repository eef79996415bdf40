"""
Spaces of echelon matrices
==========================

If every element of an affine space is in row echelon form, some element has
a nonzero entry at every row's leftmost possible pivot, as long as the field
has more than r elements.
"""

# %%
from rankrange import (
    AffineSpace,
    Mat,
    all_echelon,
    construct_echelon_constant,
    construct_echelon_range,
    find_full_pivot_matrix,
    make_field,
    pivot_profile,
    rank_profile,
)
from rankrange.errors import FieldTooSmall

F5 = make_field(5)
for S in (construct_echelon_constant(3, 4, 2, F5), construct_echelon_range(3, 4, 1, 2, F5)):
    print(S, all_echelon(S), rank_profile(S).histogram)

# %%
# Rows 2..r of the range construction form a chain: a free vector shifted
# one column right per row.
S = construct_echelon_range(4, 6, 1, 3, F5)
print(pivot_profile(S).to_dict())
A = find_full_pivot_matrix(S)
print(A.array)

# %%
# The offset is good on row 1 and the generator on row 2; the search needs
# a genuine combination lam * A + (1 - lam) * A'.
S = AffineSpace(Mat([[1, 0, 0], [0, 0, 0]], F5), [Mat([[4, 1, 0], [0, 0, 1]], F5)])
print(find_full_pivot_matrix(S).array)

# %%
# Over F_2 the scan for lam can run out of values.
F2 = make_field(2)
T = AffineSpace(Mat([[1, 0, 0], [0, 0, 0]], F2), [Mat([[0, 1, 1], [0, 0, 1]], F2), Mat([[1, 0, 1], [0, 0, 0]], F2)])
try:
    find_full_pivot_matrix(T)
except FieldTooSmall as exc:
    print("FieldTooSmall:", exc)
