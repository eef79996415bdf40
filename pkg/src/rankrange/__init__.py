"""Affine spaces of matrices over prime fields with rank in a prescribed range."""

from .affine import (
    AffineSpace,
    LemmaCheck,
    RankProfile,
    canonicalize,
    check_projection_lemma,
    contains,
    project,
    rank_profile,
)
from .codes import CodeParams, min_distance, singleton_check, weight_enumerator
from .constructions import (
    BoundQuery,
    VerificationReport,
    bound,
    construct,
    construct_counterexample_f3,
    construct_echelon_constant,
    construct_echelon_range,
    construct_range,
    verify_family,
)
from .echelon import PivotProfile, all_echelon, find_full_pivot_matrix, pivot_profile
from .errors import *  # noqa: F401,F403
from .field import Elem, PrimeField, arith, make_field
from .forms import (
    QuadraticForm,
    SkewNormalForm,
    hyperbolic_form,
    is_totally_isotropic,
    skew_block_form,
    skew_normal_form,
)
from .matrix import (
    Mat,
    det,
    diag,
    identity,
    is_row_echelon,
    is_skew,
    j2,
    jbar,
    rank,
    schur_det,
    submatrix,
    unit,
    zero,
)
from .search import (
    SearchResult,
    SearchSpec,
    enumerate_subspaces,
    exists_affine_of_dim,
    gaussian_binomial,
    max_affine_dim,
    qualifies,
)

__version__ = "0.1.0"
