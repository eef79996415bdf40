"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the lines are printed even
when output capture is on.
"""

import io
import json
import time
from contextlib import contextmanager

import numpy as np
from conftest import pairwise_distance_histogram
from echelon_instances import random_echelon_space
from lemma_instances import random_lemma_instance
from rankrange import (
    Mat,
    SearchSpec,
    all_echelon,
    bound,
    check_projection_lemma,
    construct_counterexample_f3,
    construct_echelon_range,
    construct_range,
    contains,
    enumerate_subspaces,
    exists_affine_of_dim,
    find_full_pivot_matrix,
    gaussian_binomial,
    make_field,
    max_affine_dim,
    pivot_profile,
    rank,
    rank_profile,
    schur_det,
    singleton_check,
    skew_normal_form,
    weight_enumerator,
)
from rankrange.cli import run
from rankrange.errors import SchurNotApplicable
from rankrange.forms import normalize_rank_offset, range_isotropy_failures, skew_isotropy_failures
from rankrange.matrix import block, det
from skew_instances import random_skew, random_skew_bounded
from test_codes import constructed_families

SEED = 20240501


@contextmanager
def criterion(capsys, number, title, limit=None):
    """Time the body and print one PASS/FAIL line for the criterion."""
    start = time.perf_counter()
    status, why = "FAIL", ""
    try:
        yield
        elapsed = time.perf_counter() - start
        if limit is not None and elapsed > limit:
            why = f" (over the {limit:g} s limit)"
            raise AssertionError(f"criterion {number} took {elapsed:.2f} s, limit {limit} s")
        status = "PASS"
    except BaseException as exc:
        why = why or f" ({type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''})"
        raise
    finally:
        elapsed = time.perf_counter() - start
        budget = f" / {limit:g} s" if limit is not None else ""
        with capsys.disabled():
            print(f"\n[{status}] criterion {number:2d}: {title} [{elapsed:.2f} s{budget}]{why}")


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, json.loads(out.getvalue())


def test_01_range_achievability(capsys):
    with criterion(capsys, 1, "range-mxn (3,4,1,2) over F_5: dim 7, 78125 elements, ranks 1..2", 10):
        code, rep = cli("verify", "--family", "range-mxn", "--m", "3", "--n", "4", "--s", "1", "--r", "2", "--p", "5",
                        "--threads", "1")
        assert code == 0
        assert rep["dimension"] == 7 == 2 * 4 - 1
        assert rep["elements_scanned"] == 5**7 == 78125
        assert rep["profile"]["min_rank"] == 1 and rep["profile"]["max_rank"] == 2


def test_02_range_tightness(capsys):
    with criterion(capsys, 2, "exhaustive max dim over F_5: (2,2,1,1) is 1, (2,2,2,2) is 1", 60):
        F5 = make_field(5)
        for s, r, expected in [(1, 1, 1), (2, 2, 1)]:
            start = time.perf_counter()
            spec = SearchSpec(2, 2, s, r, F5)
            assert bound("range-mxn", m=2, n=2, s=s, r=r) == expected
            assert not exists_affine_of_dim(spec.with_dim(expected + 1), 10**9).found
            dim, res = max_affine_dim(spec, 10**9)
            assert dim == expected and res.found and res.mode == "exhaustive"
            assert time.perf_counter() - start < 60


def test_03_counterexample(capsys):
    with criterion(capsys, 3, "F_3 counterexample: dim 4 > 3, profile {2: 81}", 1):
        S = construct_counterexample_f3()
        assert S.dim == 4 > bound("range-mxn", m=3, n=3, s=2, r=2) == 3
        assert rank_profile(S).histogram == {2: 81}


def test_04_echelon_constant(capsys):
    with criterion(capsys, 4, "echelon-constant (3,4,2) over F_5: dim 5, 3125 echelon elements of rank 2", 5):
        code, rep = cli("verify", "--family", "echelon-constant", "--m", "3", "--n", "4", "--r", "2", "--p", "5")
        assert code == 0 and rep["passed"]
        assert rep["dimension"] == 5 == 2 * 4 - 3
        assert rep["profile"]["histogram"] == {"2": 3125}
        assert any(c["name"] == "every element is in row echelon form" and c["passed"] for c in rep["checks"])


def test_05_echelon_range(capsys):
    with criterion(capsys, 5, "echelon-range (3,4,1,2) over F_5: dim 6, all echelon, ranks 1..2", 10):
        S = construct_echelon_range(3, 4, 1, 2, make_field(5))
        assert S.dim == 6 == 1 * 4 - 1 + 4 - 1
        assert all_echelon(S)
        prof = rank_profile(S)
        assert prof.total == 5**6 and prof.min_rank == 1 and prof.max_rank == 2


def test_06_skew_bound_random_search(capsys):
    with criterion(capsys, 6, "skew n=4, s=r=2, F_5: no witness at dim 3 in 10^4 seeded samples", 300):
        F5 = make_field(5)
        assert bound("ant-range", n=4, s=2, r=2) == 2
        spec = SearchSpec(4, 4, 2, 2, F5, 3, ambient="skew", mode="random", samples=10**4, seed=SEED)
        res = exists_affine_of_dim(spec, 10**9)
        assert not res.found and res.candidates == 10**4 and res.seed == SEED


def test_07_isotropy_suite(capsys):
    with criterion(capsys, 7, "projections totally isotropic (range over F_5, F_7; skew spaces)", 30):
        checked = 0
        for p in (5, 7):
            F = make_field(p)
            for m in range(2, 5):
                for n in range(m, 5):
                    for r in range(1, m):
                        for s in range(1, r + 1):
                            S = construct_range(m, n, s, r, F)
                            assert range_isotropy_failures(S, r, normalize=False) == []
                            if p**S.dim <= 10**5:
                                assert range_isotropy_failures(S) == []
                            checked += 1
        rng = np.random.default_rng(SEED)
        for p in (5, 7):
            for _ in range(40):
                h = int(rng.integers(1, 3))
                n = 2 * h + int(rng.integers(1, 3))
                S = random_skew_bounded(rng, make_field(p), n, 2 * h)
                assert skew_isotropy_failures(S) == []
                checked += 1
        assert checked > 100


def test_08_schur(capsys):
    with criterion(capsys, 8, "Schur determinant equals block determinant on 1000 instances over F_7"):
        F7 = make_field(7)
        rng = np.random.default_rng(SEED)
        done = 0
        while done < 1000:
            a, b = (int(x) for x in rng.integers(1, 4, size=2))
            A, B = Mat(rng.integers(0, 7, (a, a)), F7), Mat(rng.integers(0, 7, (a, b)), F7)
            C, D = Mat(rng.integers(0, 7, (b, a)), F7), Mat(rng.integers(0, 7, (b, b)), F7)
            try:
                value = schur_det(A, B, C, D)
            except SchurNotApplicable:
                continue
            assert value == det(block([[A, B], [C, D]]))
            done += 1


def test_09_projection_lemma(capsys):
    with criterion(capsys, 9, "projection lemma holds on 500 instances with h <= 9 over F_3"):
        rng = np.random.default_rng(SEED)
        for _ in range(500):
            V, m, n_list, q_list, r = random_lemma_instance(rng, 3, max_h=9)
            assert check_projection_lemma(V, m, n_list, q_list, r, 3)


def test_10_full_pivot(capsys):
    with criterion(capsys, 10, "full-pivot element on 200 all-echelon spaces, q >= r+1", 60):
        rng = np.random.default_rng(SEED)
        for t in range(200):
            F = make_field(5 if t % 2 else 7)
            S = random_echelon_space(rng, F)
            assert all_echelon(S)
            prof = pivot_profile(S)
            assert prof.P == tuple(range(1, rank_profile(S).max_rank + 1))
            A = find_full_pivot_matrix(S)
            assert contains(S, A)
            assert all(A.entry(i, prof.j[i]) != 0 for i in prof.P)


def test_11_skew_normal_form(capsys):
    with criterion(capsys, 11, "skew normal form on 100 random skew matrices, n <= 6, F_7"):
        F7 = make_field(7)
        rng = np.random.default_rng(SEED)
        for t in range(100):
            n = int(rng.integers(1, 7))
            k = None if t % 2 else int(rng.integers(0, n // 2 + 1))
            M = Mat(random_skew(rng, n, 7, k), F7)
            nf = skew_normal_form(M)
            assert nf.H.T @ M @ nf.H == nf.normal_matrix()
            assert rank(nf.H) == n
            assert nf.r == rank(M)


def test_12_enumeration_calibration(capsys):
    with criterion(capsys, 12, "subspace enumeration count equals Gaussian binomial, N <= 6, q in {2,3,5}"):
        for q in (2, 3, 5):
            F = make_field(q)
            for N in range(0, 7):
                for d in range(0, N + 1):
                    assert sum(1 for _ in enumerate_subspaces(N, d, F)) == gaussian_binomial(N, d, q)


def test_13_codes(capsys):
    with criterion(capsys, 13, "weight enumerator equals pairwise oracle (q^dim <= 10^4); Singleton on all families"):
        compared = 0
        for S in constructed_families():
            if S.dim == 0:
                continue
            size = S.p**S.dim
            if size <= 10**4:
                cp = weight_enumerator(S)
                pairs = pairwise_distance_histogram(S)
                assert all(v % size == 0 for v in pairs.values())
                assert {k: v // size for k, v in pairs.items()} == cp.distance_enumerator
                compared += 1
            assert singleton_check(S, element_budget=10**7)
        assert compared > 100
