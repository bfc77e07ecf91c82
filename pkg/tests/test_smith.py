import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ssiwasawa import smith
from ssiwasawa.smith import cokernel_invariants, smith_normal_form

from conftest import det, invariant_factors_from_minors, matmul

BACKENDS = ["python"] + (["cython"] if smith.BACKEND == "cython" else [])


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize(
    "A, factors",
    [
        ([[2, 0], [0, 3]], (1, 6)),
        ([[2, 4], [6, 8]], (2, 4)),
        ([[0, 0, 0]] * 3, (0, 0, 0)),
        ([[1, 0], [0, 1]], (1, 1)),
        ([[12, 6, 4, 8], [3, 9, 6, 12], [2, 16, 14, 28], [20, 10, 10, 20]], (1, 10, 30, 0)),
    ],
)
def test_known_forms(A, factors, backend):
    assert smith_normal_form(A, backend=backend).invariant_factors == factors


def test_empty_matrix():
    assert smith_normal_form([], ncols=4).invariant_factors == ()
    assert smith_normal_form([[]], ncols=0).invariant_factors == ()


def test_cokernel_examples():
    inv = cokernel_invariants([[2]], 2)
    assert (inv.zp_rank, inv.p_torsion_exponents) == (0, (1,))
    inv = cokernel_invariants([[3]], 2)
    assert (inv.zp_rank, inv.p_torsion_exponents) == (0, ())
    assert cokernel_invariants([], 5, ncols=4).zp_rank == 4


def test_cokernel_mixed_torsion():
    # Z/4 + Z/3 + Z/18 + Z
    inv = cokernel_invariants([[4, 0, 0, 0], [0, 3, 0, 0], [0, 0, 18, 0]], 3)
    assert inv.zp_rank == 1
    assert inv.p_torsion_exponents == (1, 2)
    assert inv.invariant_factors == (6, 36, 0)


def _check_decomposition(A, dec):
    r, c = len(A), len(A[0])
    D = matmul(matmul(dec.U, A), dec.V)
    for i in range(r):
        for j in range(c):
            assert D[i][j] == (dec.invariant_factors[i] if i == j else 0)
    assert abs(det(dec.U)) == 1
    assert abs(det(dec.V)) == 1


def _check_chain(factors):
    nonzero = [d for d in factors if d]
    assert all(d > 0 for d in nonzero)
    assert factors[: len(nonzero)] == tuple(nonzero)
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))


matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-20, 20), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_reconstruction_and_chain(A):
    dec = smith_normal_form(A, want_transforms=True)
    _check_decomposition(A, dec)
    _check_chain(dec.invariant_factors)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)
    )
))
def test_matches_minor_oracle(A):
    assert list(smith_normal_form(A).invariant_factors) == invariant_factors_from_minors(A)


@settings(max_examples=60, deadline=None)
@given(matrices, st.randoms(use_true_random=False))
def test_permutation_invariance(A, rnd):
    rows = list(A)
    rnd.shuffle(rows)
    cols = list(range(len(A[0])))
    rnd.shuffle(cols)
    B = [[row[j] for j in cols] for row in rows]
    assert smith_normal_form(A).invariant_factors == smith_normal_form(B).invariant_factors


@pytest.mark.skipif(smith.BACKEND != "cython", reason="compiled kernel not built")
def test_backends_agree_exactly():
    rng = random.Random(7)
    for _ in range(200):
        r, c = rng.randint(1, 10), rng.randint(1, 10)
        A = [[rng.randint(-20, 20) for _ in range(c)] for _ in range(r)]
        a = smith_normal_form(A, True, backend="python")
        b = smith_normal_form(A, True, backend="cython")
        assert a == b


def test_overflow_falls_back_to_big_integers():
    big = 2**70
    A = [[big, 3], [5, big + 1]]
    dec = smith_normal_form(A, want_transforms=True)
    _check_decomposition(A, dec)
    assert dec.invariant_factors == smith_normal_form(A, backend="python").invariant_factors


def test_entry_growth_past_int64():
    # Products of these entries overflow int64 inside the kernel.
    A = [[2**40 + 1, 2**41 + 3], [2**42 + 5, 2**43 + 7]]
    dec = smith_normal_form(A, want_transforms=True)
    _check_decomposition(A, dec)
    assert list(dec.invariant_factors) == invariant_factors_from_minors(A)


def test_ragged_rows_rejected():
    with pytest.raises(ValueError):
        smith_normal_form([[1, 2], [3]])
