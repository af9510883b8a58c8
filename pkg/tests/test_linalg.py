from __future__ import annotations

import numpy as np
import pytest
from scipy import sparse

from tatedual import linalg


def _random_with_rank(rng, m, n, r, p):
    a = rng.integers(0, p, size=(m, r), dtype=np.int64)
    b = rng.integers(0, p, size=(r, n), dtype=np.int64)
    return linalg.matmul_mod(a, b, p)


@pytest.mark.parametrize("p", [3, 5, 7, 101])
def test_blocked_matches_naive(p):
    rng = np.random.default_rng(10 + p)
    for _ in range(8):
        m = int(rng.integers(1, 80))
        n = int(rng.integers(1, 80))
        a = rng.integers(0, p, size=(m, n), dtype=np.int64)
        e1, p1 = linalg._forward_naive(a.copy(), p)
        e2, p2 = linalg._forward_blocked(a.copy(), p)
        assert p1 == p2
        assert np.array_equal(e1, e2)


def test_blocked_matches_naive_large_rank_deficient():
    rng = np.random.default_rng(42)
    p = 5
    a = _random_with_rank(rng, 400, 450, 137, p)
    e1, p1 = linalg._forward_naive(a.copy(), p)
    e2, p2 = linalg._forward_blocked(a.copy(), p)
    assert p1 == p2 and len(p1) == 137
    assert np.array_equal(e1, e2)


@pytest.mark.parametrize("shape", [(0, 5), (5, 0), (0, 0), (1, 1)])
def test_degenerate_shapes(shape):
    a = np.zeros(shape, dtype=np.int64)
    assert linalg.rank_mod(a, 5) == 0
    k = linalg.kernel_basis(a, 5)
    assert k.shape == (shape[1], shape[1])


def test_kernel_and_image():
    rng = np.random.default_rng(7)
    p = 7
    for _ in range(10):
        a = _random_with_rank(rng, 60, 45, int(rng.integers(0, 40)), p)
        ker, im = linalg.kernel_and_image(a, p)
        r = linalg.rank_mod(a, p)
        assert im.shape[1] == r
        assert ker.shape[1] == a.shape[1] - r
        assert not linalg.matmul_mod(a, ker, p).any()
        assert linalg.rank_mod(im, p) == r
        # image columns really are columns of a
        assert linalg.rank_mod(np.hstack([a, im]), p) == r


def test_coordinates_in_span_roundtrip():
    rng = np.random.default_rng(3)
    p = 5
    basis = rng.integers(0, p, size=(30, 8), dtype=np.int64)
    while linalg.rank_mod(basis, p) < 8:
        basis = rng.integers(0, p, size=(30, 8), dtype=np.int64)
    coeffs = rng.integers(0, p, size=(8, 4), dtype=np.int64)
    vecs = linalg.matmul_mod(basis, coeffs, p)
    got = linalg.coordinates_in_span(basis, vecs, p)
    assert np.array_equal(got, coeffs % p)


def test_coordinates_outside_span_raises():
    p = 3
    basis = np.array([[1], [0], [0]], dtype=np.int64)
    vec = np.array([[0], [1], [0]], dtype=np.int64)
    with pytest.raises(ValueError):
        linalg.coordinates_in_span(basis, vec, p)


def test_complete_subspace():
    p = 5
    rng = np.random.default_rng(17)
    space = rng.integers(0, p, size=(20, 9), dtype=np.int64)
    while linalg.rank_mod(space, p) < 9:
        space = rng.integers(0, p, size=(20, 9), dtype=np.int64)
    sub = linalg.matmul_mod(space, rng.integers(0, p, size=(9, 4), dtype=np.int64), p)
    while linalg.rank_mod(sub, p) < 4:
        sub = linalg.matmul_mod(space, rng.integers(0, p, size=(9, 4), dtype=np.int64), p)
    extra = linalg.complete_subspace(sub, space, p)
    assert extra.shape[1] == 5
    assert linalg.rank_mod(np.hstack([sub, extra]), p) == 9


def test_inverse_mod():
    rng = np.random.default_rng(5)
    p = 11
    a = rng.integers(0, p, size=(25, 25), dtype=np.int64)
    while linalg.rank_mod(a, p) < 25:
        a = rng.integers(0, p, size=(25, 25), dtype=np.int64)
    inv = linalg.inverse_mod(a, p)
    assert np.array_equal(linalg.matmul_mod(a, inv, p), np.eye(25, dtype=np.int64))
    with pytest.raises(ValueError):
        linalg.inverse_mod(np.zeros((3, 3), dtype=np.int64), p)


def test_matmul_mod_matches_python_integers():
    rng = np.random.default_rng(11)
    p = 101
    a = rng.integers(0, p, size=(64, 40), dtype=np.int64)
    b = rng.integers(0, p, size=(40, 50), dtype=np.int64)
    expected = (a @ b) % p
    assert np.array_equal(linalg.matmul_mod(a, b, p), expected)


def test_matrix_power_mod():
    a = np.array([[1, 0], [1, 1]], dtype=np.int64)
    p = 5
    assert np.array_equal(linalg.matrix_power_mod(a, 5, p), np.eye(2, dtype=np.int64))
    assert np.array_equal(linalg.matrix_power_mod(a, 0, p), np.eye(2, dtype=np.int64))


@pytest.mark.parametrize("p", [2, 3, 7])
def test_sparse_rank_matches_dense(p):
    rng = np.random.default_rng(100 + p)
    for _ in range(6):
        m = int(rng.integers(5, 120))
        n = int(rng.integers(5, 120))
        dense = rng.integers(0, p, size=(m, n), dtype=np.int64)
        dense[rng.random(size=dense.shape) < 0.8] = 0
        sp = sparse.csr_matrix(dense)
        assert linalg.sparse_rank_mod(sp, p) == linalg.rank_mod(dense, p)


def test_rank_mod_dispatches_on_sparse():
    dense = np.eye(10, dtype=np.int64)
    assert linalg.rank_mod(sparse.csr_matrix(dense), 3) == 10
