import numpy as np
import pytest
from hypothesis import given, strategies as st

from antinorm.errors import ConvergenceError, NotPSDError
from antinorm.randmat import random_psd, random_unitary, trial_rng
from antinorm.spectral import (apply_fn, direct_sum, eig_hermitian, eigvalsh, frob, hermitian, polar,
                               singular_values, sqrt_psd, svd)


def test_diagonal_eigenvalues_sorted_with_permutation_vectors():
    d = eig_hermitian(np.diag([1.0, 2.0, 3.0]))
    np.testing.assert_allclose(d.eigenvalues, [3, 2, 1])
    np.testing.assert_allclose(np.abs(d.eigenvectors), np.fliplr(np.eye(3)), atol=1e-14)


def test_two_by_two_closed_form():
    a, b, c = 2.0, 1.0 + 0.5j, -1.0
    disc = np.sqrt((a - c) ** 2 + 4 * abs(b) ** 2)
    expected = [(a + c + disc) / 2, (a + c - disc) / 2]
    np.testing.assert_allclose(eigvalsh(np.array([[a, b], [np.conj(b), c]])), expected, rtol=1e-13)
    np.testing.assert_allclose(eigvalsh(np.array([[2.0, 1.0], [1.0, 2.0]])), [3, 1], rtol=1e-14)


def test_zero_matrix():
    d = eig_hermitian(np.zeros((4, 4)))
    np.testing.assert_array_equal(d.eigenvalues, 0)
    assert frob(d.eigenvectors.conj().T @ d.eigenvectors - np.eye(4)) < 1e-14


def test_jacobi_agrees_with_lapack(rng):
    # numpy's LAPACK eigvalsh serves as the independent oracle
    for n in (1, 2, 5, 9, 16):
        h = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        h = h + h.conj().T
        d = eig_hermitian(h)
        np.testing.assert_allclose(d.eigenvalues, np.linalg.eigvalsh(h)[::-1], atol=1e-12 * (1 + frob(h)))
        assert frob(d.reconstruct() - h) < 1e-12 * (1 + frob(h))


def test_nonconvergence_is_reported(rng):
    h = rng.standard_normal((6, 6))
    with pytest.raises(ConvergenceError, match="residual"):
        eig_hermitian(h + h.T, max_sweeps=1, tol=1e-300)


def test_singular_values_examples():
    np.testing.assert_allclose(singular_values(np.diag([-3.0, 2.0])), [3, 2])
    np.testing.assert_allclose(singular_values(np.array([[0.0, 2.0], [0.0, 0.0]])), [2, 0], atol=1e-15)
    u = random_unitary(5, np.random.default_rng(1))
    np.testing.assert_allclose(singular_values(u), 1.0, atol=1e-12)


def test_singular_values_against_numpy(rng):
    m = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    np.testing.assert_allclose(singular_values(m), np.linalg.svd(m, compute_uv=False), atol=1e-12)


def test_apply_fn_examples():
    a = np.array([[2.0, 1.0], [1.0, 2.0]])
    assert frob(apply_fn(a, lambda t: t) - a) <= 1e-10
    np.testing.assert_allclose(apply_fn(np.diag([4.0, 1.0]), np.sqrt), np.diag([2.0, 1.0]), atol=1e-14)
    np.testing.assert_allclose(apply_fn(a, lambda t: t**2), a @ a, atol=1e-13)


def test_sqrt_and_polar(rng):
    a = random_psd(5, "uniform01", rng)
    r = sqrt_psd(a)
    assert frob(r @ r - a) < 1e-12
    with pytest.raises(NotPSDError):
        sqrt_psd(-np.eye(2))
    u = random_unitary(4, rng)
    pu, pp = polar(u)
    assert frob(pu - u) < 1e-12 and frob(pp - np.eye(4)) < 1e-12
    m = rng.standard_normal((4, 4))
    pu, pp = polar(m)
    assert frob(pu @ pp - m) < 1e-12
    assert frob(pu.conj().T @ pu - np.eye(4)) < 1e-12


def test_svd_rank_deficient(rng):
    v = rng.standard_normal((5, 1)) + 1j * rng.standard_normal((5, 1))
    m = v @ v.conj().T
    w, s, vv = svd(m)
    assert frob((w * s) @ vv.conj().T - m) < 1e-12 * (1 + frob(m))
    assert frob(w.conj().T @ w - np.eye(5)) < 1e-12


def test_hermitian_rejects_non_hermitian():
    with pytest.raises(ValueError):
        hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_direct_sum():
    m = direct_sum(np.eye(2), 3 * np.eye(1))
    np.testing.assert_array_equal(np.diag(m).real, [1, 1, 3])


@given(st.integers(1, 6), st.integers(0, 10**6))
def test_sqrt_then_square_round_trip(n, seed):
    a = random_psd(n, "exp", trial_rng(seed, "roundtrip"))
    back = apply_fn(apply_fn(a, np.sqrt), lambda t: t**2)
    assert frob(back - a) <= 1e-8 * (1 + frob(a))


@given(st.integers(1, 6), st.integers(0, 10**6))
def test_eigenvalues_unitarily_invariant(n, seed):
    rng = trial_rng(seed, "inv")
    a = random_psd(n, "uniform01", rng)
    u = random_unitary(n, rng)
    np.testing.assert_allclose(eigvalsh(u @ a @ u.conj().T), eigvalsh(a), atol=1e-12)
