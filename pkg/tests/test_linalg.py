import numpy as np
import pytest

from fluidris.errors import DomainError
from fluidris.linalg import eig_hermitian, psd_sqrt, quadratic_form


def _random_hermitian(n, seed):
    rng = np.random.default_rng(seed)
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (m + m.conj().T)


def test_identity_spectrum():
    es = eig_hermitian(np.eye(4))
    assert np.allclose(es.eigenvalues, 1.0)


def test_textbook_2x2():
    es = eig_hermitian(np.array([[2.0, 1.0], [1.0, 2.0]]))
    assert es.eigenvalues == pytest.approx([3.0, 1.0])


def test_eigenvalues_descending_and_reconstruction():
    a = _random_hermitian(12, seed=3)
    es = eig_hermitian(a)
    assert np.all(np.diff(es.eigenvalues) <= 0)
    recon = (es.eigenvectors * es.eigenvalues) @ es.eigenvectors.conj().T
    assert np.linalg.norm(recon - a) < 1e-10 * np.linalg.norm(a)
    # unitary columns
    gram = es.eigenvectors.conj().T @ es.eigenvectors
    assert np.linalg.norm(gram - np.eye(12)) < 1e-10


def test_residuals_and_trace_identity():
    a = _random_hermitian(20, seed=7)
    es = eig_hermitian(a)
    for lam, v in zip(es.eigenvalues, es.eigenvectors.T):
        assert np.linalg.norm(a @ v - lam * v) <= 1e-10 * np.linalg.norm(a)
    assert np.sum(es.eigenvalues) == pytest.approx(np.trace(a).real, rel=1e-10)


def test_non_hermitian_rejected():
    bad = np.array([[1.0, 2.0], [0.0, 1.0]])
    with pytest.raises(DomainError):
        eig_hermitian(bad)
    with pytest.raises(DomainError):
        eig_hermitian(np.ones((2, 3)))


def test_psd_sqrt_identity_and_diagonal():
    assert np.allclose(psd_sqrt(np.eye(3)), np.eye(3))
    assert np.allclose(psd_sqrt(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]))


def test_psd_sqrt_reconstruction():
    rng = np.random.default_rng(11)
    m = rng.normal(size=(10, 10))
    a = m @ m.T  # PSD
    b = psd_sqrt(a)
    assert np.linalg.norm(b @ b - a) < 1e-9 * np.linalg.norm(a)


def test_psd_sqrt_clamps_tiny_negatives_only():
    a = np.diag([1.0, -1e-14])
    b = psd_sqrt(a)
    assert b[1, 1] == 0.0
    with pytest.raises(DomainError):
        psd_sqrt(np.diag([1.0, -0.5]))


def test_psd_eigenvalue_floor():
    rng = np.random.default_rng(5)
    m = rng.normal(size=(15, 15)) + 1j * rng.normal(size=(15, 15))
    a = m @ m.conj().T
    es = eig_hermitian(a)
    assert np.all(es.eigenvalues >= -1e-10 * np.linalg.norm(a))


def test_quadratic_form_basics():
    a = np.diag([5.0, 2.0, 1.0])
    e1 = np.array([1.0, 0.0, 0.0])
    assert quadratic_form(e1, a) == pytest.approx(5.0)
    v = np.array([1.0 + 1j, 2.0, -1j])
    assert quadratic_form(v, np.eye(3)) == pytest.approx(float(np.sum(np.abs(v) ** 2)))


def test_quadratic_form_matches_double_sum():
    rng = np.random.default_rng(13)
    a = _random_hermitian(8, seed=13)
    v = rng.normal(size=8) + 1j * rng.normal(size=8)
    brute = sum(
        (np.conj(v[i]) * a[i, j] * v[j]).real for i in range(8) for j in range(8)
    )
    assert quadratic_form(v, a) == pytest.approx(brute, rel=1e-12)


def test_quadratic_form_dimension_mismatch():
    with pytest.raises(DomainError):
        quadratic_form(np.ones(3), np.eye(4))
