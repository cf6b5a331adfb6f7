import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from toeplitz_spurious import b_exact, squared_toeplitz
from toeplitz_spurious.eig import (
    ConvergenceError,
    Spectrum,
    counting_above,
    eigenvalues_array,
    eigenvalues_hermitian,
    householder_tridiagonal,
    mu_view,
)
from toeplitz_spurious.matrices import op_norm


def faddeev_leverrier(a):
    """Characteristic polynomial coefficients, highest degree first, without any eigen-solver."""
    n = a.shape[0]
    coeffs = [1.0 + 0j]
    m = np.zeros_like(a)
    for k in range(1, n + 1):
        m = a @ m + coeffs[-1] * np.eye(n)
        coeffs.append(-np.trace(a @ m) / k)
    return np.array(coeffs)


def random_hermitian(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (a + a.conj().T)


def test_examples():
    assert eigenvalues_hermitian(np.diag([3.0, 1.0, 2.0])).values_asc.tolist() == pytest.approx([1, 2, 3], abs=1e-15)
    pauli = np.array([[0, 1j], [-1j, 0]])
    assert eigenvalues_hermitian(pauli).values_asc.tolist() == pytest.approx([-1, 1], abs=1e-15)


def test_b4_against_characteristic_polynomial(half_pi):
    b = b_exact(half_pi, 4)
    roots = np.sort(np.roots(faddeev_leverrier(b.entries)).real)
    np.testing.assert_allclose(eigenvalues_hermitian(b).values_asc, roots, atol=1e-10)


def test_householder_preserves_spectrum():
    rng = np.random.default_rng(3)
    a = random_hermitian(rng, 12)
    d, e = householder_tridiagonal(a)
    t = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
    np.testing.assert_allclose(np.linalg.eigvalsh(t), np.linalg.eigvalsh(a), atol=1e-12)
    assert np.trace(t) == pytest.approx(np.trace(a).real, abs=1e-12)


@pytest.mark.parametrize("n", [1, 2, 5, 40, 128])
def test_ql_matches_lapack(n):
    a = random_hermitian(np.random.default_rng(n), n)
    np.testing.assert_allclose(eigenvalues_array(a), eigenvalues_array(a, method="lapack"), atol=1e-12 * max(1, n))


def test_deterministic():
    a = random_hermitian(np.random.default_rng(0), 50)
    assert eigenvalues_array(a).tobytes() == eigenvalues_array(a).tobytes()


def test_rejects_non_square_and_unknown_method():
    with pytest.raises(ValueError):
        eigenvalues_array(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        eigenvalues_array(np.eye(2), method="jacobi")


def test_non_convergence_is_signalled():
    with pytest.raises(ConvergenceError):
        eigenvalues_array(random_hermitian(np.random.default_rng(1), 6), max_sweeps=0)


def test_spectrum_views():
    s = Spectrum([1.0, 2.0, 3.0])
    assert s.n == 3
    assert mu_view(s, 1) == 1 and mu_view(s, 3) == 3
    assert s.lam(1) == 3 and s.lam(3) == 1
    for j in range(1, 4):
        assert s.mu(j) == s.lam(s.n + 1 - j)
    with pytest.raises(IndexError):
        mu_view(s, 4)
    with pytest.raises(ValueError):
        Spectrum([2.0, 1.0])


def test_counting_above():
    s = Spectrum([1.0, 2.0, 3.0])
    assert counting_above(s, 2.0) == 1
    assert counting_above(s, 0.0) == 3
    assert counting_above(s, 3.0) == 0
    assert counting_above([3.0, 1.0, 2.0], 1.5) == 2


def test_counting_matches_admissible_scan(half_pi):
    spec = eigenvalues_hermitian(b_exact(half_pi, 60))
    eps = 0.1
    scan = [j for j in range(1, spec.n + 1) if spec.lam(j) > eps]
    assert counting_above(spec, eps) == len(scan)
    assert scan == list(range(1, len(scan) + 1))


def test_mu_of_m_is_one_minus_lambda_of_b(half_pi):
    m = eigenvalues_hermitian(squared_toeplitz(half_pi, 12))
    b = eigenvalues_hermitian(b_exact(half_pi, 12))
    for j in range(1, 13):
        assert abs(m.mu(j) + b.lam(j) - 1) < 1e-12


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 64), seed=st.integers(0, 2**32 - 1), scale=st.floats(1e-6, 1.0))
def test_weyl_perturbation(n, seed, scale):
    rng = np.random.default_rng(seed)
    h, e = random_hermitian(rng, n), scale * random_hermitian(rng, n)
    shift = np.abs(eigenvalues_array(h + e) - eigenvalues_array(h))
    assert np.all(shift <= op_norm(e) + 1e-12 * (1 + op_norm(h)))


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 64), seed=st.integers(0, 2**32 - 1))
def test_trace_equals_eigenvalue_sum(n, seed):
    h = random_hermitian(np.random.default_rng(seed), n)
    norm = op_norm(h)
    assert abs(np.trace(h).real - eigenvalues_array(h).sum()) <= 1e-10 * n * max(norm, 1)
