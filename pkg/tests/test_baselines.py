import numpy as np
import pytest

from ellipkurt import (
    ChiSquared,
    DegenerateDataError,
    EllipticalSpec,
    SingularMatrixError,
    oracle_theta,
    sample_data,
    sample_sphere,
    toeplitz_ar1,
    wl_theta,
)


class ConstantRadius:
    """Test stub: xi identically sqrt(p)."""

    def __init__(self, p):
        self.p = p

    family = "const_stub"

    def sample_squared(self, rng, size=None):
        return np.full(size if size is not None else (), float(self.p))


def test_oracle_constant_radius_exact():
    # With xi^2 == p, every Mahalanobis norm is exactly p, so the
    # estimator equals p / (p + 2) deterministically.
    p, n = 8, 20
    spec = EllipticalSpec.create(np.zeros(p), np.eye(p), ConstantRadius(p))
    X = sample_data(spec, n, np.random.default_rng(0))
    got = oracle_theta(X, np.zeros(p), np.eye(p))
    assert got == pytest.approx(p / (p + 2), rel=1e-12)


def test_oracle_affine_invariance():
    rng = np.random.default_rng(1)
    p, n = 6, 40
    sigma = toeplitz_ar1(p, 0.5)
    mu = rng.normal(size=p)
    spec = EllipticalSpec.create(mu, sigma, ChiSquared(p=p))
    X = sample_data(spec, n, rng)
    A = rng.normal(size=(p, p)) + 3 * np.eye(p)
    sigma_t = A @ sigma @ A.T
    sigma_t = 0.5 * (sigma_t + sigma_t.T)
    a = oracle_theta(X, mu, sigma)
    b = oracle_theta(X @ A.T, A @ mu, sigma_t)
    assert b == pytest.approx(a, rel=1e-8)


def test_oracle_precomputed_cholesky():
    rng = np.random.default_rng(2)
    p = 5
    sigma = toeplitz_ar1(p, 0.5)
    spec = EllipticalSpec.create(np.zeros(p), sigma, ChiSquared(p=p))
    X = sample_data(spec, 30, rng)
    chol = np.linalg.cholesky(sigma)
    assert oracle_theta(X, np.zeros(p), sigma) == pytest.approx(
        oracle_theta(X, np.zeros(p), None, chol=chol), rel=1e-14
    )


def test_oracle_singular_sigma():
    X = np.random.default_rng(3).normal(size=(10, 3))
    singular = np.ones((3, 3))
    with pytest.raises(SingularMatrixError):
        oracle_theta(X, np.zeros(3), singular)


def test_oracle_near_one_for_normal():
    p, n = 50, 200
    sigma = toeplitz_ar1(p, 0.5)
    spec = EllipticalSpec.create(np.zeros(p), sigma, ChiSquared(p=p))
    X = sample_data(spec, n, np.random.default_rng(4))
    assert oracle_theta(X, np.zeros(p), sigma) == pytest.approx(1.0, abs=0.15)


def test_wl_identical_rows():
    X = np.tile(np.array([1.0, 2.0]), (8, 1))
    with pytest.raises(DegenerateDataError):
        wl_theta(X)


def test_wl_scale_invariance():
    rng = np.random.default_rng(5)
    X = rng.normal(size=(30, 6))
    a = wl_theta(X)
    for s in (0.01, 7.0, 1e3):
        assert wl_theta(s * X) == pytest.approx(a, rel=1e-10)


def test_wl_location_invariance():
    rng = np.random.default_rng(6)
    X = rng.normal(size=(25, 4))
    assert wl_theta(X + np.array([5.0, -3.0, 100.0, 0.25])) == pytest.approx(
        wl_theta(X), rel=1e-8
    )


def test_wl_near_one_for_normal():
    p, n = 100, 100
    sigma = toeplitz_ar1(p, 0.5)
    spec = EllipticalSpec.create(np.zeros(p), sigma, ChiSquared(p=p))
    vals = []
    for rep in range(20):
        X = sample_data(spec, n, np.random.default_rng(1000 + rep))
        vals.append(wl_theta(X))
    assert abs(np.mean(vals) - 1.0) <= 0.05
