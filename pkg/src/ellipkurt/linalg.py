"""Dense symmetric-matrix utilities.

Covariance construction, PSD square roots, trace powers and Gram matrices.
Everything is dense: the simulation settings top out around p = 1600, well
within dense-eigendecomposition territory.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError, NotPSDError

# Eigenvalues below -PSD_CLAMP_TOL * ||M||_2 mean the input is not PSD;
# anything in (-tol * ||M||_2, 0) is treated as rounding noise and clamped.
PSD_CLAMP_TOL = 1e-8


@dataclass(frozen=True)
class TracePowers:
    """Traces of the first four powers of a symmetric matrix."""

    t1: float
    t2: float
    t3: float
    t4: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.t1, self.t2, self.t3, self.t4)


def check_symmetric(M, name: str = "matrix") -> np.ndarray:
    """Validate a dense, exactly symmetric, square float matrix."""
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 1:
        raise InvalidParameterError(
            f"{name} must be a square matrix with dim >= 1, got shape {M.shape}"
        )
    if not np.array_equal(M, M.T):
        raise InvalidParameterError(f"{name} must be exactly symmetric")
    return M


def symmetrize(M: np.ndarray) -> np.ndarray:
    """Average a nearly symmetric matrix with its transpose.

    Products such as ``X @ X.T`` are symmetric in exact arithmetic but BLAS
    may round the (i, j) and (j, i) entries differently; this restores the
    exact symmetry the rest of the package requires.
    """
    return 0.5 * (M + M.T)


def toeplitz_ar1(p: int, rho: float) -> np.ndarray:
    """AR(1) Toeplitz covariance: entry (j, k) equals rho**|j - k|.

    Positive definite for |rho| < 1.

    Parameters
    ----------
    p : int
        Dimension, at least 1.
    rho : float
        Off-diagonal decay, must satisfy |rho| < 1.
    """
    if p < 1:
        raise InvalidParameterError(f"p must be >= 1, got {p}")
    if not abs(rho) < 1:
        raise InvalidParameterError(f"|rho| must be < 1, got {rho}")
    idx = np.arange(p)
    return float(rho) ** np.abs(np.subtract.outer(idx, idx)).astype(float)


def sqrt_psd(M) -> np.ndarray:
    """Symmetric PSD square root via eigendecomposition.

    Eigenvalues in (-tol * ||M||_2, 0) are clamped to zero; anything more
    negative raises :class:`NotPSDError`. The returned root R is exactly
    symmetric and satisfies R @ R == M up to rounding.
    """
    M = check_symmetric(M)
    evals, evecs = np.linalg.eigh(M)
    scale = max(abs(float(evals[0])), abs(float(evals[-1])))
    if float(evals[0]) < -PSD_CLAMP_TOL * scale:
        raise NotPSDError(
            f"matrix is not PSD: smallest eigenvalue {evals[0]:.3e} "
            f"below -{PSD_CLAMP_TOL:.0e} * ||M||"
        )
    root = (evecs * np.sqrt(np.clip(evals, 0.0, None))) @ evecs.T
    return symmetrize(root)


def trace_powers(M) -> TracePowers:
    """Traces of M, M^2, M^3, M^4 for symmetric M.

    Only one matrix product is formed: with S = M @ M,

        tr M^3 = <M, S>_F    and    tr M^4 = ||S||_F^2,

    which avoids the extra O(p^3) multiplications for the cubic and quartic
    powers.
    """
    M = check_symmetric(M)
    S = M @ M
    return TracePowers(
        t1=float(np.trace(M)),
        t2=float(np.trace(S)),
        t3=float(np.sum(M * S)),
        t4=float(np.sum(S * S)),
    )


def gram(X) -> np.ndarray:
    """Gram matrix of the rows of X: entry (i, j) is the inner product of
    rows i and j. Output is exactly symmetric."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] < 1:
        raise InvalidParameterError(f"X must be a nonempty 2-d matrix, got shape {X.shape}")
    return symmetrize(X @ X.T)
