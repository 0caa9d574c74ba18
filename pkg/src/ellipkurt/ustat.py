"""Fourth-order U-statistics over pairwise differences, and the kurtosis
estimator built from them.

For rows X_1, ..., X_n the three statistics average, over all ordered
quadruples (i, j, k, l) of distinct indices and with normalization
1 / (4 n (n-1) (n-2) (n-3)),

    t1 kernel: (||X_i - X_j||^2 - ||X_k - X_l||^2)^2
    t2 kernel: ||X_i - X_j||^2 * ||X_k - X_l||^2
    t3 kernel: ((X_i - X_j)^T (X_k - X_l))^2

and the kurtosis estimate is (t1 + t2 - 2 t3) / (t2 + 2 t3).

Two implementations are shipped. :func:`ustats_bruteforce` enumerates the
quadruples directly and is the reference oracle; it costs O(n^4 p) and is
only usable for small n. :func:`ustats_fast` evaluates the same sums in
O(n^2 p + n^2) through inclusion-exclusion on index coincidences; the
differential test between the two is the correctness argument for the
reduction, so the brute force is part of the public API rather than
test-only code (see :func:`ustats`).

Derivation of the fast path
---------------------------
Work with rows centered by the column mean (a no-op for all three kernels,
which only see differences, but it shrinks cancellation error). Let H be
the Gram matrix of the centered rows, g = diag(H), and
D_ij = g_i + g_j - 2 H_ij the squared distances. Because H is the Gram
matrix of centered rows, its row sums vanish, which collapses most cross
terms below. Write

    S1 = sum_{i != j} D_ij        S2 = sum_{i != j} D_ij^2
    Q  = sum_i (row sum of D)^2   W  = sum_{i,j} H_ij^2   t = sum_i g_i^2
    N  = n (n-1) (n-2) (n-3).

Every kernel vanishes when i == j or k == l, so extending a sum over
distinct quadruples to a free sum only adds tuples where the pairs {i, j}
and {k, l} overlap in one index (four patterns) or two (two patterns).
Subtracting those overlap sums gives

    sum_distinct D_ij D_kl = S1^2 - 4 Q + 2 S2
    sum_distinct (D_ij - D_kl)^2 = 2 (n-2)(n-3) S2 - 2 (S1^2 - 4 Q + 2 S2)

and, for the inner-product kernel e = H_ik - H_il - H_jk + H_jl (free sum
4 n^2 W; one-index overlaps 4 (n^2 t + 3 n W - S2); two-index overlaps
2 S2),

    sum_distinct e^2 = 4 n^2 (W - t) - 12 n W + 2 S2.

Dividing by 4N yields t1, t2, t3. The scalar reductions use math.fsum,
whose result is exact and independent of accumulation order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDataError, InsufficientSampleError, InvalidParameterError

__all__ = [
    "UStats",
    "KurtosisEstimate",
    "ustats_bruteforce",
    "ustats_fast",
    "ustats",
    "theta_hat",
    "estimate_kurtosis",
]

# Denominators below DEGENERACY_RTOL * max(|t1|, t2, 1) are treated as
# exact degeneracy (all rows coincident) rather than a small estimate.
DEGENERACY_RTOL = 1e-12


@dataclass(frozen=True)
class UStats:
    """The three fourth-order statistics plus sample metadata."""

    t1: float
    t2: float
    t3: float
    n: int
    p: int


@dataclass(frozen=True)
class KurtosisEstimate:
    """Kurtosis point estimate together with the statistics it came from."""

    theta_hat: float
    ustats: UStats


def _as_data_matrix(X) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise InvalidParameterError(f"data must be a 2-d matrix, got shape {X.shape}")
    if X.shape[0] < 4:
        raise InsufficientSampleError(
            f"need at least 4 observations for fourth-order statistics, got {X.shape[0]}"
        )
    if not np.all(np.isfinite(X)):
        raise InvalidParameterError("data contains non-finite values")
    return X


def ustats_bruteforce(X) -> UStats:
    """Reference evaluation by direct enumeration of distinct quadruples.

    O(n^4 p): every kernel value is recomputed from the raw rows, sharing
    no intermediate quantities with the fast path. Use for differential
    testing and small-sample verification only.
    """
    X = _as_data_matrix(X)
    n, p = X.shape
    acc1 = []
    acc2 = []
    acc3 = []
    for i, j, k, l in itertools.permutations(range(n), 4):
        d1 = X[i] - X[j]
        d2 = X[k] - X[l]
        a = float(d1 @ d1)
        b = float(d2 @ d2)
        c = float(d1 @ d2)
        acc1.append((a - b) ** 2)
        acc2.append(a * b)
        acc3.append(c * c)
    norm = 4.0 * n * (n - 1) * (n - 2) * (n - 3)
    return UStats(
        t1=math.fsum(acc1) / norm,
        t2=math.fsum(acc2) / norm,
        t3=math.fsum(acc3) / norm,
        n=n,
        p=p,
    )


def ustats_fast(X) -> UStats:
    """O(n^2 p + n^2) evaluation via the centered-Gram reduction.

    Agrees with :func:`ustats_bruteforce` to floating-point accuracy; the
    module docstring derives the identities.
    """
    X = _as_data_matrix(X)
    n, p = X.shape
    Xc = X - X.mean(axis=0)
    H = Xc @ Xc.T
    H = 0.5 * (H + H.T)
    g = np.diag(H).copy()
    D = g[:, None] + g[None, :] - 2.0 * H
    np.fill_diagonal(D, 0.0)

    S1 = math.fsum(D.ravel())
    S2 = math.fsum((D * D).ravel())
    row = D.sum(axis=1)
    Q = math.fsum(row * row)
    W = math.fsum((H * H).ravel())
    t = math.fsum(g * g)

    N = float(n * (n - 1) * (n - 2) * (n - 3))
    pair_products = S1 * S1 - 4.0 * Q + 2.0 * S2
    t2 = pair_products / (4.0 * N)
    t1 = ((n - 2) * (n - 3) * S2 - pair_products) / (2.0 * N)
    t3 = (2.0 * n * n * (W - t) - 6.0 * n * W + S2) / (2.0 * N)
    return UStats(t1=t1, t2=t2, t3=t3, n=n, p=p)


def ustats(X, method: str = "fast") -> UStats:
    """Dispatch between the fast path and the reference path.

    ``method="reference"`` selects the O(n^4 p) brute force; anything the
    production code consumes goes through ``method="fast"``.
    """
    if method == "fast":
        return ustats_fast(X)
    if method == "reference":
        return ustats_bruteforce(X)
    raise InvalidParameterError(f"method must be 'fast' or 'reference', got {method!r}")


def theta_hat(u: UStats) -> KurtosisEstimate:
    """Kurtosis estimate (t1 + t2 - 2 t3) / (t2 + 2 t3).

    Raises :class:`DegenerateDataError` when the denominator is below
    DEGENERACY_RTOL * max(|t1|, t2, 1), which happens exactly when all
    observations (nearly) coincide.
    """
    den = u.t2 + 2.0 * u.t3
    if den <= DEGENERACY_RTOL * max(abs(u.t1), u.t2, 1.0):
        raise DegenerateDataError(
            "denominator t2 + 2 t3 is numerically zero; data are degenerate"
        )
    return KurtosisEstimate(theta_hat=(u.t1 + u.t2 - 2.0 * u.t3) / den, ustats=u)


def estimate_kurtosis(X, method: str = "fast") -> KurtosisEstimate:
    """Convenience wrapper: statistics plus point estimate in one call."""
    return theta_hat(ustats(X, method=method))
