"""Closed-form moment oracles.

Expectations of quadratic forms in a uniform unit-sphere vector, exact
moments E xi^{2m} for the shipped squared-radius laws, and the variance of
the squared norm of a centered elliptical vector around two different
centerings. These serve as ground truth for the Monte-Carlo property tests
and the validation suites.

Throughout, eta_m denotes E xi^{2m} divided by the m-th moment of a
chi-squared variable with p degrees of freedom, so eta_1 = 1 under the
E xi^2 = p normalization and eta_2 is the kurtosis parameter.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import InvalidParameterError, MomentDoesNotExistError
from .linalg import check_symmetric, trace_powers
from .models import ChiSquared, ExpChiProduct, KotzHalf, ScaledF, XiLaw

__all__ = [
    "sphere_moment_1",
    "sphere_moment_2",
    "sphere_moment_3",
    "sphere_moment_4",
    "chi2_moment",
    "xi_moment",
    "eta",
    "var_quadform",
    "var_centered_sq",
]


def sphere_moment_1(A) -> float:
    """E[u' A u] = tr A / p for u uniform on the unit sphere."""
    A = check_symmetric(A, "A")
    p = A.shape[0]
    return float(np.trace(A)) / p


def sphere_moment_2(A, B) -> float:
    """E[(u' A u)(u' B u)] = (tr A tr B + 2 tr AB) / (p (p + 2))."""
    A = check_symmetric(A, "A")
    B = check_symmetric(B, "B")
    p = A.shape[0]
    if B.shape[0] != p:
        raise InvalidParameterError(f"dimension mismatch: {p} vs {B.shape[0]}")
    num = float(np.trace(A)) * float(np.trace(B)) + 2.0 * float(np.sum(A * B))
    return num / (p * (p + 2))


def sphere_moment_3(A, B, C) -> float:
    """Third mixed moment of quadratic forms in a sphere vector.

    (tr A tr B tr C + 2 tr A tr BC + 2 tr B tr AC + 2 tr C tr AB + 8 tr ABC)
    divided by p (p + 2) (p + 4).
    """
    A = check_symmetric(A, "A")
    B = check_symmetric(B, "B")
    C = check_symmetric(C, "C")
    p = A.shape[0]
    if B.shape[0] != p or C.shape[0] != p:
        raise InvalidParameterError(
            f"dimension mismatch: {p}, {B.shape[0]}, {C.shape[0]}"
        )
    ta, tb, tc = (float(np.trace(M)) for M in (A, B, C))
    tab = float(np.sum(A * B))
    tac = float(np.sum(A * C))
    tbc = float(np.sum(B * C))
    tabc = float(np.trace(A @ B @ C))
    num = ta * tb * tc + 2.0 * (ta * tbc + tb * tac + tc * tab) + 8.0 * tabc
    return num / (p * (p + 2) * (p + 4))


def sphere_moment_4(A) -> float:
    """E[(u' A u)^4] for u uniform on the unit sphere.

    (tr^4 A + 12 tr^2 A tr A^2 + 12 tr^2 A^2 + 32 tr A tr A^3 + 48 tr A^4)
    divided by p (p + 2) (p + 4) (p + 6).
    """
    A = check_symmetric(A, "A")
    p = A.shape[0]
    tp = trace_powers(A)
    num = (
        tp.t1**4
        + 12.0 * tp.t1**2 * tp.t2
        + 12.0 * tp.t2**2
        + 32.0 * tp.t1 * tp.t3
        + 48.0 * tp.t4
    )
    return num / (p * (p + 2) * (p + 4) * (p + 6))


def chi2_moment(p: int, m: int) -> float:
    """m-th moment of a chi-squared variable with p degrees of freedom:
    p (p + 2) ... (p + 2m - 2)."""
    out = 1.0
    for j in range(1, m + 1):
        out *= p + 2 * j - 2
    return out


def _check_order(m: int) -> None:
    if not isinstance(m, (int, np.integer)) or not 1 <= m <= 4:
        raise InvalidParameterError(f"moment order must be an integer in 1..4, got {m!r}")


def xi_moment(law: XiLaw, m: int) -> float:
    """Exact E xi^{2m} for a shipped law, m in 1..4.

    ScaledF only has moments of order m < d/2; higher orders raise
    :class:`MomentDoesNotExistError`. Gamma-function ratios are evaluated
    through log-gamma differences so large dimensions do not overflow.
    """
    _check_order(m)
    if isinstance(law, ChiSquared):
        return chi2_moment(law.p, m)
    if isinstance(law, KotzHalf):
        out = 1.0
        for j in range(1, 2 * m + 1):
            out *= law.p + j - 1
        return out / (law.p + 1) ** m
    if isinstance(law, ScaledF):
        if 2 * m >= law.d:
            raise MomentDoesNotExistError(
                f"E xi^{2 * m} is infinite for ScaledF with d={law.d} (needs d > {2 * m})"
            )
        log_val = (
            m * math.log(law.d - 2)
            + math.lgamma(law.p / 2 + m)
            - math.lgamma(law.p / 2)
            + math.lgamma(law.d / 2 - m)
            - math.lgamma(law.d / 2)
        )
        return math.exp(log_val)
    if isinstance(law, ExpChiProduct):
        return math.factorial(m) * chi2_moment(law.p, m)
    moment = getattr(law, "moment", None)
    if callable(moment):
        return float(moment(m))
    raise InvalidParameterError(f"no moment formula known for law {law!r}")


def eta(law: XiLaw, m: int) -> float:
    """Normalized moment E xi^{2m} / E Y^m with Y chi-squared(p).

    eta(law, 1) == 1 for every correctly normalized law and eta(law, 2)
    is the kurtosis parameter.
    """
    _check_order(m)
    return xi_moment(law, m) / chi2_moment(law.p, m)


def var_quadform(sigma, law: XiLaw) -> float:
    """Variance of ||X0||^2 for a centered elliptical vector X0 with
    covariance-scale sigma: 2 theta tr sigma^2 + (theta - 1) tr^2 sigma."""
    sigma = check_symmetric(sigma, "sigma")
    theta = eta(law, 2)
    tp = trace_powers(sigma)
    return 2.0 * theta * tp.t2 + (theta - 1.0) * tp.t1**2


def var_centered_sq(sigma, law: XiLaw, center: str = "trace") -> float:
    """Variance of (||X0||^2 - c)^2 for a centered elliptical vector.

    ``center="trace"`` uses c = tr sigma (the mean of ||X0||^2);
    ``center="theta_trace"`` uses c = theta * tr sigma. Both are degree-4
    polynomials in the trace powers of sigma with coefficients in
    eta_2, eta_3, eta_4; evaluating them needs moments through
    E xi^8 (so ScaledF requires d > 8).

    The coefficient sets follow from expanding E(||X0||^2 - c)^4 and
    E(||X0||^2 - c)^2 through the sphere quadratic-form moments, using
    E(||X0||^2)^k = eta_k * (tr-power polynomial of order k).
    """
    sigma = check_symmetric(sigma, "sigma")
    e2 = eta(law, 2)
    e3 = eta(law, 3)
    e4 = eta(law, 4)
    if center == "trace":
        r1 = e4 - 4.0 * e3 - e2 * e2 + 8.0 * e2 - 4.0
        r2 = 4.0 * (3.0 * e4 - 6.0 * e3 - e2 * e2 + 4.0 * e2)
        r4 = 32.0 * (e4 - e3)
    elif center == "theta_trace":
        r1 = e4 - 4.0 * e3 * e2 - e2 * e2 + 4.0 * e2**3
        r2 = 4.0 * (3.0 * e4 - 6.0 * e3 * e2 + 2.0 * e2**3 + e2 * e2)
        r4 = 32.0 * (e4 - e3 * e2)
    else:
        raise InvalidParameterError(
            f"center must be 'trace' or 'theta_trace', got {center!r}"
        )
    r3 = 4.0 * (3.0 * e4 - e2 * e2)
    r5 = 48.0 * e4
    tp = trace_powers(sigma)
    return (
        r1 * tp.t1**4
        + r2 * tp.t1**2 * tp.t2
        + r3 * tp.t2**2
        + r4 * tp.t1 * tp.t3
        + r5 * tp.t4
    )
