"""Dense complex linear algebra kernels used by every other module.

Thin, validating wrappers around LAPACK factorizations (via numpy/scipy)
plus a hand-rolled power method for induced matrix p-norms.  All functions
are pure: no global state, randomness only through an explicit seed.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np
import scipy.linalg


class EigenResult(NamedTuple):
    values: np.ndarray   # real, sorted descending
    vectors: np.ndarray  # columns orthonormal, vectors[:, k] pairs with values[k]


def as_matrix(m) -> np.ndarray:
    """Validate and return a dense 2-D complex128 matrix.

    Rejects non-2-D input and non-finite entries.
    """
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={a.ndim}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def hermitian_eigen(m, tol: float = 1e-12) -> EigenResult:
    """Full spectral decomposition of a Hermitian matrix, eigenvalues descending.

    ``m`` must be square and Hermitian within ``tol`` (relative Frobenius).
    The reconstruction ``V diag(w) V^H`` is checked against ``m`` before
    returning; failure to reproduce the input within ``10 * tol`` is raised
    rather than silently returned.
    """
    a = as_matrix(m)
    n, nc = a.shape
    if n != nc:
        raise ValueError("hermitian_eigen requires a square matrix")
    if tol <= 0:
        raise ValueError("tol must be positive")
    scale = max(1.0, float(np.linalg.norm(a)))
    herm_defect = float(np.linalg.norm(a - a.conj().T))
    if herm_defect > tol * scale:
        raise ValueError(f"matrix is not Hermitian within tol: defect={herm_defect:.3e}")
    try:
        w, v = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise ArithmeticError(f"eigen iteration failed to converge: {exc}") from exc
    order = np.argsort(w)[::-1]
    w, v = w[order], v[:, order]
    resid = float(np.linalg.norm((v * w) @ v.conj().T - a))
    if resid > 10.0 * tol * scale:
        raise ArithmeticError(f"eigen reconstruction residual {resid:.3e} exceeds tolerance")
    return EigenResult(values=w, vectors=v)


def svd(m, tol: float = 1e-12) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Singular value decomposition M = U diag(s) V^H with s descending.

    Returns (U, s, V); note V, not V^H.  Reconstruction is verified to
    ``10 * tol * ||M||_F``.
    """
    a = as_matrix(m)
    if tol <= 0:
        raise ValueError("tol must be positive")
    try:
        u, s, vh = np.linalg.svd(a, full_matrices=False)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise ArithmeticError(f"svd failed to converge: {exc}") from exc
    scale = max(1.0, float(np.linalg.norm(a)))
    resid = float(np.linalg.norm((u * s) @ vh - a))
    if resid > 10.0 * tol * scale:
        raise ArithmeticError(f"svd reconstruction residual {resid:.3e} exceeds tolerance")
    return u, s, vh.conj().T


def general_eigenvalues(m) -> np.ndarray:
    """Eigenvalues of a general square matrix, with algebraic multiplicity.

    Sorted by descending modulus (ties by real part, then imaginary part)
    so the multiset has a stable presentation.  The eigenvalue sum is
    checked against the trace.
    """
    a = as_matrix(m)
    n, nc = a.shape
    if n != nc:
        raise ValueError("general_eigenvalues requires a square matrix")
    lam = np.linalg.eigvals(a)
    order = np.lexsort((lam.imag, lam.real, -np.abs(lam)))
    lam = lam[order]
    scale = max(1.0, float(np.linalg.norm(a)))
    gap = abs(lam.sum() - np.trace(a))
    if gap > 1e-10 * scale:
        raise ArithmeticError(f"eigenvalue sum misses the trace by {gap:.3e}")
    return lam


def matrix_exp(m) -> np.ndarray:
    """Matrix exponential e^M (scaling-and-squaring Pade approximation)."""
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError("matrix_exp requires a square matrix")
    e = scipy.linalg.expm(a)
    if not np.all(np.isfinite(e)):
        raise OverflowError("matrix exponential overflowed; input norm too extreme")
    return e


def vector_pnorm(x: np.ndarray, p: float) -> float:
    """The l^p norm of a vector, p in [1, inf]."""
    x = np.asarray(x)
    if p == np.inf:
        return float(np.max(np.abs(x))) if x.size else 0.0
    if p < 1:
        raise ValueError("p must be >= 1")
    return float(np.sum(np.abs(x) ** p) ** (1.0 / p))


def _dual_vector(y: np.ndarray, p: float) -> np.ndarray:
    # Unit-q-norm vector z with <z, y> = ||y||_p (Hoelder equality case).
    ay = np.abs(y)
    ny = vector_pnorm(y, p)
    if ny == 0.0:
        return np.zeros_like(y)
    sign = np.where(ay > 0, y / np.where(ay > 0, ay, 1.0), 0.0)
    return (ay / ny) ** (p - 1.0) * sign


def opnorm_p_estimate(m, p: float, restarts: int = 4, seed: int = 0) -> float:
    """Lower-bound estimate of the induced p -> p matrix norm.

    p = 1 and p = inf use the exact column/row-sum formulas.  Finite p > 1
    runs the Boyd/Higham power method from ``restarts`` random starting
    vectors and returns the best fixed-point value reached.  Every returned
    value is ||M x||_p for some unit x, hence a valid lower bound on the
    true norm; it is exact for p in {1, 2, inf} up to iteration tolerance.
    Deterministic for a fixed seed.
    """
    a = as_matrix(m)
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    if p == 1:
        return float(np.max(np.sum(np.abs(a), axis=0)))
    if p == np.inf:
        return float(np.max(np.sum(np.abs(a), axis=1)))
    if p < 1:
        raise ValueError("p must be >= 1 or inf")
    n = a.shape[1]
    q = p / (p - 1.0)
    ah = a.conj().T
    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(restarts):
        x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        x /= vector_pnorm(x, p)
        est = 0.0
        for _ in range(5000):
            y = a @ x
            est = vector_pnorm(y, p)
            if est == 0.0:
                break
            z = ah @ _dual_vector(y, p)
            # Stationarity test: ||z||_q <= Re<x, z> signals a fixed point.
            if vector_pnorm(z, q) <= np.real(np.vdot(x, z)) + 1e-13 * max(est, 1.0):
                break
            x = _dual_vector(z, q)
        best = max(best, est)
    return best
