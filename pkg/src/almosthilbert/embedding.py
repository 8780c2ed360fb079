"""The natural Hilbert space over a Schauder basis.

Given basis coefficients c_n(u) = <E_n*, u> and weights t_n = 2^{-n}, the
inner product is (u, v)_H = sum_n t_n c_n(u) conj(c_n(v)).  At truncation N
the geometry of H is entirely the diagonal Gram matrix diag(t_1..t_N) on
coefficient space; the completion is never materialized.  The linear dual
representation J_B sends u to the functional v -> (v, u)_H.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spaces import GridFunction, SchauderBasis, coefficients, lp_norm, reconstruct


def dyadic_weights(N: int) -> np.ndarray:
    """t_n = 2^{-n} for n = 1..N; exact dyadic floats."""
    return 2.0 ** -np.arange(1, N + 1)


@dataclass(frozen=True, eq=False)
class EmbeddingSpace:
    basis: SchauderBasis
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.shape != (len(self.basis),):
            raise ValueError("weights must match the basis length")
        if not np.all(w > 0):
            raise ValueError("weights must be positive")
        if not w.sum() < 1.0:
            raise ValueError("partial weight sum must stay below 1")
        object.__setattr__(self, "weights", w)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def weight_tail(self) -> float:
        """Upper bound 2^{-N} on the truncated weight tail sum."""
        return 2.0 ** -self.dim


def embedding_space(basis: SchauderBasis, weights=None) -> EmbeddingSpace:
    """Wrap a basis with weights (default: the dyadic schedule 2^{-n})."""
    if weights is None:
        weights = dyadic_weights(len(basis))
    return EmbeddingSpace(basis=basis, weights=weights)


def coeff_inner(space: EmbeddingSpace, cu: np.ndarray, cv: np.ndarray) -> complex:
    """Weighted inner product of two coefficient vectors."""
    return complex(np.sum(space.weights * cu * np.conj(cv)))


def h_inner(u: GridFunction, v: GridFunction, space: EmbeddingSpace) -> complex:
    """(u, v)_H = sum_n t_n <E_n*, u> conj(<E_n*, v>)."""
    cu = coefficients(u, space.basis)
    cv = coefficients(v, space.basis)
    return coeff_inner(space, cu, cv)


def h_norm(u: GridFunction, space: EmbeddingSpace) -> float:
    cu = coefficients(u, space.basis)
    return float(np.sqrt(np.sum(space.weights * np.abs(cu) ** 2)))


def gram_matrix(space: EmbeddingSpace) -> np.ndarray:
    """G_mk = h_inner(E_m, E_k); diagonal diag(t_n) up to quadrature error."""
    c = np.stack(
        [coefficients(m, space.basis) for m in space.basis.members], axis=1
    )  # c[n, m] = <E_n*, E_m>
    return c.T @ (space.weights[:, None] * np.conj(c))


@dataclass(frozen=True, eq=False)
class DualFunctional:
    """The functional v -> (v, representer)_H; additive and conjugate-
    homogeneous in the representer."""

    representer: GridFunction
    space: EmbeddingSpace


def jb_apply(u: GridFunction, space: EmbeddingSpace) -> DualFunctional:
    """J_B(u): the Hilbert-space representation of a dual element."""
    u._require_same_grid(space.basis.grid)
    return DualFunctional(representer=u, space=space)


def evaluate(F: DualFunctional, v: GridFunction) -> complex:
    """Apply a dual functional: <v, J_B(u)> = (v, u)_H."""
    return h_inner(v, F.representer, F.space)


def jb_norm_bound(
    u: GridFunction, space: EmbeddingSpace, probes: int = 50, seed: int = 0
) -> tuple[float, float, float]:
    """Estimate the dual norm of J_B(u) and return it with ||u||_H, ||u||_B.

    The estimate is max |(v, u)_H| / ||v||_B over random trig-polynomial
    probes v, a lower bound on the true functional norm.  The chain
    estimate <= ||u||_H <= ||u||_B from the embedding theorem is what the
    verification suite asserts against these values.
    """
    if probes < 1:
        raise ValueError("probes must be >= 1")
    F = jb_apply(u, space)
    hn = h_norm(u, space)
    bn = lp_norm(u, space.basis.p)
    rng = np.random.default_rng(seed)
    N = space.dim
    best = 0.0
    for _ in range(probes):
        c = rng.standard_normal(N) + 1j * rng.standard_normal(N)
        v = reconstruct(c, space.basis)
        denom = lp_norm(v, space.basis.p)
        if denom == 0.0:
            continue
        best = max(best, abs(evaluate(F, v)) / denom)
    return best, hn, bn


def gram_schmidt_biorthonormal(
    vectors, space: EmbeddingSpace
) -> tuple[tuple[GridFunction, ...], tuple[DualFunctional, ...]]:
    """H-orthogonalize, normalize in B, and build biorthonormal duals.

    Returns (psi, psi*) with psi_i of unit B-norm and the pairing
    evaluate(psi*_j, psi_i) = delta_ij.  Linearly dependent input (in the
    truncated H metric) raises with the offending index.
    """
    vectors = list(vectors)
    if not vectors:
        raise ValueError("need at least one vector")
    phis: list[GridFunction] = []
    for i, v in enumerate(vectors):
        phi = v
        for prev in phis:
            coef = h_inner(phi, prev, space) / h_inner(prev, prev, space)
            phi = phi - coef * prev
        if h_norm(phi, space) <= 1e-6 * max(h_norm(v, space), 1e-300):
            raise ValueError(f"rank deficiency at index {i}: vector is H-dependent on its predecessors")
        phis.append(phi)
    psis = []
    duals = []
    for phi in phis:
        bn = lp_norm(phi, space.basis.p)
        hn2 = np.real(h_inner(phi, phi, space))
        psis.append((1.0 / bn) * phi)
        duals.append(DualFunctional(representer=(bn / hn2) * phi, space=space))
    return tuple(psis), tuple(duals)
