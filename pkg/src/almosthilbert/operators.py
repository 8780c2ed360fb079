"""Truncated operators on B and their weighted-metric adjoints.

A BOperator is an N x N matrix acting on basis coefficients.  With Gram
matrix W = diag(t_n), the adjoint determined by h_inner(Au, v) =
h_inner(u, A*v) is the closed form A* = W^{-1} A^H W.  The similarity
M -> W^{1/2} M W^{-1/2} transports a coordinate matrix to the H metric,
where self-adjointness becomes ordinary Hermitian symmetry; polar and
spectral decompositions, norm checks, and the Courant-Fischer cross-check
all run through that transport.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import numerics
from .embedding import EmbeddingSpace, h_inner
from .report import VerificationReport, check_result, measured
from .spaces import GridFunction, coefficients, duality_map, lp_norm, pairing, reconstruct


@dataclass(frozen=True, eq=False)
class BOperator:
    matrix: np.ndarray
    space: EmbeddingSpace

    def __post_init__(self):
        m = numerics.as_matrix(self.matrix)
        n = self.space.dim
        if m.shape != (n, n):
            raise ValueError(f"matrix shape {m.shape} does not match truncation {n}")
        object.__setattr__(self, "matrix", m)

    def _require_same_space(self, other: "BOperator"):
        if other.space is not self.space and other.space.dim != self.space.dim:
            raise ValueError("operators live on different spaces")

    def __add__(self, other: "BOperator") -> "BOperator":
        self._require_same_space(other)
        return BOperator(self.matrix + other.matrix, self.space)

    def __sub__(self, other: "BOperator") -> "BOperator":
        self._require_same_space(other)
        return BOperator(self.matrix - other.matrix, self.space)

    def __matmul__(self, other: "BOperator") -> "BOperator":
        self._require_same_space(other)
        return BOperator(self.matrix @ other.matrix, self.space)

    def __mul__(self, scalar) -> "BOperator":
        return BOperator(complex(scalar) * self.matrix, self.space)

    __rmul__ = __mul__


def identity_operator(space: EmbeddingSpace) -> BOperator:
    return BOperator(np.eye(space.dim, dtype=np.complex128), space)


def apply_op(A: BOperator, u: GridFunction) -> GridFunction:
    """Act on a function through the truncation: synthesize M c(u)."""
    return reconstruct(A.matrix @ coefficients(u, A.space.basis), A.space.basis)


def h_matrix(A: BOperator) -> np.ndarray:
    """Transport to the H metric: W^{1/2} M W^{-1/2}."""
    sw = np.sqrt(A.space.weights)
    return A.matrix * (sw[:, None] / sw[None, :])


def from_h_matrix(mh: np.ndarray, space: EmbeddingSpace) -> BOperator:
    """Inverse transport W^{-1/2} M_H W^{1/2} back to coordinates."""
    sw = np.sqrt(space.weights)
    return BOperator(np.asarray(mh) * (sw[None, :] / sw[:, None]), space)


def adjoint(A: BOperator) -> BOperator:
    """A* = W^{-1} A^H W, the weighted conjugate transpose."""
    w = A.space.weights
    return BOperator(A.matrix.conj().T * (w[None, :] / w[:, None]), A.space)


def h_opnorm(A: BOperator) -> float:
    """Operator norm in the H metric: top singular value of the transport."""
    _, s, _ = numerics.svd(h_matrix(A))
    return float(s[0]) if s.size else 0.0


def b_opnorm_estimate(A: BOperator, p: float, restarts: int = 4, seed: int = 0) -> float:
    """Lower estimate of the operator norm in the coefficient p-norm model of B."""
    return numerics.opnorm_p_estimate(A.matrix, p, restarts=restarts, seed=seed)


def _rel_defect(lhs: np.ndarray, rhs: np.ndarray) -> float:
    scale = max(float(np.linalg.norm(lhs)), float(np.linalg.norm(rhs)), 1.0)
    return float(np.linalg.norm(lhs - rhs)) / scale


def adjoint_algebra_check(A: BOperator, B: BOperator, a: complex,
                          tol: float = 1e-10) -> VerificationReport:
    """The *-algebra identities: conjugate homogeneity, involution,
    additivity, anti-multiplicativity, and self-adjointness of A*A."""
    A._require_same_space(B)
    rep = VerificationReport(suite="adjoint-algebra")
    astar, bstar = adjoint(A), adjoint(B)
    cases = [
        ("adjoint-conjugate-homogeneity", adjoint(a * A).matrix, (np.conj(a) * astar).matrix),
        ("adjoint-involution", adjoint(astar).matrix, A.matrix),
        ("adjoint-additivity", adjoint(A + B).matrix, (astar + bstar).matrix),
        ("adjoint-anti-multiplicativity", adjoint(A @ B).matrix, (bstar @ astar).matrix),
        ("adjoint-product-selfadjoint", adjoint(astar @ A).matrix, (astar @ A).matrix),
    ]
    for name, lhs, rhs in cases:
        rep.add(check_result(name, _rel_defect(lhs, rhs), tol, samples=1, a=str(a)))
    return rep


def norm_inequality_report(A: BOperator, p: float, restarts: int = 4,
                           seed: int = 0) -> VerificationReport:
    """Norm products around A*A.

    In the H metric, ||A*A||_H = ||A||_H^2 is asserted.  In the coefficient
    p-norm model the chain ||A*A||_B <= ||A*||_B ||A||_B <= ||A||_B^2 is
    only reported: whether ||A*||_B <= ||A||_B holds for p != 2 is left
    open, so the ratios are measurements, not assertions.
    """
    rep = VerificationReport(suite="norm-inequality")
    astar = adjoint(A)
    prod = astar @ A
    nh_a = h_opnorm(A)
    nh_prod = h_opnorm(prod)
    viol = abs(nh_prod - nh_a**2) / max(1.0, nh_a**2)
    rep.add(check_result("hmetric-product-norm", viol, 1e-8, samples=1))
    nb_a = b_opnorm_estimate(A, p, restarts, seed)
    nb_astar = b_opnorm_estimate(astar, p, restarts, seed)
    nb_prod = b_opnorm_estimate(prod, p, restarts, seed)
    rep.add(
        measured("bnorm-a", nb_a, samples=1, p=p),
        measured("bnorm-astar-over-a", nb_astar / max(nb_a, 1e-300), samples=1, p=p),
        measured("bnorm-product-over-a-squared", nb_prod / max(nb_a**2, 1e-300), samples=1, p=p),
    )
    return rep


def is_naturally_selfadjoint(A: BOperator, tol: float = 1e-10) -> bool:
    return float(np.linalg.norm(A.matrix - adjoint(A).matrix)) <= tol


def is_normal(A: BOperator, tol: float = 1e-10) -> bool:
    astar = adjoint(A)
    comm = (A @ astar).matrix - (astar @ A).matrix
    return float(np.linalg.norm(comm)) <= tol


def is_unitary(U: BOperator, tol: float = 1e-10) -> bool:
    ustar = adjoint(U)
    eye = np.eye(U.space.dim)
    return (
        float(np.linalg.norm((U @ ustar).matrix - eye)) <= tol
        and float(np.linalg.norm((ustar @ U).matrix - eye)) <= tol
    )


def orthogonal_subspaces(us, vs, space: EmbeddingSpace, tol: float = 1e-10) -> bool:
    """True iff every u in us is H-orthogonal to every v in vs (both ways)."""
    us, vs = list(us), list(vs)
    if not us or not vs:
        raise ValueError("orthogonality needs nonempty vector sets")
    return all(abs(h_inner(v, u, space)) <= tol for u in us for v in vs)


def lax_check(T: BOperator, p: float, restarts: int = 4, seed: int = 0,
              tol: float = 1e-10) -> VerificationReport:
    """Checks for H-symmetric T: point-spectrum invariance under the
    H-metric symmetrization, plus the measured norm constant
    k-hat = ||T||_H^2 / ||T||_B^2 (the paper leaves k unquantified)."""
    mh = h_matrix(T)
    scale = max(1.0, float(np.linalg.norm(mh)))
    defect = float(np.linalg.norm(mh - mh.conj().T))
    if defect > tol * scale:
        raise ValueError(f"operator is not H-symmetric within tol: defect={defect:.3e}")
    sym = (mh + mh.conj().T) / 2.0
    eig = numerics.hermitian_eigen(sym)
    norm_h = float(np.max(np.abs(eig.values))) if eig.values.size else 0.0
    lam_b = numerics.general_eigenvalues(T.matrix)
    lam_h = np.sort_complex(eig.values.astype(np.complex128))
    lam_b_sorted = np.sort_complex(lam_b)
    gap = float(np.max(np.abs(lam_b_sorted - lam_h))) if lam_h.size else 0.0
    rep = VerificationReport(suite="lax")
    rep.add(check_result("lax-point-spectrum-invariance", gap / max(1.0, norm_h),
                         1e-8, samples=T.space.dim))
    norm_b = b_opnorm_estimate(T, p, restarts, seed)
    khat = norm_h**2 / max(norm_b**2, 1e-300)
    rep.add(
        measured("lax-hnorm", norm_h, samples=1),
        measured("lax-bnorm-estimate", norm_b, samples=restarts, p=p),
        measured("lax-constant-khat", khat, samples=1, p=p),
    )
    return rep


def self_conjugacy_check(A: BOperator, tgrid, tol: float = 1e-8) -> bool:
    """True iff exp(itA) is an H-metric isometry for each t in tgrid, both
    signs.  The isometry defect is evaluated exactly on the whole truncated
    space as ||E_H^H E_H - I||_F in the transported metric."""
    eye = np.eye(A.space.dim)
    for t in tgrid:
        for sign in (1.0, -1.0):
            e = numerics.matrix_exp(1j * sign * float(t) * A.matrix)
            eh = h_matrix(BOperator(e, A.space))
            if float(np.linalg.norm(eh.conj().T @ eh - eye)) > tol:
                return False
    return True


def polar_decompose(A: BOperator, tol: float = 1e-9) -> tuple[BOperator, BOperator]:
    """A = U T with T = (A*A)^{1/2} naturally self-adjoint nonnegative and
    U an H-metric partial isometry.  Computed by SVD in the H metric."""
    mh = h_matrix(A)
    uh, s, vh = numerics.svd(mh)
    t_h = (vh * s) @ vh.conj().T
    u_h = uh @ vh.conj().T
    U = from_h_matrix(u_h, A.space)
    T = from_h_matrix(t_h, A.space)
    resid = float(np.linalg.norm((U @ T).matrix - A.matrix))
    if resid > tol * max(1e-300, float(np.linalg.norm(A.matrix))):
        raise ArithmeticError(f"polar reconstruction residual {resid:.3e} exceeds tolerance")
    return U, T


@dataclass(frozen=True)
class SpectralDecomposition:
    eigenvalues: np.ndarray            # distinct cluster values, descending
    projections: tuple[BOperator, ...]  # H-orthogonal projections, one per cluster


def spectral_decompose(A: BOperator, tol: float = 1e-8) -> SpectralDecomposition:
    """Spectral resolution A = sum_j x_j P_j of a naturally self-adjoint
    operator.  Eigenvalues within relative gap 1e-8 are merged into one
    cluster so each projection is well defined under floating point."""
    if not is_naturally_selfadjoint(A, tol=tol):
        raise ValueError("spectral decomposition requires a naturally self-adjoint operator")
    mh = h_matrix(A)
    eig = numerics.hermitian_eigen((mh + mh.conj().T) / 2.0)
    vals, vecs = eig.values, eig.vectors
    scale = max(1.0, float(np.max(np.abs(vals))) if vals.size else 1.0)
    clusters: list[list[int]] = [[0]]
    for i in range(1, len(vals)):
        if abs(vals[i] - vals[clusters[-1][0]]) <= 1e-8 * scale:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    eigenvalues = []
    projections = []
    for idx in clusters:
        v = vecs[:, idx]
        p_h = v @ v.conj().T
        projections.append(from_h_matrix(p_h, A.space))
        eigenvalues.append(float(np.mean(vals[idx])))
    return SpectralDecomposition(np.array(eigenvalues), tuple(projections))


def minmax_eigenvalue(A: BOperator, k: int, trials: int = 8, seed: int = 0) -> float:
    """Courant-Fischer estimate of the k-th largest eigenvalue (1-based,
    counted with multiplicity) of a naturally self-adjoint operator, via
    randomized subspace iteration in the H metric: maximize over trial
    k-dimensional subspaces the minimal Rayleigh quotient."""
    n = A.space.dim
    if not 1 <= k <= n:
        raise ValueError(f"eigenvalue index k={k} out of range 1..{n}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    mh = h_matrix(A)
    sym = (mh + mh.conj().T) / 2.0
    shift = float(np.linalg.norm(sym)) + 1.0
    pos = sym + shift * np.eye(n)
    rng = np.random.default_rng(seed)
    best = -np.inf
    for _ in range(trials):
        x = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
        x, _ = np.linalg.qr(x)
        cand = -np.inf
        prev = np.inf
        for _ in range(2000):
            x, _ = np.linalg.qr(pos @ x)
            r = x.conj().T @ sym @ x
            ritz = numerics.hermitian_eigen((r + r.conj().T) / 2.0).values
            cand = float(ritz[-1])
            if abs(cand - prev) <= 1e-12 * max(1.0, abs(cand)):
                break
            prev = cand
        best = max(best, cand)
    return best


def rayleigh_compare(A: BOperator, psi: GridFunction, space: EmbeddingSpace):
    """Both Rayleigh-type quotients at psi and their gap.

    b_ratio uses the nonlinear duality bracket <A psi, J(psi-hat)> /
    <psi, J(psi-hat)>; h_ratio uses the H inner product.  The paper only
    claims the two are 'close', so this is a measurement.
    """
    p = space.basis.p
    bn = lp_norm(psi, p)
    if bn == 0.0:
        raise ValueError("rayleigh_compare requires psi != 0")
    psi_star = duality_map((1.0 / bn) * psi, p)
    a_psi = apply_op(A, psi)
    b_ratio = pairing(a_psi, psi_star) / pairing(psi, psi_star)
    h_ratio = h_inner(a_psi, psi, space) / h_inner(psi, psi, space)
    return b_ratio, h_ratio, abs(b_ratio - h_ratio)


def finite_difference_operator(a: GridFunction, b: GridFunction,
                               space: EmbeddingSpace) -> BOperator:
    """Projection onto the basis of the periodic central-difference model of
    a(x) u'' + x b(x) u'.  Requires Re a >= some epsilon > 0 (ellipticity)."""
    grid = space.basis.grid
    a._require_same_grid(grid)
    b._require_same_grid(grid)
    if grid.dim != 1:
        raise ValueError("finite differences are shipped for 1-D grids only")
    if float(np.min(a.values.real)) <= 0.0:
        raise ValueError("ellipticity violated: a(x) must be bounded below by a positive constant")
    h = grid.spacing[0]
    x = grid.midpoints()
    cols = []
    for m in space.basis.members:
        u = m.values
        d2 = (np.roll(u, -1) - 2.0 * u + np.roll(u, 1)) / h**2
        d1 = (np.roll(u, -1) - np.roll(u, 1)) / (2.0 * h)
        au = a.values * d2 + x * b.values * d1
        cols.append(coefficients(GridFunction(grid.box, au), space.basis))
    return BOperator(np.stack(cols, axis=1), space)
