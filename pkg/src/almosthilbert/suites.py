"""Named verification suites over the whole library.

Every "invariant" of the individual modules is packaged here as a named
check: a function that draws its own random instances, measures the worst
violation, and compares it against the declared tolerance.  Checks are
grouped into suites (embedding, adjoint, schatten, ks2, integral), and the
four quantities the underlying theory leaves unquantified (the equivalence
constant k-hat, the ratio ||A*||_B/||A||_B for p != 2, the Hilbert-transform
L^p constant, and the Rayleigh-quotient gap) ride along with *every* suite
as measured-only entries.

Determinism: the master seed is split into independent per-check streams by
hashing the check name, so adding or removing one check never perturbs the
randomness of the others and a (suite, seed, params) triple always produces
the identical report.  Checks share no mutable state, so they could run
concurrently; the report is order-stable regardless because rendering sorts
by check name.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass

import numpy as np

from . import integrals, ks2, numerics, schatten
from .embedding import (
    EmbeddingSpace,
    embedding_space,
    evaluate,
    gram_matrix,
    gram_schmidt_biorthonormal,
    h_inner,
    h_norm,
    jb_apply,
)
from .operators import (
    BOperator,
    adjoint,
    adjoint_algebra_check,
    apply_op,
    b_opnorm_estimate,
    from_h_matrix,
    h_matrix,
    h_opnorm,
    is_naturally_selfadjoint,
    lax_check,
    minmax_eigenvalue,
    polar_decompose,
    rayleigh_compare,
    self_conjugacy_check,
    spectral_decompose,
)
from .report import CheckResult, VerificationReport, check_result, measured
from .spaces import (
    GridFunction,
    coefficients,
    duality_map,
    fourier_sbasis,
    lp_norm,
    pairing,
    reconstruct,
)

SUITE_NAMES = ("embedding", "adjoint", "schatten", "ks2", "integral", "all")

P_SWEEP = (1.5, 2.0, 3.0, 4.0)


@dataclass(frozen=True)
class SuiteParams:
    """Knobs shared by all checks; every field has a desk-scale default."""

    dim: int = 8
    grid: int = 256
    p: float = 3.0
    q: float = 2.0
    alpha: float = 0.5
    trials: int = 100
    tol: float = 1.0
    cubes: int = 64

    def __post_init__(self):
        if not 1 <= self.dim <= 64:
            raise ValueError(f"dim must lie in 1..64, got {self.dim}")
        g = self.grid
        if g < 16 or g > 16384 or (g & (g - 1)) != 0:
            raise ValueError(f"grid must be a power of two in 16..16384, got {g}")
        if not (1.0 < self.p < np.inf):
            raise ValueError(f"p must lie in (1, inf), got {self.p}")
        if not self.q >= 1.0:
            raise ValueError(f"q must be >= 1, got {self.q}")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not 1 <= self.trials <= 100000:
            raise ValueError(f"trials must lie in 1..100000, got {self.trials}")
        if not self.tol > 0.0:
            raise ValueError(f"tol scale must be positive, got {self.tol}")
        if not 8 <= self.cubes <= 4096:
            raise ValueError(f"cubes must lie in 8..4096, got {self.cubes}")


def check_seed(master: int, name: str) -> int:
    """Stable per-check seed: hash of the master seed and the check name."""
    digest = hashlib.sha256(f"{master}:{name}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


# registry: check name -> (suite name or "*" for every suite, function)
_REGISTRY: dict[str, tuple[str, object]] = {}


def _check(name: str, suite: str):
    def deco(fn):
        if name in _REGISTRY:
            raise RuntimeError(f"duplicate check name {name!r}")
        _REGISTRY[name] = (suite, fn)
        return fn

    return deco


def _count(params: SuiteParams, nominal: int) -> int:
    """Scale a nominal sample count by the trials knob (100 = nominal)."""
    return max(1, (nominal * params.trials) // 100)


def _space(params: SuiteParams, p: float | None = None,
           dim: int | None = None) -> EmbeddingSpace:
    n = params.dim if dim is None else dim
    resolution = max(64, 8 * n, params.grid)
    return embedding_space(fourier_sbasis(n, params.p if p is None else p, resolution))


def _rand_coeffs(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def _rand_poly(space: EmbeddingSpace, rng) -> GridFunction:
    return reconstruct(_rand_coeffs(rng, space.dim), space.basis)


def _rand_operator(space: EmbeddingSpace, rng) -> BOperator:
    return BOperator(_rand_coeffs(rng, space.dim, space.dim) / np.sqrt(space.dim), space)


def _rand_selfadjoint(space: EmbeddingSpace, rng) -> BOperator:
    a = _rand_coeffs(rng, space.dim, space.dim)
    return from_h_matrix(a + a.conj().T, space)


def _rand_step(rng, resolution: int, levels: int = 8) -> GridFunction:
    vals = _rand_coeffs(rng, levels)
    return GridFunction(((0.0, 1.0),), np.repeat(vals, resolution // levels))


def _seed_int(rng) -> int:
    return int(rng.integers(0, 2**62))


# ---------------------------------------------------------------------------
# numerics kernel checks (run with the adjoint suite)
# ---------------------------------------------------------------------------


@_check("numerics-eigen-real-descending", "adjoint")
def _chk_eigen_sorted(params, rng):
    n = _count(params, 50)
    worst = 0.0
    for _ in range(n):
        a = _rand_coeffs(rng, 8, 8)
        vals = numerics.hermitian_eigen(a + a.conj().T).values
        if vals.size > 1:
            worst = max(worst, float(np.max(np.diff(vals))))
    return check_result("numerics-eigen-real-descending", max(0.0, worst),
                        0.0, samples=n)


@_check("numerics-svd-adjoint-spectrum", "adjoint")
def _chk_svd_adjoint(params, rng):
    n = _count(params, 50)
    worst = 0.0
    for _ in range(n):
        m = _rand_coeffs(rng, 8, 8)
        s1 = numerics.svd(m)[1]
        s2 = numerics.svd(m.conj().T)[1]
        worst = max(worst, float(np.max(np.abs(s1 - s2))) / max(1.0, float(s1[0])))
    return check_result("numerics-svd-adjoint-spectrum", worst,
                        1e-12 * params.tol, samples=n)


@_check("numerics-opnorm2-matches-svd", "adjoint")
def _chk_opnorm2(params, rng):
    n = _count(params, 50)
    worst = 0.0
    for _ in range(n):
        m = _rand_coeffs(rng, 8, 8)
        top = float(numerics.svd(m)[1][0])
        est = numerics.opnorm_p_estimate(m, 2.0, seed=_seed_int(rng))
        worst = max(worst, abs(est - top) / max(1.0, top))
    return check_result("numerics-opnorm2-matches-svd", worst,
                        1e-8 * params.tol, samples=n)


@_check("numerics-expm-commuting-product", "adjoint")
def _chk_expm(params, rng):
    n = _count(params, 50)
    worst = 0.0
    for _ in range(n):
        d1 = np.diag(_rand_coeffs(rng, 6))
        d2 = np.diag(_rand_coeffs(rng, 6))
        lhs = numerics.matrix_exp(d1 + d2)
        rhs = numerics.matrix_exp(d1) @ numerics.matrix_exp(d2)
        scale = max(1.0, float(np.linalg.norm(lhs)))
        worst = max(worst, float(np.linalg.norm(lhs - rhs)) / scale)
    return check_result("numerics-expm-commuting-product", worst,
                        1e-10 * params.tol, samples=n)


# ---------------------------------------------------------------------------
# basis / duality-map checks (embedding suite)
# ---------------------------------------------------------------------------


@_check("duality-identity", "embedding")
def _chk_duality_identity(params, rng):
    per_p = _count(params, 200)
    worst = 0.0
    for p in P_SWEEP:
        space = _space(params, p=p)
        q = p / (p - 1.0)
        for _ in range(per_p):
            u = _rand_poly(space, rng)
            ju = duality_map(u, p)
            np2 = lp_norm(u, p) ** 2
            a = abs(pairing(u, ju) - np2)
            b = abs(lp_norm(ju, q) ** 2 - np2)
            worst = max(worst, max(a, b) / max(np2, 1e-300))
    return check_result("duality-identity", worst, 1e-6 * params.tol,
                        samples=per_p * len(P_SWEEP))


@_check("duality-homogeneity", "embedding")
def _chk_duality_homogeneity(params, rng):
    n = _count(params, 100)
    spaces = {p: _space(params, p=p) for p in P_SWEEP}
    worst = 0.0
    for i in range(n):
        p = P_SWEEP[i % len(P_SWEEP)]
        space = spaces[p]
        q = p / (p - 1.0)
        u = _rand_poly(space, rng)
        c = complex(_rand_coeffs(rng))
        lhs = duality_map(c * u, p)
        rhs = c * duality_map(u, p)
        worst = max(worst, lp_norm(lhs - rhs, q) / max(lp_norm(rhs, q), 1e-300))
    return check_result("duality-homogeneity", worst, 1e-8 * params.tol, samples=n)


@_check("coefficient-projection", "embedding")
def _chk_coeff_projection(params, rng):
    n = _count(params, 100)
    space = _space(params)
    member = space.basis.members[0]
    worst = 0.0
    for _ in range(n):
        u = GridFunction(member.box, _rand_coeffs(rng, *member.values.shape))
        once = reconstruct(coefficients(u, space.basis), space.basis)
        twice = reconstruct(coefficients(once, space.basis), space.basis)
        scale = max(lp_norm(once, space.basis.p), 1e-300)
        worst = max(worst, lp_norm(twice - once, space.basis.p) / scale)
    return check_result("coefficient-projection", worst, 1e-10 * params.tol, samples=n)


# ---------------------------------------------------------------------------
# Hilbert-embedding checks (embedding suite)
# ---------------------------------------------------------------------------


@_check("embedding-hnorm-below-sup", "embedding")
def _chk_hnorm_sup(params, rng):
    per_p = _count(params, 125)
    worst = 0.0
    for p in P_SWEEP:
        space = _space(params, p=p)
        for _ in range(per_p):
            u = _rand_poly(space, rng)
            cu = coefficients(u, space.basis)
            sup = float(np.max(np.abs(cu)))
            worst = max(worst, (h_norm(u, space) - sup) / max(sup, 1e-300))
    return check_result("embedding-hnorm-below-sup", max(0.0, worst),
                        1e-12 * params.tol, samples=per_p * len(P_SWEEP))


@_check("embedding-hnorm-below-bnorm", "embedding")
def _chk_hnorm_bnorm(params, rng):
    per_p = _count(params, 125)
    worst = 0.0
    for p in P_SWEEP:
        space = _space(params, p=p)
        for _ in range(per_p):
            u = _rand_poly(space, rng)
            bn = lp_norm(u, p)
            worst = max(worst, (h_norm(u, space) - bn) / max(bn, 1e-300))
    return check_result("embedding-hnorm-below-bnorm", max(0.0, worst),
                        5e-7 * params.tol, samples=per_p * len(P_SWEEP))


@_check("embedding-middle-ratio", "embedding")
def _chk_middle_ratio(params, rng):
    # sup_n |<E_n*, u>| <= ||u||_B requires unit dual norms, which our
    # normalization only guarantees empirically -- so record the worst ratio.
    per_p = _count(params, 50)
    worst = 0.0
    for p in P_SWEEP:
        space = _space(params, p=p)
        for _ in range(per_p):
            u = _rand_poly(space, rng)
            sup = float(np.max(np.abs(coefficients(u, space.basis))))
            worst = max(worst, sup / max(lp_norm(u, p), 1e-300))
    return measured("embedding-middle-ratio", worst, samples=per_p * len(P_SWEEP))


@_check("embedding-gram-diagonal", "embedding")
def _chk_gram_diag(params, rng):
    space = _space(params)
    g = gram_matrix(space)
    off = g - np.diag(np.diag(g))
    return check_result("embedding-gram-diagonal", float(np.max(np.abs(off))),
                        1e-8 * params.tol, samples=space.dim * space.dim)


@_check("embedding-jb-linear", "embedding")
def _chk_jb_linear(params, rng):
    n = _count(params, 100)
    space = _space(params)
    worst = 0.0
    for _ in range(n):
        u, v, w = (_rand_poly(space, rng) for _ in range(3))
        a = complex(_rand_coeffs(rng))
        add = abs(evaluate(jb_apply(u + v, space), w)
                  - evaluate(jb_apply(u, space), w)
                  - evaluate(jb_apply(v, space), w))
        hom = abs(evaluate(jb_apply(a * u, space), w)
                  - np.conj(a) * evaluate(jb_apply(u, space), w))
        scale = max(1.0, abs(evaluate(jb_apply(u, space), w)))
        worst = max(worst, max(add, hom) / scale)
    return check_result("embedding-jb-linear", worst, 1e-12 * params.tol, samples=n)


@_check("embedding-gram-schmidt", "embedding")
def _chk_gram_schmidt(params, rng):
    n = _count(params, 20)
    space = _space(params)
    k = min(4, space.dim)
    worst = 0.0
    for _ in range(n):
        vecs = [_rand_poly(space, rng) for _ in range(k)]
        psis, duals = gram_schmidt_biorthonormal(vecs, space)
        for i, psi in enumerate(psis):
            worst = max(worst, abs(lp_norm(psi, space.basis.p) - 1.0))
            for j in range(len(psis)):
                if i != j:
                    denom = h_norm(psis[i], space) * h_norm(psis[j], space)
                    worst = max(worst,
                                abs(h_inner(psis[i], psis[j], space)) / max(denom, 1e-300))
                delta = 1.0 if i == j else 0.0
                worst = max(worst, abs(evaluate(duals[j], psi) - delta))
    return check_result("embedding-gram-schmidt", worst, 1e-8 * params.tol,
                        samples=n * k)


# ---------------------------------------------------------------------------
# operator-algebra checks (adjoint suite)
# ---------------------------------------------------------------------------

_ADJOINT_DIMS = (4, 8, 16)


@_check("adjoint-algebra", "adjoint")
def _chk_adjoint_algebra(params, rng):
    total = _count(params, 500)
    spaces = [_space(params, dim=d) for d in _ADJOINT_DIMS]
    worst = 0.0
    for i in range(total):
        space = spaces[i % len(spaces)]
        a_op = _rand_operator(space, rng)
        b_op = _rand_operator(space, rng)
        scalar = complex(_rand_coeffs(rng))
        rep = adjoint_algebra_check(a_op, b_op, scalar, tol=1e-10 * params.tol)
        worst = max(worst, max(c.worst_violation for c in rep.checks))
    return check_result("adjoint-algebra", worst, 1e-10 * params.tol, samples=total)


@_check("adjoint-defining-identity", "adjoint")
def _chk_defining_identity(params, rng):
    n = _count(params, 1000)
    space = _space(params)
    worst = 0.0
    for _ in range(n):
        a_op = _rand_operator(space, rng)
        u, v = _rand_poly(space, rng), _rand_poly(space, rng)
        lhs = h_inner(apply_op(a_op, u), v, space)
        rhs = h_inner(u, apply_op(adjoint(a_op), v), space)
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs)))
    return check_result("adjoint-defining-identity", worst,
                        1e-10 * params.tol, samples=n)


@_check("adjoint-positive-product", "adjoint")
def _chk_positive_product(params, rng):
    n = _count(params, 100)
    space = _space(params)
    worst = 0.0
    for _ in range(n):
        a_op = _rand_operator(space, rng)
        prod = adjoint(a_op) @ a_op
        lam = numerics.general_eigenvalues(prod.matrix)
        scale = max(1.0, float(np.max(np.abs(lam))) if lam.size else 1.0)
        worst = max(worst,
                    float(np.max(np.abs(lam.imag))) / scale,
                    max(0.0, -float(np.min(lam.real))) / scale)
    return check_result("adjoint-positive-product", worst,
                        1e-10 * params.tol, samples=n)


@_check("self-conjugacy-equivalence", "adjoint")
def _chk_self_conjugacy(params, rng):
    half = _count(params, 200)
    space = _space(params)
    tgrid = (0.25, 0.75)
    disagreements = 0
    for i in range(2 * half):
        if i % 2 == 0:
            a_op = _rand_selfadjoint(space, rng)
        else:
            a_op = _rand_operator(space, rng)
        lhs = self_conjugacy_check(a_op, tgrid, tol=1e-8)
        rhs = is_naturally_selfadjoint(a_op, tol=1e-8)
        disagreements += int(lhs != rhs)
    return check_result("self-conjugacy-equivalence", float(disagreements),
                        0.0, samples=2 * half)


@_check("lax-spectrum-invariance", "adjoint")
def _chk_lax_spectrum(params, rng):
    n = _count(params, 200)
    space = _space(params)
    worst = 0.0
    for _ in range(n):
        t_op = _rand_selfadjoint(space, rng)
        rep = lax_check(t_op, params.p, seed=_seed_int(rng))
        spec = next(c for c in rep.checks if c.name == "lax-point-spectrum-invariance")
        worst = max(worst, spec.worst_violation)
    return check_result("lax-spectrum-invariance", worst, 1e-8 * params.tol, samples=n)


@_check("lax-norm-identity", "adjoint")
def _chk_lax_norm(params, rng):
    n = _count(params, 100)
    space = _space(params)
    worst = 0.0
    for _ in range(n):
        a_op = _rand_operator(space, rng)
        na = h_opnorm(a_op)
        nprod = h_opnorm(adjoint(a_op) @ a_op)
        worst = max(worst, abs(nprod - na**2) / max(1.0, na**2))
    return check_result("lax-norm-identity", worst, 1e-8 * params.tol, samples=n)


@_check("polar-reconstruction", "adjoint")
def _chk_polar(params, rng):
    n = _count(params, 50)
    space = _space(params)
    eye = np.eye(space.dim)
    worst = 0.0
    for _ in range(n):
        a_op = _rand_operator(space, rng)
        u_op, t_op = polar_decompose(a_op)
        scale = max(float(np.linalg.norm(a_op.matrix)), 1e-300)
        worst = max(worst,
                    float(np.linalg.norm((u_op @ t_op).matrix - a_op.matrix)) / scale)
        th = h_matrix(t_op)
        tscale = max(1.0, float(np.linalg.norm(th)))
        worst = max(worst, float(np.linalg.norm(th - th.conj().T)) / tscale)
        lam = numerics.hermitian_eigen((th + th.conj().T) / 2.0).values
        worst = max(worst, max(0.0, -float(lam[-1])) / tscale)
        uh = h_matrix(u_op)
        worst = max(worst, float(np.linalg.norm(uh.conj().T @ uh - eye)))
    return check_result("polar-reconstruction", worst, 1e-9 * params.tol, samples=n)


@_check("spectral-reconstruction", "adjoint")
def _chk_spectral(params, rng):
    n = _count(params, 50)
    space = _space(params)
    eye = np.eye(space.dim)
    worst = 0.0
    for _ in range(n):
        a_op = _rand_selfadjoint(space, rng)
        dec = spectral_decompose(a_op)
        recon = sum(x * p_op.matrix for x, p_op in zip(dec.eigenvalues, dec.projections))
        scale = max(float(np.linalg.norm(a_op.matrix)), 1e-300)
        worst = max(worst, float(np.linalg.norm(recon - a_op.matrix)) / scale)
        total = sum(p_op.matrix for p_op in dec.projections)
        worst = max(worst, float(np.linalg.norm(total - eye)))
        for i, p_op in enumerate(dec.projections):
            worst = max(worst, float(np.linalg.norm((p_op @ p_op).matrix - p_op.matrix)))
            worst = max(worst, float(np.linalg.norm(adjoint(p_op).matrix - p_op.matrix)))
            for j in range(i + 1, len(dec.projections)):
                cross = (p_op @ dec.projections[j]).matrix
                worst = max(worst, float(np.linalg.norm(cross)))
    return check_result("spectral-reconstruction", worst, 1e-8 * params.tol, samples=n)


@_check("minmax-matches-direct", "adjoint")
def _chk_minmax(params, rng):
    n = _count(params, 10)
    space = _space(params)
    ks = sorted({1, max(1, space.dim // 2), space.dim})
    worst = 0.0
    for _ in range(n):
        a_op = _rand_selfadjoint(space, rng)
        mh = h_matrix(a_op)
        direct = numerics.hermitian_eigen((mh + mh.conj().T) / 2.0).values
        scale = max(1.0, float(np.max(np.abs(direct))))
        for k in ks:
            est = minmax_eigenvalue(a_op, k, trials=4, seed=_seed_int(rng))
            worst = max(worst, abs(est - float(direct[k - 1])) / scale)
    return check_result("minmax-matches-direct", worst, 1e-6 * params.tol,
                        samples=n * len(ks))


# ---------------------------------------------------------------------------
# singular-value / trace-class checks (schatten suite)
# ---------------------------------------------------------------------------

_SCHATTEN_PS = (1.0, 2.0, 4.0)


@_check("schatten-two-path", "schatten")
def _chk_two_path(params, rng):
    total = _count(params, 500)
    space = _space(params)
    worst = 0.0
    for i in range(total):
        a_op = _rand_operator(space, rng)
        p = _SCHATTEN_PS[i % len(_SCHATTEN_PS)]
        bracket, mu = schatten.schatten_norm_paths(a_op, p)
        worst = max(worst, abs(bracket - mu) / max(mu, 1e-300))
    return check_result("schatten-two-path", worst, 1e-9 * params.tol, samples=total)


@_check("singular-value-paths", "schatten")
def _chk_sv_paths(params, rng):
    n = _count(params, 200)
    space = _space(params)
    worst = 0.0
    for _ in range(n):
        a_op = _rand_operator(space, rng)
        s1 = numerics.svd(h_matrix(a_op))[1]
        ph = h_matrix(adjoint(a_op) @ a_op)
        lam = numerics.hermitian_eigen((ph + ph.conj().T) / 2.0).values
        s2 = np.sqrt(np.clip(lam, 0.0, None))
        worst = max(worst, float(np.max(np.abs(s1 - s2))) / max(1.0, float(s1[0])))
    return check_result("singular-value-paths", worst, 1e-10 * params.tol, samples=n)


@_check("schatten-holder-monotone", "schatten")
def _chk_holder(params, rng):
    n = _count(params, 100)
    space = _space(params)
    ps = (1.0, 1.5, 2.0, 3.0, 4.0)
    worst = 0.0
    for _ in range(n):
        a_op = _rand_operator(space, rng)
        norms = [schatten.schatten_norm(a_op, p) for p in ps]
        scale = max(norms[0], 1e-300)
        for lo, hi in zip(norms, norms[1:]):
            worst = max(worst, (hi - lo) / scale)
    return check_result("schatten-holder-monotone", max(0.0, worst),
                        1e-10 * params.tol, samples=n)


@_check("schatten-unitary-invariance", "schatten")
def _chk_unitary_invariance(params, rng):
    n = _count(params, 50)
    space = _space(params)
    worst = 0.0
    for _ in range(n):
        a_op = _rand_operator(space, rng)
        gens = [_rand_coeffs(rng, space.dim, space.dim) for _ in range(2)]
        u_op, v_op = (from_h_matrix(numerics.matrix_exp(g - g.conj().T), space)
                      for g in gens)
        for p in _SCHATTEN_PS:
            base = schatten.schatten_norm(a_op, p)
            moved = schatten.schatten_norm(u_op @ a_op @ v_op, p)
            worst = max(worst, abs(moved - base) / max(base, 1e-300))
    return check_result("schatten-unitary-invariance", worst,
                        1e-9 * params.tol, samples=n * len(_SCHATTEN_PS))


def _normalized_violations(rep: VerificationReport) -> float:
    """Rescale bound checks with tolerance 1e-9*(bound+1) to a 1e-9 budget."""
    worst = 0.0
    for c in rep.checks:
        if c.status == "measured":
            continue
        tol = c.params.get("tol", 1e-9)
        worst = max(worst, c.worst_violation * 1e-9 / max(tol, 1e-300))
    return worst


@_check("weyl-inequality", "schatten")
def _chk_weyl(params, rng):
    n = _count(params, 500)
    space = _space(params)
    worst = 0.0
    for _ in range(n):
        worst = max(worst, _normalized_violations(
            schatten.weyl_check(_rand_operator(space, rng))))
    return check_result("weyl-inequality", worst, 1e-9 * params.tol, samples=n)


@_check("horn-inequality", "schatten")
def _chk_horn(params, rng):
    n = _count(params, 500)
    space = _space(params)
    worst = 0.0
    for _ in range(n):
        a1 = _rand_operator(space, rng)
        a2 = _rand_operator(space, rng)
        worst = max(worst, _normalized_violations(schatten.horn_check(a1, a2)))
    return check_result("horn-inequality", worst, 1e-9 * params.tol, samples=n)


@_check("lalesco-inequality", "schatten")
def _chk_lalesco(params, rng):
    n = _count(params, 500)
    space = _space(params)
    worst = 0.0
    for _ in range(n):
        worst = max(worst, _normalized_violations(
            schatten.lalesco_check(_rand_operator(space, rng))))
    return check_result("lalesco-inequality", worst, 1e-9 * params.tol, samples=n)


@_check("lidskii-trace", "schatten")
def _chk_lidskii(params, rng):
    n = _count(params, 500)
    space = _space(params)
    worst = 0.0
    for _ in range(n):
        worst = max(worst, _normalized_violations(
            schatten.lidskii_check(_rand_operator(space, rng))))
    return check_result("lidskii-trace", worst, 1e-9 * params.tol, samples=n)


# ---------------------------------------------------------------------------
# KS^2 checks (ks2 suite)
# ---------------------------------------------------------------------------


@_check("ks2-pairing-bijection", "ks2")
def _chk_pairing_bijection(params, rng):
    limit = 10**4
    failures = 0
    for k in range(1, limit + 1):
        l, i = ks2.pairing_order(k)
        failures += int(ks2.inverse_pairing(l, i) != k)
    return check_result("ks2-pairing-bijection", float(failures), 0.0, samples=limit)


@_check("ks2-gram-psd", "ks2")
def _chk_gram_psd(params, rng):
    n = _count(params, 20)
    system = ks2.cube_system(1)
    worst = 0.0
    for _ in range(n):
        fs = [_rand_step(rng, params.grid) for _ in range(6)]
        g = np.array([[ks2.ks2_inner(a, b, params.cubes, system) for b in fs]
                      for a in fs])
        scale = max(1.0, float(np.max(np.abs(g))))
        worst = max(worst, float(np.linalg.norm(g - g.conj().T)) / scale)
        lam = numerics.hermitian_eigen((g + g.conj().T) / 2.0).values
        worst = max(worst, max(0.0, -float(lam[-1])) / scale)
    return check_result("ks2-gram-psd", worst, 1e-10 * params.tol, samples=n)


@_check("ks2-truncation-monotone", "ks2")
def _chk_truncation(params, rng):
    n = _count(params, 50)
    system = ks2.cube_system(1)
    ks = sorted({8, 16, 32, params.cubes})
    worst = 0.0
    worst_tail = 0.0
    for _ in range(n):
        f = _rand_step(rng, params.grid)
        norms = [ks2.ks2_norm(f, k, system) for k in ks]
        scale = max(norms[-1], 1e-300)
        for lo, hi in zip(norms, norms[1:]):
            worst = max(worst, (lo - hi) / scale)
        worst_tail = max(worst_tail, ks2.tail_bound(f, ks[-1]))
    check = check_result("ks2-truncation-monotone", max(0.0, worst),
                         1e-12 * params.tol, samples=n, K=ks[-1])
    return check, {"ks2-truncation-tail": worst_tail}


@_check("ks2-functional-contraction", "ks2")
def _chk_contraction(params, rng):
    n = _count(params, 500)
    system = ks2.cube_system(1)
    ks = (1, 2, 7, 19, params.cubes)
    worst = 0.0
    for _ in range(n):
        f = _rand_step(rng, params.grid)
        l1 = float(np.mean(np.abs(f.values)))
        for k in ks:
            v = abs(ks2.functional_Fk(f, k, system))
            worst = max(worst, (v - l1) / max(l1, 1.0))
    return check_result("ks2-functional-contraction", max(0.0, worst),
                        1e-12 * params.tol, samples=n * len(ks))


@_check("ks2-fundamentality", "ks2")
def _chk_fundamentality(params, rng):
    n = _count(params, 200)
    system = ks2.cube_system(1)
    k_max = 256
    dead = 0
    for _ in range(n):
        f = _rand_step(rng, params.grid)
        vals = ks2.functional_values(f, k_max, system)
        dead += int(float(np.max(np.abs(vals))) == 0.0)
    return check_result("ks2-fundamentality", float(dead), 0.0, samples=n, K=k_max)


@_check("ks2-embedding-bound", "ks2")
def _chk_ks2_embedding(params, rng):
    n = _count(params, 50)
    system = ks2.cube_system(1)
    qs = sorted({1.0, 2.0, float(params.q)}) + [np.inf]
    worst = 0.0
    for _ in range(n):
        f = _rand_step(rng, params.grid)
        for q in qs:
            rep = ks2.embedding_bound_check(f, q, params.cubes, system)
            worst = max(worst, _normalized_violations(rep))
    return check_result("ks2-embedding-bound", worst, 1e-9 * params.tol,
                        samples=n * len(qs), q_list=",".join(f"{q:g}" for q in qs))


@_check("ks2-weak-strong-decay", "ks2")
def _chk_weak_strong(params, rng):
    system = ks2.cube_system(1)
    resolution = max(params.grid, 1024)
    rep = ks2.weak_strong_demo(64, max(params.cubes, 256), system,
                               resolution=resolution)
    decay = next(c for c in rep.checks if c.name == "ks2-weak-strong-decay")
    return (check_result("ks2-weak-strong-decay", decay.worst_violation,
                         decay.params["tol"], samples=decay.samples,
                         m_max=64, resolution=resolution),
            dict(rep.tail_bounds))


# ---------------------------------------------------------------------------
# integral-operator checks (integral suite)
# ---------------------------------------------------------------------------


@_check("hilbert-square-identity", "integral")
def _chk_hilbert_square(params, rng):
    n = _count(params, 100)
    worst = 0.0
    for _ in range(n):
        f = integrals.random_bandlimited(rng, params.grid)
        twice = integrals.hilbert_multiplier(integrals.hilbert_multiplier(f))
        scale = max(1.0, float(np.max(np.abs(f.samples))))
        worst = max(worst, float(np.max(np.abs(twice.samples + f.samples))) / scale)
    return check_result("hilbert-square-identity", worst,
                        1e-12 * params.tol, samples=n)


@_check("hilbert-isometry", "integral")
def _chk_hilbert_isometry(params, rng):
    n = _count(params, 100)
    worst = 0.0
    for _ in range(n):
        f = integrals.random_bandlimited(rng, params.grid)
        ratio = (integrals.signal_lp_norm(integrals.hilbert_multiplier(f), 2)
                 / integrals.signal_lp_norm(f, 2))
        worst = max(worst, abs(ratio - 1.0))
    return check_result("hilbert-isometry", worst, 1e-12 * params.tol, samples=n)


@_check("hilbert-skew-adjoint", "integral")
def _chk_hilbert_skew(params, rng):
    n = _count(params, 200)
    worst = 0.0
    for _ in range(n):
        f = integrals.random_bandlimited(rng, params.grid)
        g = integrals.random_bandlimited(rng, params.grid)
        lhs = integrals.signal_inner(integrals.hilbert_multiplier(f), g)
        rhs = integrals.signal_inner(f, integrals.hilbert_multiplier(g))
        scale = max(integrals.signal_lp_norm(f, 2) * integrals.signal_lp_norm(g, 2),
                    1e-300)
        worst = max(worst, abs(lhs + rhs) / scale)
    return check_result("hilbert-skew-adjoint", worst, 1e-10 * params.tol, samples=n)


def _pv_gap(mode: int, m: int, eps: float) -> float:
    f = integrals.signal_from_callable(
        lambda t: np.cos(2.0 * np.pi * mode * t), m)
    return float(np.max(np.abs(integrals.hilbert_multiplier(f).samples
                               - integrals.hilbert_pv(f, eps).samples)))


@_check("hilbert-pv-convergence", "integral")
def _chk_pv_convergence(params, rng):
    # Two-part claim.  (a) Joint refinement (eps and 1/M halving together)
    # drives the truncated-kernel path onto the multiplier path.  (b) The
    # convergence order in eps is at least one; it is measured on a fixed
    # fine grid so the grid error (the -1 in the exact leading gap
    # 2k(2c-1)/M for eps = c/M) does not bias the estimate below one.
    mode = 3
    joint = [_pv_gap(mode, m, 8.0 / m) for m in (512, 1024, 2048, 4096)]
    growth = max(b / a for a, b in zip(joint, joint[1:]))
    m_fixed = 4096
    fixed = [_pv_gap(mode, m_fixed, c / m_fixed) for c in (64.0, 32.0, 16.0, 8.0)]
    orders = [np.log2(a / b) for a, b in zip(fixed, fixed[1:])]
    violation = max(0.0, growth - 1.0, 1.0 - min(orders))
    return check_result("hilbert-pv-convergence", violation, 1e-2 * params.tol,
                        samples=len(joint) + len(fixed), mode=mode,
                        order_min=float(min(orders)))


@_check("riesz-symmetry", "integral")
def _chk_riesz_symmetry(params, rng):
    n = _count(params, 50)
    worst = 0.0
    for _ in range(n):
        f = GridFunction(((0.0, 1.0),), _rand_coeffs(rng, params.grid))
        g = GridFunction(((0.0, 1.0),), _rand_coeffs(rng, params.grid))
        lhs = pairing(integrals.riesz_potential(f, params.alpha), g)
        rhs = pairing(f, integrals.riesz_potential(g, params.alpha))
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs)))
    return check_result("riesz-symmetry", worst, 1e-8 * params.tol, samples=n,
                        alpha=params.alpha)


@_check("riesz-positivity", "integral")
def _chk_riesz_positivity(params, rng):
    n = _count(params, 100)
    worst = 0.0
    for _ in range(n):
        f = GridFunction(((0.0, 1.0),), rng.standard_normal(params.grid) + 0.0j)
        form = pairing(integrals.riesz_potential(f, params.alpha), f).real
        worst = max(worst, -float(form))
    return check_result("riesz-positivity", max(0.0, worst), 1e-8 * params.tol,
                        samples=n, alpha=params.alpha)


# ---------------------------------------------------------------------------
# measured-only entries, attached to every suite
# ---------------------------------------------------------------------------


@_check("lax-constant-khat", "*")
def _meas_khat(params, rng):
    n = _count(params, 20)
    space = _space(params)
    lo, hi = np.inf, 0.0
    for _ in range(n):
        t_op = _rand_selfadjoint(space, rng)
        rep = lax_check(t_op, params.p, seed=_seed_int(rng))
        khat = next(c for c in rep.checks if c.name == "lax-constant-khat")
        lo, hi = min(lo, khat.worst_violation), max(hi, khat.worst_violation)
    return measured("lax-constant-khat", hi, samples=n, p=params.p, khat_min=lo)


@_check("bnorm-adjoint-ratio", "*")
def _meas_bnorm_ratio(params, rng):
    n = _count(params, 20)
    space = _space(params)
    lo, hi = np.inf, 0.0
    for _ in range(n):
        a_op = _rand_operator(space, rng)
        na = b_opnorm_estimate(a_op, params.p, seed=_seed_int(rng))
        nastar = b_opnorm_estimate(adjoint(a_op), params.p, seed=_seed_int(rng))
        ratio = nastar / max(na, 1e-300)
        lo, hi = min(lo, ratio), max(hi, ratio)
    return measured("bnorm-adjoint-ratio", hi, samples=n, p=params.p, ratio_min=lo)


@_check("hilbert-cp-constant", "*")
def _meas_cp(params, rng):
    n = _count(params, 40)
    m = min(params.grid, 512)
    best = 0.0
    for _ in range(n):
        f = integrals.random_bandlimited(rng, m)
        best = max(best, integrals.signal_lp_norm(integrals.hilbert_multiplier(f),
                                                  params.p)
                   / max(integrals.signal_lp_norm(f, params.p), 1e-300))
    return measured("hilbert-cp-constant", best, samples=n, p=params.p)


@_check("rayleigh-quotient-gap", "*")
def _meas_rayleigh(params, rng):
    n = _count(params, 50)
    space = _space(params)
    worst = 0.0
    for _ in range(n):
        a_op = _rand_selfadjoint(space, rng)
        psi = _rand_poly(space, rng)
        worst = max(worst, rayleigh_compare(a_op, psi, space)[2])
    return measured("rayleigh-quotient-gap", worst, samples=n, p=params.p)


# ---------------------------------------------------------------------------
# suite assembly
# ---------------------------------------------------------------------------


def list_checks(suite: str = "all") -> tuple[str, ...]:
    """Check names belonging to a suite, sorted; measured entries included."""
    if suite not in SUITE_NAMES:
        raise ValueError(f"unknown suite {suite!r}: choose from {', '.join(SUITE_NAMES)}")
    names = [name for name, (owner, _) in _REGISTRY.items()
             if owner == "*" or suite == "all" or owner == suite]
    return tuple(sorted(names))


def run_suite(name: str, seed: int = 0, params: SuiteParams | None = None) -> VerificationReport:
    """Run every check of a suite with per-check seeded randomness."""
    if params is None:
        params = SuiteParams()
    start = time.perf_counter()
    report = VerificationReport(suite=name, seed=int(seed))
    for cname in list_checks(name):
        _, fn = _REGISTRY[cname]
        rng = np.random.default_rng(check_seed(int(seed), cname))
        out = fn(params, rng)
        check, tails = out if isinstance(out, tuple) else (out, {})
        if check.name != cname:
            raise RuntimeError(f"check {cname!r} reported as {check.name!r}")
        report.add(check)
        report.tail_bounds.update(tails)
    report.duration = time.perf_counter() - start
    return report
