import numpy as np
import pytest

from helpers import make_space, rand_complex, rand_operator, rand_selfadjoint

from almosthilbert import numerics
from almosthilbert.embedding import embedding_space
from almosthilbert.operators import (
    BOperator,
    adjoint,
    b_opnorm_estimate,
    from_h_matrix,
    h_matrix,
    identity_operator,
)
from almosthilbert.schatten import (
    SingularSpectrum,
    approximation_numbers,
    horn_check,
    lalesco_check,
    lidskii_check,
    nuclear_norm_upper,
    pietsch_cp,
    power_map,
    schatten_norm,
    schatten_norm_paths,
    singular_spectrum,
    singular_values,
    weyl_check,
)
from almosthilbert.spaces import fourier_sbasis


def uniform_space(N=2, resolution=64):
    """Space whose weights are all equal, so the metric transport is trivial."""
    return embedding_space(fourier_sbasis(N, 2, resolution),
                           weights=np.full(N, 1.0 / (2 * N)))


class TestSingularValues:
    def test_identity(self):
        space = make_space(N=5)
        np.testing.assert_allclose(singular_values(identity_operator(space)), np.ones(5),
                                   atol=1e-12)

    def test_nilpotent_uniform_weights(self):
        A = BOperator(np.array([[0.0, 1.0], [0.0, 0.0]]), uniform_space())
        np.testing.assert_allclose(singular_values(A), [1.0, 0.0], atol=1e-12)

    def test_nilpotent_dyadic_weights(self):
        # transport multiplies the (0,1) entry by sqrt(t_0/t_1) = sqrt(2)
        space = make_space(N=2)
        A = BOperator(np.array([[0.0, 1.0], [0.0, 0.0]]), space)
        np.testing.assert_allclose(singular_values(A), [np.sqrt(2.0), 0.0], atol=1e-12)

    def test_adjoint_invariance(self):
        rng = np.random.default_rng(20)
        space = make_space(N=8)
        for _ in range(20):
            A = rand_operator(space, rng)
            np.testing.assert_allclose(singular_values(adjoint(A)), singular_values(A),
                                       atol=1e-10 * max(1.0, np.linalg.norm(A.matrix)))

    def test_spectrum_bundle(self):
        rng = np.random.default_rng(21)
        space = make_space(N=6)
        spec = singular_spectrum(rand_operator(space, rng))
        assert spec.mu.shape == spec.lam.shape == (6,)
        assert np.all(np.diff(spec.mu) <= 0)
        assert np.min(spec.mu) >= 0

    def test_spectrum_type_rejects_increasing(self):
        with pytest.raises(ValueError, match="descending"):
            SingularSpectrum(np.array([1.0, 2.0]), np.array([0j, 0j]))

    def test_spectrum_type_rejects_length_mismatch(self):
        with pytest.raises(ValueError, match="equal length"):
            SingularSpectrum(np.array([2.0, 1.0]), np.array([0j]))


class TestSchattenNorm:
    def test_zero(self):
        space = make_space(N=4)
        Z = 0.0 * identity_operator(space)
        for p in (1.0, 2.0, 4.0):
            assert schatten_norm(Z, p) == 0.0

    def test_diagonal_in_eigencoordinates(self):
        space = make_space(N=2)
        A = from_h_matrix(np.diag([3.0, 1.0]), space)
        assert schatten_norm(A, 1) == pytest.approx(4.0, abs=1e-10)
        assert schatten_norm(A, 2) == pytest.approx(np.sqrt(10.0), abs=1e-10)

    def test_identity_trace_norm(self):
        space = make_space(N=3)
        assert schatten_norm(identity_operator(space), 1) == pytest.approx(3.0, abs=1e-10)

    def test_p2_is_frobenius_of_transport(self):
        rng = np.random.default_rng(22)
        space = make_space(N=7)
        for _ in range(20):
            A = rand_operator(space, rng)
            frob = np.linalg.norm(h_matrix(A))
            assert schatten_norm(A, 2) == pytest.approx(frob, rel=1e-10)

    @pytest.mark.parametrize("p", [1.0, 2.0, 4.0])
    def test_two_paths_agree(self, p):
        rng = np.random.default_rng(23)
        for N in (4, 8):
            space = make_space(N=N)
            for _ in range(15):
                bracket, mu = schatten_norm_paths(rand_operator(space, rng), p)
                assert abs(bracket - mu) <= 1e-9 * max(1.0, mu)

    def test_holder_monotonicity(self):
        rng = np.random.default_rng(24)
        space = make_space(N=8)
        for _ in range(20):
            A = rand_operator(space, rng)
            norms = [schatten_norm(A, p) for p in (1.0, 1.5, 2.0, 4.0, 8.0)]
            assert all(a >= b - 1e-10 * max(1.0, a) for a, b in zip(norms, norms[1:]))

    def test_unitary_invariance(self):
        rng = np.random.default_rng(25)
        space = make_space(N=6)
        A = rand_operator(space, rng)
        for _ in range(5):
            x = rand_complex(rng, 6, 6)
            y = rand_complex(rng, 6, 6)
            U = from_h_matrix(numerics.matrix_exp(x - x.conj().T), space)
            V = from_h_matrix(numerics.matrix_exp(y - y.conj().T), space)
            for p in (1.0, 2.0, 4.0):
                ref = schatten_norm(A, p)
                assert schatten_norm(U @ A @ V, p) == pytest.approx(ref, rel=1e-9)

    def test_rejects_bad_order(self):
        A = identity_operator(make_space(N=2))
        for p in (0.5, 0.0, np.inf):
            with pytest.raises(ValueError, match="finite real"):
                schatten_norm(A, p)


class TestEigenvalueInequalities:
    def test_weyl_nilpotent(self):
        A = BOperator(np.array([[0.0, 1.0], [0.0, 0.0]]), uniform_space())
        rep = weyl_check(A, power_map(1))
        assert rep.passed
        check = rep.checks[0]
        assert check.worst_violation == 0.0
        assert check.params["lhs"] == pytest.approx(0.0, abs=1e-12)
        assert check.params["rhs"] == pytest.approx(1.0, abs=1e-12)

    def test_weyl_normal_equality(self):
        rng = np.random.default_rng(26)
        space = make_space(N=6)
        for _ in range(10):
            A = rand_selfadjoint(space, rng)
            rep = weyl_check(A)
            for check in rep.checks:
                lhs, rhs = check.params["lhs"], check.params["rhs"]
                assert abs(lhs - rhs) <= 1e-9 * (rhs + 1.0)

    def test_weyl_random_sweep(self):
        rng = np.random.default_rng(27)
        for N in (4, 8, 16):
            space = make_space(N=N)
            for _ in range(20):
                assert weyl_check(rand_operator(space, rng)).passed

    def test_horn_identity_pair(self):
        space = make_space(N=4)
        I = identity_operator(space)
        rep = horn_check(I, I)
        assert rep.passed
        for check in rep.checks:
            assert check.params["lhs"] == pytest.approx(check.params["rhs"], abs=1e-12)

    def test_horn_zero_factor(self):
        rng = np.random.default_rng(28)
        space = make_space(N=4)
        rep = horn_check(rand_operator(space, rng), 0.0 * identity_operator(space))
        assert rep.passed
        for check in rep.checks:
            assert check.params["lhs"] == 0.0
            assert check.params["rhs"] == 0.0

    def test_horn_random_sweep(self):
        rng = np.random.default_rng(29)
        space = make_space(N=8)
        for _ in range(40):
            assert horn_check(rand_operator(space, rng), rand_operator(space, rng)).passed

    def test_lalesco_triangular(self):
        space = make_space(N=2)
        A = BOperator(np.array([[1.0, 2.0], [0.0, 3.0]]), space)
        rep = lalesco_check(A)
        assert rep.passed
        assert rep.checks[0].params["lhs"] == pytest.approx(4.0, abs=1e-12)

    def test_lidskii_triangular(self):
        space = make_space(N=2)
        A = BOperator(np.array([[1.0, 2.0], [0.0, 3.0]]), space)
        rep = lidskii_check(A)
        assert rep.passed
        assert rep.checks[0].params["trace"] == pytest.approx(4.0, abs=1e-12)

    def test_lalesco_normal_equality(self):
        A = BOperator(np.diag([1.0, -2.0]), uniform_space())
        rep = lalesco_check(A)
        check = rep.checks[0]
        assert check.params["lhs"] == pytest.approx(3.0, abs=1e-10)
        assert check.params["rhs"] == pytest.approx(3.0, abs=1e-10)

    def test_random_sweep_lalesco_lidskii(self):
        rng = np.random.default_rng(30)
        space = make_space(N=8)
        for _ in range(40):
            A = rand_operator(space, rng)
            assert lalesco_check(A).passed
            assert lidskii_check(A).passed


class TestApproximationNumbers:
    def test_identity_h(self):
        space = make_space(N=3)
        s = approximation_numbers(identity_operator(space), metric="H")
        np.testing.assert_allclose(s, [1.0, 1.0, 1.0, 0.0], atol=1e-12)

    def test_zero(self):
        space = make_space(N=4)
        for metric in ("H", "B-estimate"):
            s = approximation_numbers(0.0 * identity_operator(space), metric=metric)
            np.testing.assert_allclose(s, np.zeros(5), atol=1e-15)

    def test_h_metric_is_shifted_mu(self):
        rng = np.random.default_rng(31)
        space = make_space(N=8)
        for _ in range(10):
            A = rand_operator(space, rng)
            s = approximation_numbers(A, metric="H")
            mu = singular_values(A)
            np.testing.assert_allclose(s[:-1], mu, atol=1e-10 * max(1.0, mu[0]))
            assert s[-1] == 0.0

    def test_b_estimate_shape_and_tail(self):
        rng = np.random.default_rng(32)
        space = make_space(N=5)
        A = rand_operator(space, rng)
        s = approximation_numbers(A, metric="B-estimate", p_for_B=3.0, seed=5)
        assert s.shape == (6,)
        assert np.min(s) >= 0.0
        assert s[-1] <= 1e-12
        assert s[0] >= s[-2] - 1e-9

    def test_rejects_unknown_metric(self):
        space = make_space(N=2)
        with pytest.raises(ValueError, match="unknown metric"):
            approximation_numbers(identity_operator(space), metric="X")


class TestPietsch:
    def test_zero(self):
        space = make_space(N=3)
        assert pietsch_cp(0.0 * identity_operator(space), 1.0) == 0.0

    def test_identity_rank_cap(self):
        space = make_space(N=3)
        assert pietsch_cp(identity_operator(space), 1.0) == pytest.approx(2.0, abs=1e-10)

    def test_bounded_by_full_mu_sum(self):
        rng = np.random.default_rng(33)
        space = make_space(N=8)
        for p in (1.0, 2.0):
            for _ in range(10):
                A = rand_operator(space, rng)
                cp = pietsch_cp(A, p)
                full = float(np.sum(singular_values(A) ** p))
                assert cp <= full + 1e-9 * (full + 1.0)

    def test_equals_norm_power_minus_top(self):
        rng = np.random.default_rng(34)
        space = make_space(N=6)
        A = rand_operator(space, rng)
        mu = singular_values(A)
        for p in (1.0, 2.0, 4.0):
            expected = schatten_norm(A, p) ** p - mu[0] ** p
            assert pietsch_cp(A, p) == pytest.approx(expected, rel=1e-9, abs=1e-12)


class TestNuclearUpper:
    def test_zero(self):
        space = make_space(N=3)
        assert nuclear_norm_upper(0.0 * identity_operator(space), 2.0) == 0.0

    @pytest.mark.parametrize("p,q", [(2.0, 2.0), (3.0, 1.5), (1.5, 3.0)])
    def test_rank_one_factor_norms(self, p, q):
        rng = np.random.default_rng(35)
        space = make_space(N=5, p=p)
        a = rand_complex(rng, 5)
        b = rand_complex(rng, 5)
        A = BOperator(np.outer(a, b.conj()), space)
        expected = numerics.vector_pnorm(a, p) * numerics.vector_pnorm(b, q)
        assert nuclear_norm_upper(A, q, seed=7) == pytest.approx(expected, rel=1e-10)

    def test_dominates_operator_norm_estimate(self):
        rng = np.random.default_rng(36)
        space = make_space(N=6, p=3)
        for _ in range(10):
            A = rand_operator(space, rng)
            upper = nuclear_norm_upper(A, 1.5, seed=3)
            assert upper + 1e-9 >= b_opnorm_estimate(A, 3.0, seed=3)

    def test_scales_linearly(self):
        rng = np.random.default_rng(37)
        space = make_space(N=4)
        A = rand_operator(space, rng)
        one = nuclear_norm_upper(A, 2.0, seed=1)
        assert nuclear_norm_upper(2.5 * A, 2.0, seed=1) == pytest.approx(2.5 * one, rel=1e-10)

    def test_rejects_endpoint_exponents(self):
        space = make_space(N=2)
        A = identity_operator(space)
        for q in (1.0, np.inf):
            with pytest.raises(ValueError, match="dual exponent"):
                nuclear_norm_upper(A, q)
