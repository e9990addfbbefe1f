import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cauchy_dual.errors import FactorizationError, PreconditionError, ShapeError
from cauchy_dual.generators import gen_random
from cauchy_dual.linalg import (
    DEFAULT_CONFIG,
    ToleranceConfig,
    _jacobi_svd,
    as_matrix,
    fro,
    hermitian_eig,
    null_projector,
    psd_sqrt,
    range_projector,
    rank_cutoff,
    rel_residual,
    subspace_relation,
    svd,
)

from conftest import deficient_matrices


class TestSvdExamples:
    def test_identity(self):
        f = svd(np.eye(2))
        np.testing.assert_allclose(f.sigma, [1, 1])
        assert f.numerical_rank == 2

    def test_counterexample(self, T_ce):
        # T*T = diag(2, 0) by hand
        f = svd(T_ce)
        np.testing.assert_allclose(f.sigma, [np.sqrt(2), 0], atol=1e-15)
        assert f.numerical_rank == 1

    def test_zero_rectangular(self):
        f = svd(np.zeros((3, 2)))
        np.testing.assert_array_equal(f.sigma, [0, 0])
        assert f.numerical_rank == 0

    @pytest.mark.parametrize("method", ["lapack", "jacobi"])
    def test_frames_unitary(self, method):
        A = gen_random(6, 4, 2, 3)
        f = svd(A, method=method)
        assert fro(f.U.conj().T @ f.U - np.eye(6)) < 1e-12
        assert fro(f.V.conj().T @ f.V - np.eye(4)) < 1e-12
        assert rel_residual(f.reconstruct(), A) < 1e-13
        assert f.numerical_rank == 2


@given(deficient_matrices())
def test_jacobi_agrees_with_lapack(A):
    a, b = svd(A, method="lapack"), svd(A, method="jacobi")
    np.testing.assert_allclose(a.sigma, b.sigma, atol=1e-12 * (1 + a.sigma[0]))
    assert a.numerical_rank == b.numerical_rank
    assert rel_residual(b.reconstruct(), A) < 1e-12


def test_jacobi_iteration_cap():
    A = gen_random(5, 5, 5, 0)
    with pytest.raises(FactorizationError) as err:
        _jacobi_svd(A, max_sweeps=1)
    assert err.value.iterations == 1


def test_rank_cutoff_formula():
    cfg = ToleranceConfig(rank_safety=3)
    assert rank_cutoff(2.0, (4, 7), cfg) == 2.0 * 7 * np.finfo(float).eps * 3


def test_rank_deficiency_detected_through_noise():
    A = gen_random(8, 8, 3, 1)
    A = A + 1e-17 * np.ones((8, 8))
    assert svd(A).numerical_rank == 3


class TestValidation:
    def test_nonfinite(self):
        with pytest.raises(ValueError):
            as_matrix([[1, np.nan]])

    def test_not_2d(self):
        with pytest.raises(ShapeError):
            as_matrix(np.ones(3))

    def test_empty(self):
        with pytest.raises(ShapeError):
            as_matrix(np.ones((0, 3)))

    def test_bad_config(self):
        with pytest.raises(ValueError):
            ToleranceConfig(identity_tol=0)
        with pytest.raises(ValueError):
            ToleranceConfig(rank_safety=-1)

    def test_config_roundtrip(self):
        assert ToleranceConfig(**DEFAULT_CONFIG.as_dict()) == DEFAULT_CONFIG


class TestHermitianEig:
    def test_diag(self):
        lam, Q = hermitian_eig(np.diag([3.0, 1.0]))
        np.testing.assert_allclose(lam, [3, 1])
        np.testing.assert_allclose(np.abs(Q), np.eye(2))

    def test_swap(self):
        lam, _ = hermitian_eig(np.array([[0, 1], [1, 0]]))
        np.testing.assert_allclose(lam, [1, -1], atol=1e-15)

    def test_identity(self):
        lam, Q = hermitian_eig(np.eye(3))
        np.testing.assert_allclose(lam, [1, 1, 1])
        assert fro(Q.conj().T @ Q - np.eye(3)) < 1e-14

    def test_rejects_non_hermitian(self):
        with pytest.raises(PreconditionError) as err:
            hermitian_eig(np.array([[0, 1], [0, 0]]))
        assert err.value.residual > 0

    def test_rejects_rectangular(self):
        with pytest.raises(ShapeError):
            hermitian_eig(np.ones((2, 3)))


class TestProjectors:
    def test_counterexample_range(self, T_ce):
        P = range_projector(T_ce)
        np.testing.assert_allclose(P.matrix, 0.5 * np.ones((2, 2)), atol=1e-15)
        assert P.subspace_dim == 1

    def test_identity(self):
        np.testing.assert_allclose(range_projector(np.eye(2)).matrix, np.eye(2), atol=1e-15)

    def test_zero(self):
        Z = np.zeros((3, 3))
        np.testing.assert_array_equal(range_projector(Z).matrix, np.zeros((3, 3)))
        np.testing.assert_array_equal(null_projector(Z).matrix, np.eye(3))

    @given(deficient_matrices())
    def test_projector_axioms(self, A):
        for P in (range_projector(A), null_projector(A)):
            res = P.residuals()
            assert res["idempotent"] < 1e-12
            assert res["hermitian"] < 1e-12
            assert res["trace"] < 1e-10
        # null space really is annihilated
        assert fro(A @ null_projector(A).matrix) < 1e-12 * (1 + fro(A))

    def test_rank_nullity(self):
        A = gen_random(5, 7, 2, 4)
        assert null_projector(A).subspace_dim == 5


class TestSubspaceRelation:
    def test_equal(self):
        r = subspace_relation(np.eye(2), np.eye(2))
        assert r.kind == "equal" and r.equal_residual == 0

    def test_contained(self):
        assert subspace_relation(np.diag([1.0, 0]), np.eye(2)).kind == "contained"

    def test_incomparable(self):
        r = subspace_relation(np.diag([1.0, 0]), np.diag([0.0, 1]))
        assert r.kind == "incomparable"
        assert r.contained_residual == pytest.approx(1.0)

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            subspace_relation(np.eye(2), np.eye(3))


class TestPsdSqrt:
    def test_diag(self):
        np.testing.assert_allclose(psd_sqrt(np.diag([4.0, 0])), np.diag([2, 0]), atol=1e-15)

    def test_identity(self):
        np.testing.assert_allclose(psd_sqrt(np.eye(3)), np.eye(3), atol=1e-15)

    def test_eigen_route(self):
        B = psd_sqrt(np.array([[2.0, 1], [1, 2]]))
        np.testing.assert_allclose(np.linalg.eigvalsh(B)[::-1], [np.sqrt(3), 1])
        np.testing.assert_allclose(B @ B, [[2, 1], [1, 2]], atol=1e-14)

    def test_indefinite(self):
        with pytest.raises(PreconditionError):
            psd_sqrt(np.diag([1.0, -1.0]))

    @given(st.integers(1, 8), st.integers(0, 2**32 - 1))
    def test_square_of_root(self, n, seed):
        A = gen_random(n, n, max(0, n - 1), seed)
        G = A.conj().T @ A
        R = psd_sqrt(G)
        assert rel_residual(R @ R, G) < 1e-12
        assert np.linalg.eigvalsh(R)[0] > -1e-12
