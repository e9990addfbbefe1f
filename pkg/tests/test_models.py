import numpy as np
import pytest

from cauchy_dual.dual import cauchy_dual
from cauchy_dual.errors import PreconditionError
from cauchy_dual.linalg import fro, rel_residual
from cauchy_dual.models import (
    KernelSpec,
    SpectralDecomposition,
    min_kernel_eigenvalues,
    nystrom,
    quadrature,
    shift_dual_closed_form,
    spectral_dual_shift,
    weighted_shift,
)


class TestShift:
    def test_n1(self):
        np.testing.assert_array_equal(weighted_shift(1).matrix, [[0, 1], [0, 0]])

    def test_n3_weights(self):
        T = weighted_shift(3).matrix
        assert (T[0, 1], T[2, 3], T[4, 5]) == (1, 2, 3)
        assert np.count_nonzero(T) == 3

    def test_dual_pattern_n50(self):
        W = cauchy_dual(weighted_shift(50).matrix)
        E = shift_dual_closed_form(50)
        mask = E != 0
        assert np.max(np.abs(W[mask] - E[mask])) <= 1e-12
        assert np.max(np.abs(W[~mask])) <= 1e-14

    def test_square_laws(self):
        # T^2 vanishes, so both w(T^2) and w(T)^2 vanish; the law holds trivially here
        T = weighted_shift(10).matrix
        W = cauchy_dual(T)
        assert fro(T @ T) == 0
        assert fro(cauchy_dual(T @ T)) == 0
        assert fro(W @ W) < 1e-13

    def test_bad_n(self):
        with pytest.raises(ValueError):
            weighted_shift(0)


class TestNystrom:
    def test_zero_kernel(self):
        A, dec = nystrom(KernelSpec("zero", m=20))
        assert fro(A) == 0 and np.all(dec.eigenvalues == 0)

    @pytest.mark.parametrize("rule", ["trapezoid", "gauss_legendre"])
    def test_rank1(self, rule):
        spec = KernelSpec("rank1", m=50, rule=rule, params={"phi": "x"})
        x, wts = quadrature(rule, 0, 1, 50)
        _, dec = nystrom(spec)
        assert dec.eigenvalues[0] == pytest.approx(np.sum(wts * x**2), rel=1e-12)
        assert np.max(np.abs(dec.eigenvalues[1:])) < 1e-14

    def test_quadrature_exactness(self):
        x, wts = quadrature("gauss_legendre", -1, 2, 8)
        assert np.sum(wts * x**5) == pytest.approx((2**6 - 1) / 6)
        x, wts = quadrature("trapezoid", 0, 1, 11)
        assert np.sum(wts * x) == pytest.approx(0.5)

    def test_min_kernel_leading_eigenvalue(self):
        # k=1 and k=2 reach 1e-4; higher modes are limited by the O(h^2) kink error
        _, dec = nystrom(KernelSpec("min", m=200))
        exact = min_kernel_eigenvalues([1, 2])
        assert np.all(np.abs(dec.eigenvalues[:2] - exact) / exact < 1e-4)

    def test_convergence_order(self):
        errs = []
        for m in (100, 200, 400):
            _, dec = nystrom(KernelSpec("min", m=m))
            errs.append(abs(dec.eigenvalues[2] - min_kernel_eigenvalues(3)))
        # error roughly quarters when the grid doubles
        assert 3.0 < errs[0] / errs[1] < 5.0 and 3.0 < errs[1] / errs[2] < 5.0

    def test_reconstruct_and_orthonormal(self):
        A, dec = nystrom(KernelSpec("hermitian_phase", m=60))
        Q = dec.eigenvectors
        assert rel_residual(dec.reconstruct(), A) < 1e-12
        assert fro(Q.conj().T @ Q - np.eye(60)) < 1e-12
        assert np.iscomplexobj(A) and fro(A - A.conj().T) == 0

    def test_eigenfunction_normalized(self):
        _, dec = nystrom(KernelSpec("min", m=200))
        phi = dec.eigenfunction_values(1)
        assert np.sum(dec.quadrature_weights * np.abs(phi) ** 2) == pytest.approx(1.0)

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            KernelSpec("nope")
        with pytest.raises(ValueError):
            KernelSpec("min", a=1, b=0)
        with pytest.raises(ValueError):
            KernelSpec("min", rule="simpson")
        assert KernelSpec("expr:gaussian").kernel_function() is KernelSpec("gaussian").kernel_function()


class TestDualShift:
    def test_diag_example(self):
        dec = SpectralDecomposition(np.array([3.0, 1.0]), np.eye(2))
        F = spectral_dual_shift(dec, 2)
        np.testing.assert_allclose(F, np.diag([0.5, 0]), atol=1e-15)
        np.testing.assert_allclose(cauchy_dual(np.diag([2.0, 0])), F, atol=1e-15)

    @pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
    def test_min_kernel_against_dense(self, k):
        A, dec = nystrom(KernelSpec("min", m=200))
        lk = dec.eigenvalues[k - 1]
        dense = cauchy_dual(A - lk * np.eye(200))
        assert rel_residual(spectral_dual_shift(dec, k), dense) <= 1e-6

    def test_multiplicity_excluded(self):
        lam = np.array([2.0, 1.0, 1.0, 0.5])
        dec = SpectralDecomposition(lam, np.eye(4))
        F = spectral_dual_shift(dec, 2)
        np.testing.assert_allclose(F, np.diag([1.0, 0, 0, -2.0]), atol=1e-15)
        np.testing.assert_allclose(cauchy_dual(np.diag(lam - 1.0)), F, atol=1e-15)

    def test_zero_eigenvalue_rejected(self):
        dec = SpectralDecomposition(np.array([1.0, 0.0]), np.eye(2))
        with pytest.raises(PreconditionError):
            spectral_dual_shift(dec, 2)

    def test_index_range(self):
        dec = SpectralDecomposition(np.array([1.0]), np.eye(1))
        with pytest.raises(ValueError):
            spectral_dual_shift(dec, 2)
