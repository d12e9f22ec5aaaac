import numpy as np
import pytest

from whitmin.numerics import (EigenResult, NonSeparable, least_squares,
                              mean_and_covariance, qp_hard_margin, sym_eigen)


class TestMeanCovariance:
    def test_known_values(self):
        X = [np.array([0.0, 0.0]), np.array([2.0, 0.0])]
        mu, C = mean_and_covariance(X)
        assert np.allclose(mu, [1.0, 0.0])
        assert np.allclose(C, [[1.0, 0.0], [0.0, 0.0]])  # 1/N normalization

    def test_psd(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            X = rng.normal(size=(int(rng.integers(2, 20)), int(rng.integers(1, 6))))
            _, C = mean_and_covariance(X)
            evals = np.linalg.eigvalsh(C)
            assert evals.min() >= -1e-9 * max(1.0, evals.max())

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            mean_and_covariance(np.empty((0, 3)))


class TestSymEigen:
    def test_diagonal(self):
        r = sym_eigen(np.diag([1.0, 3.0, 2.0]))
        assert np.allclose(r.values, [3.0, 2.0, 1.0])

    def test_reconstruction_and_orthonormality(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            n = int(rng.integers(1, 9))
            M = rng.normal(size=(n, n))
            C = M + M.T
            r = sym_eigen(C)
            assert np.all(np.diff(r.values) <= 1e-12)
            recon = r.vectors @ np.diag(r.values) @ r.vectors.T
            scale = max(1.0, np.abs(C).max())
            assert np.abs(recon - C).max() < 1e-9 * scale
            assert np.abs(r.vectors.T @ r.vectors - np.eye(n)).max() < 1e-9

    def test_matches_numpy(self):
        rng = np.random.default_rng(2)
        for _ in range(30):
            n = int(rng.integers(2, 8))
            M = rng.normal(size=(n, n))
            C = M @ M.T
            ours = sym_eigen(C).values
            ref = np.sort(np.linalg.eigvalsh(C))[::-1]
            assert np.allclose(ours, ref, atol=1e-8 * max(1.0, ref[0]))

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            sym_eigen(np.array([[0.0, 1.0], [0.0, 0.0]]))


class TestLeastSquares:
    def test_exact_solve(self):
        A = np.array([[1.0, 0.0], [0.0, 2.0], [1.0, 1.0]])
        v_true = np.array([3.0, -1.0])
        v = least_squares(A, A @ v_true)
        assert np.allclose(v, v_true)

    def test_normal_equation_residual(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            n, d = int(rng.integers(5, 30)), int(rng.integers(1, 5))
            A = rng.normal(size=(n, d))
            b = rng.normal(size=n)
            v = least_squares(A, b)
            # gradient of the squared residual vanishes at the solution
            assert np.abs(A.T @ (A @ v - b)).max() < 1e-8

    def test_singular_falls_back_to_ridge(self):
        A = np.array([[1.0, 1.0], [2.0, 2.0], [3.0, 3.0]])
        v = least_squares(A, np.array([1.0, 2.0, 3.0]))
        assert np.isfinite(v).all()
        # ridge splits the weight evenly across the duplicated columns
        assert abs(v[0] - v[1]) < 1e-6

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            least_squares(np.ones((3, 2)), np.ones(4))


class TestHardMarginQP:
    def test_one_dimensional(self):
        # constraints w >= 1 and w >= 0.5; optimum w = 1
        A = np.array([[1.0], [2.0]])
        w = qp_hard_margin(A)
        assert abs(w[0] - 1.0) < 1e-4

    def test_separable_margins(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            d = int(rng.integers(2, 5))
            direction = rng.normal(size=d)
            direction /= np.linalg.norm(direction)
            pts = rng.normal(size=(30, d))
            labels = np.where(pts @ direction > 0, 1.0, -1.0)
            pts += np.outer(labels, direction)  # push the classes apart
            A = pts * labels[:, None]
            w = qp_hard_margin(A)
            assert (A @ w).min() >= 1.0 - 1e-5

    def test_near_optimal_norm(self):
        # two points at distance 2 on an axis: the margin-1 separator has
        # |w| = 1 exactly
        A = np.array([[1.0, 0.0], [1.0, 0.0]])
        w = qp_hard_margin(A)
        assert np.linalg.norm(w) < 1.0 + 1e-4

    def test_nonseparable_raises(self):
        # w >= 1 and -w >= 1 cannot both hold
        A = np.array([[1.0], [-1.0]])
        with pytest.raises(NonSeparable):
            qp_hard_margin(A, max_iter=2000)
