"""Numerical core tests, checked against independent oracles:
- singular values against eigendecomposition of the Gram matrix A^T A
- subspaces against eigenvectors of A A^T
- principal angles against scipy.linalg.subspace_angles
"""
import numpy as np
import pytest
import scipy.linalg

from sentsub.errors import DimensionMismatchError, NumericalError
from sentsub.linalg import (
    OrthonormalBasis,
    energy_fraction,
    principal_angle_cosines,
    svd,
    top_components,
)


def gram_singular_values(a):
    """Oracle: sigma_i = sqrt of eigenvalues of A^T A, descending."""
    evals = np.linalg.eigvalsh(a.T @ a)
    return np.sqrt(np.clip(evals[::-1][: min(a.shape)], 0.0, None))


def gram_top_eigvecs(a, n):
    """Oracle: top-n eigenvectors of A A^T, descending eigenvalue order."""
    evals, evecs = np.linalg.eigh(a @ a.T)
    return evecs[:, ::-1][:, :n]


def subspace_distance(u1, u2):
    """sin of the largest principal angle, via scipy's independent routine."""
    angles = scipy.linalg.subspace_angles(u1, u2)
    return float(np.sin(np.max(angles))) if angles.size else 0.0


def random_matrices(count, seed=0, dmax=50, mmax=20):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        d = int(rng.integers(1, dmax + 1))
        m = int(rng.integers(1, mmax + 1))
        yield rng.uniform(-1, 1, size=(d, m))


class TestSvd:
    def test_identity(self):
        _, s, _ = svd(np.eye(3))
        np.testing.assert_allclose(s, [1, 1, 1])

    def test_diagonal(self):
        _, s, _ = svd(np.diag([3.0, 2.0, 1.0]))
        np.testing.assert_allclose(s, [3, 2, 1])

    def test_rejects_nonfinite(self):
        with pytest.raises(NumericalError):
            svd(np.array([[1.0, np.nan], [0.0, 1.0]]))

    def test_rejects_empty(self):
        with pytest.raises(NumericalError):
            svd(np.empty((0, 3)))

    def test_random_against_gram_oracle(self):
        for a in random_matrices(100, seed=1):
            u, s, v = svd(a)
            norm_a = np.linalg.norm(a)
            assert np.linalg.norm(a - u @ np.diag(s) @ v.T) <= 1e-8 * max(norm_a, 1e-30)
            assert np.max(np.abs(u.T @ u - np.eye(u.shape[1]))) <= 1e-8
            assert np.max(np.abs(v.T @ v - np.eye(v.shape[1]))) <= 1e-8
            assert np.all(np.diff(s) <= 0) and np.all(s >= 0)
            oracle = gram_singular_values(a)
            np.testing.assert_allclose(s, oracle, rtol=1e-6, atol=1e-6 * max(s[0], 1))


class TestTopComponents:
    def test_single_column_is_normalized_direction(self):
        v = np.array([[3.0], [4.0]])
        basis = top_components(v, 4)
        assert basis.rank == 1
        np.testing.assert_allclose(basis.columns[:, 0], [0.6, 0.8], atol=1e-12)

    def test_rank_deficient_span(self):
        rng = np.random.default_rng(7)
        coeffs = rng.uniform(-1, 1, size=(2, 8))
        a = np.zeros((5, 8))
        a[:2, :] = coeffs
        basis = top_components(a, 4)
        assert basis.rank == 2
        # span must be exactly e1, e2
        assert np.max(np.abs(basis.columns[2:, :])) <= 1e-10

    def test_energy_is_descending_squared_sigmas(self):
        a = np.diag([3.0, 2.0, 1.0])
        basis = top_components(a, 2)
        np.testing.assert_allclose(basis.component_energy, [9.0, 4.0])

    def test_zero_matrix_errors(self):
        with pytest.raises(NumericalError):
            top_components(np.zeros((3, 2)), 2)

    def test_random_span_matches_gram_oracle(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            a = rng.uniform(-1, 1, size=(300, 12))
            basis = top_components(a, 4)
            oracle = gram_top_eigvecs(a, 4)
            assert subspace_distance(basis.columns, oracle) <= 1e-6

    def test_sign_canonicalization_deterministic(self):
        rng = np.random.default_rng(5)
        a = rng.uniform(-1, 1, size=(10, 6))
        b1 = top_components(a, 3)
        b2 = top_components(a.copy(), 3)
        np.testing.assert_array_equal(b1.columns, b2.columns)
        for j in range(b1.rank):
            col = b1.columns[:, j]
            assert col[np.argmax(np.abs(col))] > 0

    def test_scaling_invariance(self):
        rng = np.random.default_rng(11)
        a = rng.uniform(-1, 1, size=(20, 7))
        b1 = top_components(a, 4)
        b2 = top_components(3.7 * a, 4)
        assert subspace_distance(b1.columns, b2.columns) <= 1e-8

    def test_column_permutation_invariance(self):
        rng = np.random.default_rng(13)
        a = rng.uniform(-1, 1, size=(20, 7))
        perm = rng.permutation(7)
        b1 = top_components(a, 4)
        b2 = top_components(a[:, perm], 4)
        assert subspace_distance(b1.columns, b2.columns) <= 1e-8

    def test_pca_basis_beats_random_bases(self):
        # top-N basis captures at least as much energy as any random basis
        rng = np.random.default_rng(17)
        for _ in range(50):
            a = rng.uniform(-1, 1, size=(15, 10))
            basis = top_components(a, 3)
            pca_energy = np.linalg.norm(basis.columns.T @ a) ** 2
            for _ in range(100):
                q, _ = np.linalg.qr(rng.normal(size=(15, basis.rank)))
                assert pca_energy >= np.linalg.norm(q.T @ a) ** 2 - 1e-9


class TestEnergyFraction:
    def test_full_rank_is_one(self):
        rng = np.random.default_rng(19)
        a = rng.uniform(-1, 1, size=(6, 4))
        assert energy_fraction(a, 4) == pytest.approx(1.0, abs=1e-12)

    def test_analytic_diag(self):
        assert energy_fraction(np.diag([2.0, 1.0]), 1) == pytest.approx(0.8, abs=1e-12)

    def test_zero_matrix_errors(self):
        with pytest.raises(NumericalError):
            energy_fraction(np.zeros((3, 3)), 1)

    def test_matches_eigen_oracle_and_monotone(self):
        rng = np.random.default_rng(23)
        for _ in range(50):
            a = rng.uniform(-1, 1, size=(12, 8))
            evals = np.sort(np.linalg.eigvalsh(a.T @ a))[::-1]
            evals = np.clip(evals, 0.0, None)
            prev = 0.0
            for n in range(1, 9):
                frac = energy_fraction(a, n)
                oracle = float(evals[:n].sum() / evals.sum())
                assert abs(frac - min(oracle, 1.0)) <= 1e-9
                assert frac >= prev - 1e-12
                prev = frac


def _basis(cols):
    cols = np.asarray(cols, dtype=np.float64)
    return OrthonormalBasis(dim=cols.shape[0], rank=cols.shape[1], columns=cols,
                            component_energy=np.ones(cols.shape[1]))


class TestPrincipalAngles:
    def test_identical_subspace(self):
        q, _ = np.linalg.qr(np.random.default_rng(29).normal(size=(6, 3)))
        s = principal_angle_cosines(_basis(q), _basis(q))
        np.testing.assert_allclose(s, [1, 1, 1], atol=1e-12)

    def test_orthogonal_lines(self):
        e1 = _basis([[1.0], [0.0], [0.0]])
        e2 = _basis([[0.0], [1.0], [0.0]])
        np.testing.assert_allclose(principal_angle_cosines(e1, e2), [0.0], atol=1e-15)

    def test_analytic_half_rotated_plane(self):
        u1 = _basis(np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]]))
        r = 1 / np.sqrt(2)
        u2 = _basis(np.array([[1.0, 0.0], [0.0, r], [0.0, r]]))
        s = principal_angle_cosines(u1, u2)
        np.testing.assert_allclose(s, [1.0, np.sqrt(2) / 2], atol=1e-12)
        # cross-check against scipy's full-SVD route
        oracle = np.cos(scipy.linalg.subspace_angles(u1.columns, u2.columns))[::-1]
        np.testing.assert_allclose(np.sort(s), np.sort(oracle), atol=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            principal_angle_cosines(_basis([[1.0], [0.0]]),
                                    _basis([[1.0], [0.0], [0.0]]))

    def test_sign_and_rotation_invariance(self):
        rng = np.random.default_rng(31)
        q1, _ = np.linalg.qr(rng.normal(size=(12, 4)))
        q2, _ = np.linalg.qr(rng.normal(size=(12, 4)))
        base = principal_angle_cosines(_basis(q1), _basis(q2))
        flipped = q1.copy()
        flipped[:, 2] = -flipped[:, 2]
        np.testing.assert_allclose(
            principal_angle_cosines(_basis(flipped), _basis(q2)), base, atol=1e-10)
        rot, _ = np.linalg.qr(rng.normal(size=(4, 4)))
        np.testing.assert_allclose(
            principal_angle_cosines(_basis(q1 @ rot), _basis(q2)), base, atol=1e-8)
