import numpy as np
import pytest

from altproj import linalg


def frob(a):
    return np.linalg.norm(a)


class TestOrthonormalize:
    def test_identity_unchanged(self):
        b = linalg.orthonormalize(np.eye(2))
        assert np.allclose(b.T @ b, np.eye(2), atol=1e-14)
        assert b.shape == (2, 2)

    def test_normalization_only(self):
        b = linalg.orthonormalize(np.array([[2.0], [0.0]]))
        assert np.allclose(np.abs(b), [[1.0], [0.0]], atol=1e-14)

    def test_rank_deficient_collapses(self):
        # two identical directions span a single line
        b = linalg.orthonormalize(np.array([[1.0, 1.0], [1.0, 1.0]]))
        assert b.shape == (2, 1)
        assert np.allclose(np.abs(b[:, 0]), [1 / np.sqrt(2)] * 2, atol=1e-14)

    def test_zero_columns_give_empty_basis(self):
        assert linalg.orthonormalize(np.zeros((3, 2))).shape == (3, 0)
        assert linalg.orthonormalize(np.zeros((3, 0))).shape == (3, 0)

    @pytest.mark.parametrize("seed", range(5))
    def test_same_column_space(self, seed):
        rng = np.random.default_rng(seed)
        a = rng.standard_normal((7, 4))
        b = linalg.orthonormalize(a)
        assert frob(b.T @ b - np.eye(b.shape[1])) < 1e-12
        # mutual projection residuals: each spans the other
        assert frob(a - b @ (b.T @ a)) < 1e-10 * frob(a)
        pa = np.linalg.lstsq(a, b, rcond=None)[0]
        assert frob(b - a @ pa) < 1e-10


class TestSvd:
    def test_identity(self):
        _, s, _ = linalg.svd(np.eye(3))
        assert np.allclose(s, 1.0)

    def test_diagonal(self):
        _, s, _ = linalg.svd(np.diag([3.0, 0.0]))
        assert np.allclose(s, [3.0, 0.0])

    def test_permutation(self):
        _, s, _ = linalg.svd(np.array([[0.0, 1.0], [1.0, 0.0]]))
        assert np.allclose(s, [1.0, 1.0])

    @pytest.mark.parametrize("seed", range(5))
    def test_reconstruction(self, seed):
        rng = np.random.default_rng(seed)
        a = rng.standard_normal((6, 4))
        u, s, vt = linalg.svd(a)
        assert np.all(np.diff(s) <= 0) and np.all(s >= 0)
        assert frob(a - (u * s) @ vt) <= 1e-12 * max(s[0], 1.0)


class TestPinv:
    def test_identity(self):
        assert np.allclose(linalg.pinv(np.eye(3)), np.eye(3), atol=1e-14)

    def test_zero(self):
        p = linalg.pinv(np.zeros((2, 3)))
        assert p.shape == (3, 2) and np.allclose(p, 0.0)

    def test_diagonal_reciprocal(self):
        p = linalg.pinv(np.diag([2.0, 0.0]))
        assert np.allclose(p, np.diag([0.5, 0.0]), atol=1e-14)

    @pytest.mark.parametrize("seed", range(5))
    def test_penrose_identities(self, seed):
        rng = np.random.default_rng(seed)
        a = rng.standard_normal((5, 3))
        # make one rank-deficient case
        if seed == 0:
            a[:, 2] = a[:, 0] + a[:, 1]
        p = linalg.pinv(a)
        scale = max(frob(a), 1.0)
        assert frob(a @ p @ a - a) < 1e-10 * scale
        assert frob(p @ a @ p - p) < 1e-10 * scale
        assert frob((a @ p) - (a @ p).T) < 1e-10
        assert frob((p @ a) - (p @ a).T) < 1e-10


class TestSymEig:
    def test_diagonal(self):
        w, v = linalg.sym_eig(np.diag([2.0, 1.0]))
        assert np.allclose(w, [2.0, 1.0])
        assert np.allclose(np.abs(v), np.eye(2), atol=1e-14)

    def test_offdiagonal(self):
        w, _ = linalg.sym_eig(np.array([[0.0, 1.0], [1.0, 0.0]]))
        assert np.allclose(w, [1.0, -1.0])

    def test_rejects_nonsymmetric(self):
        with pytest.raises(ValueError):
            linalg.sym_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))

    @pytest.mark.parametrize("seed", range(5))
    def test_gram_eigenvalues_are_squared_singular_values(self, seed):
        rng = np.random.default_rng(seed)
        q = rng.standard_normal((6, 4))
        w, v = linalg.sym_eig(q.T @ q)
        _, s, _ = linalg.svd(q)
        assert np.allclose(np.sort(w), np.sort(s**2), atol=1e-10)
        assert frob(v.T @ v - np.eye(4)) < 1e-12
        t = q.T @ q
        assert frob((v * w) @ v.T - t) <= 1e-12 * max(frob(t), 1.0)


class TestOrthogonalComplement:
    def test_empty_basis_gives_identity(self):
        assert np.allclose(linalg.orthogonal_complement(np.zeros((3, 0))), np.eye(3))

    @pytest.mark.parametrize("seed", range(4))
    def test_complement_properties(self, seed):
        rng = np.random.default_rng(seed)
        b = linalg.orthonormalize(rng.standard_normal((7, 3)))
        c = linalg.orthogonal_complement(b)
        assert c.shape == (7, 4)
        assert frob(b.T @ c) < 1e-12
        assert frob(c.T @ c - np.eye(4)) < 1e-12
