"""Dense real linear-algebra substrate: orthonormalization, SVD, pseudo-inverse,
symmetric eigendecomposition and orthogonal complements.

Everything is backed by LAPACK via numpy.linalg; this module pins down the
rank-tolerance conventions used throughout the package.
"""

import numpy as np

from .validation import as_matrix, global_tol


def orthonormalize(columns, tol=None):
    """Orthonormal basis of the column space of *columns*.

    Rank-deficient input yields fewer columns; singular values below
    ``tol * s_max`` are treated as zero (default: the global tolerance,
    overridable via ALTPROJ_TOL). A zero or empty input returns a (d x 0)
    matrix rather than raising.
    """
    a = as_matrix(columns)
    if tol is None:
        tol = global_tol()
    if tol <= 0:
        raise ValueError("tol must be positive")
    if a.shape[1] == 0:
        return a.copy()
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    if s.size == 0 or s[0] <= 0.0:
        return np.zeros((a.shape[0], 0))
    rank = int(np.count_nonzero(s > tol * s[0]))
    return u[:, :rank]


def svd(m):
    """Thin SVD (u, s, vt) with nonincreasing, nonnegative singular values."""
    return np.linalg.svd(as_matrix(m), full_matrices=False)


def pinv(m, tol=None):
    """Moore-Penrose pseudo-inverse with singular values below ``tol * s_max``
    truncated to zero."""
    if tol is None:
        tol = global_tol()
    if tol <= 0:
        raise ValueError("tol must be positive")
    return np.linalg.pinv(as_matrix(m), rcond=tol)


def sym_eig(m):
    """Eigendecomposition of a symmetric matrix.

    Returns (eigenvalues, eigenvectors) with eigenvalues nonincreasing and
    orthonormal eigenvector columns. Non-symmetric input signals a caller
    bug and is rejected.
    """
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    scale = np.linalg.norm(a)
    if np.linalg.norm(a - a.T) > 1e-12 * max(scale, 1e-300):
        raise ValueError("matrix is not symmetric to relative tolerance 1e-12")
    w, v = np.linalg.eigh(a)
    order = np.argsort(w)[::-1]
    return w[order], v[:, order]


def orthogonal_complement(basis, tol=None):
    """Orthonormal basis of the orthogonal complement of span(basis) in R^d.

    Computed as the right null space of basis^T via a full SVD; an empty
    basis yields the identity.
    """
    b = as_matrix(basis)
    if tol is None:
        tol = global_tol()
    d = b.shape[0]
    if b.shape[1] == 0:
        return np.eye(d)
    u, s, _ = np.linalg.svd(b, full_matrices=True)
    if s.size == 0 or s[0] <= 0.0:
        rank = 0
    else:
        rank = int(np.count_nonzero(s > tol * s[0]))
    return u[:, rank:]
