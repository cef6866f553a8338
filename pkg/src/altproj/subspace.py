"""Closed affine subspaces of R^d with orthogonal and relaxed projections.

An affine subspace is stored as an orthonormal basis of its direction space
plus the canonical offset (the point of the subspace closest to the origin,
which is orthogonal to the direction space). For the constraint set W with
direction space V, the canonical offset is exactly the vector P_W 0 in V-perp
that drives the whole least-squares analysis.
"""

from dataclasses import dataclass, field

import numpy as np

from .validation import as_matrix, as_vector, readonly
from . import linalg

_ORTHO_ATOL = 1e-12


@dataclass(frozen=True)
class AffineSubspace:
    """Affine subspace given by an orthonormal direction basis and a canonical offset.

    Attributes
    ----------
    basis : (d, k) ndarray
        Orthonormal columns spanning the direction space.
    offset : (d,) ndarray
        The point of the subspace closest to the origin; orthogonal to the
        direction space.
    """

    basis: np.ndarray
    offset: np.ndarray

    def __post_init__(self):
        b = as_matrix(self.basis, name="basis")
        off = as_vector(self.offset, dim=b.shape[0], name="offset")
        k = b.shape[1]
        if k > 0:
            gram_err = np.linalg.norm(b.T @ b - np.eye(k))
            if gram_err > _ORTHO_ATOL * max(1.0, k):
                raise ValueError("basis columns are not orthonormal")
            comp = np.linalg.norm(b.T @ off)
            if comp > _ORTHO_ATOL * (1.0 + np.linalg.norm(off)):
                raise ValueError("offset is not canonical (not orthogonal to the basis)")
        object.__setattr__(self, "basis", readonly(b))
        object.__setattr__(self, "offset", readonly(off))

    @classmethod
    def from_span(cls, span, point=None, tol=None):
        """Build from a spanning set (columns, not necessarily independent) and
        any point of the subspace. The offset is canonicalized."""
        b = linalg.orthonormalize(as_matrix(span, name="span"), tol=tol)
        d = b.shape[0]
        p = np.zeros(d) if point is None else as_vector(point, dim=d, name="point")
        off = p - b @ (b.T @ p)
        return cls(b, off)

    @classmethod
    def linear(cls, span, tol=None):
        """Linear subspace (through the origin) spanned by the given columns."""
        return cls.from_span(span, point=None, tol=tol)

    @property
    def dim_ambient(self):
        return self.basis.shape[0]

    @property
    def dim(self):
        return self.basis.shape[1]

    def translate(self, s):
        """The subspace shifted by the vector *s* (offset re-canonicalized)."""
        s = as_vector(s, dim=self.dim_ambient, name="shift")
        off = self.offset + s - self.basis @ (self.basis.T @ s)
        return AffineSubspace(self.basis, off)

    def contains(self, u, atol=1e-10):
        u = as_vector(u, dim=self.dim_ambient)
        return np.linalg.norm(u - project(self, u)) <= atol * (1.0 + np.linalg.norm(u))


def project(a, u):
    """Orthogonal projection of *u* onto the affine subspace *a*."""
    u = as_vector(u, dim=a.dim_ambient, name="u")
    r = u - a.offset
    return a.offset + a.basis @ (a.basis.T @ r)


def project_relaxed(a, u, alpha):
    """Relaxed projection u + alpha * (P_a u - u); alpha = 1 is the plain
    projection, alpha = 2 the reflection."""
    if alpha < 0:
        raise ValueError("relaxation coefficient must be nonnegative")
    u = as_vector(u, dim=a.dim_ambient, name="u")
    return u + alpha * (project(a, u) - u)


def translate_identity_check(a, s, u):
    """Both sides of the projection translation identity, for tests:
    returns (P_{a+s} u, P_a(u - s) + s)."""
    s = as_vector(s, dim=a.dim_ambient, name="s")
    u = as_vector(u, dim=a.dim_ambient, name="u")
    lhs = project(a.translate(s), u)
    rhs = project(a, u - s) + s
    return lhs, rhs


@dataclass(frozen=True)
class ProblemGeometry:
    """A pair of affine subspaces: the iterate space U and the constraint set W.

    ``shift`` records the translation applied by canonicalization so limits
    can be mapped back to the original frame (original = canonical + shift).
    """

    u_space: AffineSubspace
    w_space: AffineSubspace
    shift: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.u_space.dim_ambient != self.w_space.dim_ambient:
            raise ValueError("both subspaces must share the ambient dimension")
        s = self.shift
        if s is None:
            s = np.zeros(self.u_space.dim_ambient)
        object.__setattr__(self, "shift", readonly(as_vector(s, dim=self.u_space.dim_ambient, name="shift")))

    @property
    def dim_ambient(self):
        return self.u_space.dim_ambient

    @property
    def is_canonical(self):
        return np.linalg.norm(self.u_space.offset) <= _ORTHO_ATOL

    @property
    def w_offset(self):
        """The canonical offset of W, i.e. P_W 0, which lies in V-perp."""
        return self.w_space.offset

    def canonical(self):
        """Equivalent geometry with U through the origin; the translation is
        accumulated in ``shift``."""
        if self.is_canonical:
            return self
        t = self.u_space.offset
        u_lin = AffineSubspace(self.u_space.basis, np.zeros(self.dim_ambient))
        return ProblemGeometry(u_lin, self.w_space.translate(-t), self.shift + t)


def canonicalize(g):
    """See :meth:`ProblemGeometry.canonical`."""
    return g.canonical()


def relaxed_w_projection_formula(g, u, alpha):
    """Relaxed projection onto W in the explicit form u + alpha*(w - P_{V-perp} u),
    with w the canonical offset of W and V its direction space."""
    u = as_vector(u, dim=g.dim_ambient, name="u")
    bv = g.w_space.basis
    p_vperp_u = u - bv @ (bv.T @ u)
    return u + alpha * (g.w_offset - p_vperp_u)


def require_canonical(g):
    if not g.is_canonical:
        raise ValueError("geometry must be canonicalized first (call .canonical())")
    return g
