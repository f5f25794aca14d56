"""The right quaternion module H^n.

Vectors are arrays of shape (n, 4); batches of vectors (m, n, 4).  Scalars
act on the right.  The inner product is ``<x, y> = sum_k conj(y_k) x_k``,
so that ``<x q, y> = <x, y> q``.

The F-structure (F the subfield of a :class:`~quatspec.quat.Frame`) is
handled through left-form symplectic coordinates ``x = a + phi b`` with
``a, b`` in ``F^n``: right multiplication by an element of F then acts on
``(a, b)`` coordinatewise and ``H^n`` becomes the complex space ``C^{2n}``
with its standard Hermitian product.  Closures are identities here since
every span is finite-dimensional.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .exceptions import LengthMismatch
from .quat import DEFAULT_TOL, FScalar, Frame, Quaternion, as_quaternion, qconj, qmul


def as_qvector(x) -> np.ndarray:
    """Validate a quaternion vector: finite float array of shape (n, 4), n >= 1."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 1 and arr.shape[0] == 4 and not isinstance(x, np.ndarray):
        arr = arr[None, :]
    if arr.ndim != 2 or arr.shape[1] != 4 or arr.shape[0] < 1:
        raise ValueError(f"expected a quaternion vector of shape (n, 4), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("quaternion vector has non-finite entries")
    return arr


def basis_vector(n: int, k: int, q=1.0) -> np.ndarray:
    """``e_k q`` in H^n."""
    x = np.zeros((n, 4))
    x[k] = as_quaternion(q).to_array()
    return x


def inner(x, y) -> Quaternion:
    """``<x, y> = sum_k conj(y_k) x_k``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise LengthMismatch(f"vector shapes differ: {x.shape} vs {y.shape}")
    return Quaternion.from_array(qmul(qconj(y), x).sum(axis=-2))


def norm(x) -> float:
    return float(np.linalg.norm(np.asarray(x, dtype=float)))


def right_mul(x, q) -> np.ndarray:
    """``R_q x = x q`` entrywise; works on batches too."""
    return qmul(x, as_quaternion(q).to_array())


def f_part(q, fr: Frame) -> FScalar:
    """Component of ``q`` in F along F phi (the ``u1`` of ``q = u1 + u2 phi``)."""
    c = fr.coords(as_quaternion(q))
    return FScalar(c[0], c[1])


def f_inner(x, y, fr: Frame) -> FScalar:
    """The F-Hermitian form ``<x, y>_F = f_part(<x, y>)``."""
    return f_part(inner(x, y), fr)


def to_fcoords(x, fr: Frame) -> np.ndarray:
    """Complex coordinates (a, b) of shape (..., 2n) for vectors (..., n, 4)."""
    a, b = fr.symplectic(x)
    return np.concatenate([a, b], axis=-1)


def from_fcoords(z, fr: Frame) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    n = z.shape[-1] // 2
    return fr.from_symplectic(z[..., :n], z[..., n:])


def real_matrix(op: Callable[[np.ndarray], np.ndarray], n: int) -> np.ndarray:
    """Matrix of a real-linear map on H^n in the coordinates ``(x_k)_a``.

    ``op`` must accept a batch of vectors of shape (m, n, 4).
    """
    eye = np.eye(4 * n).reshape(4 * n, n, 4)
    return op(eye).reshape(4 * n, 4 * n).T


@dataclass(frozen=True)
class FSubspace:
    """F-subspace of H^n given by an F-orthonormal basis."""

    frame: Frame
    basis: np.ndarray  # (r, n, 4)

    @property
    def dim(self) -> int:
        return int(self.basis.shape[0])

    @property
    def n(self) -> int:
        return int(self.basis.shape[1])

    def coords(self) -> np.ndarray:
        """Basis as rows of complex coordinates, shape (r, 2n)."""
        return to_fcoords(self.basis, self.frame)

    def contains(self, x, tol: float = DEFAULT_TOL) -> bool:
        x = np.asarray(x, dtype=float)
        resid = x - f_project(x, self)
        return norm(resid) <= tol * max(1.0, norm(x))

    def contains_subspace(self, other: "FSubspace", tol: float = DEFAULT_TOL) -> bool:
        return all(self.contains(b, tol) for b in other.basis)

    def equals(self, other: "FSubspace", tol: float = DEFAULT_TOL) -> bool:
        return (self.dim == other.dim and self.contains_subspace(other, tol)
                and other.contains_subspace(self, tol))

    def right_mul(self, q) -> "FSubspace":
        """Image under ``R_q``; an F-subspace again when q is in F or F phi."""
        return f_orthonormalize(list(right_mul(self.basis, q)), self.frame)

    def __add__(self, other: "FSubspace") -> "FSubspace":
        return f_orthonormalize(list(self.basis) + list(other.basis), self.frame)


def _gram_schmidt(rows: np.ndarray, tol: float) -> np.ndarray:
    """Gram-Schmidt with one re-orthogonalization pass (CGS2), on rows of C^m."""
    m = rows.shape[1]
    if rows.shape[0] == 0:
        return np.zeros((0, m), dtype=complex)
    scale = max(1.0, float(np.max(np.linalg.norm(rows, axis=1))))
    Q = np.zeros((min(rows.shape[0], m), m), dtype=complex)
    r = 0
    for v in rows:
        w = v.astype(complex)
        for _ in range(2):
            w = w - (Q[:r].conj() @ w) @ Q[:r]
        nrm = np.linalg.norm(w)
        if nrm > tol * scale:
            Q[r] = w / nrm
            r += 1
            if r == m:
                break
    return Q[:r]


def f_orthonormalize(vectors: Sequence, fr: Frame, tol: float = DEFAULT_TOL) -> FSubspace:
    """F-orthonormal basis of the right F-span of ``vectors``.

    Vectors whose residual falls below ``tol * max(1, largest input norm)``
    are dropped.
    """
    vecs = [np.asarray(v, dtype=float) for v in vectors]
    if not vecs:
        raise ValueError("need at least one vector to fix the dimension")
    shapes = {v.shape for v in vecs}
    if len(shapes) != 1:
        raise LengthMismatch(f"vectors of different shapes: {sorted(shapes)}")
    n = vecs[0].shape[0]
    z = _gram_schmidt(to_fcoords(np.stack(vecs), fr), tol)
    basis = from_fcoords(z, fr) if len(z) else np.zeros((0, n, 4))
    return FSubspace(frame=fr, basis=basis)


def f_project(x, S: FSubspace) -> np.ndarray:
    """``sum_i b_i <x, b_i>_F``: F-orthogonal projection onto ``S``."""
    x = np.asarray(x, dtype=float)
    if x.shape[-2:] != (S.n, 4):
        raise LengthMismatch(f"vector of shape {x.shape} vs subspace of H^{S.n}")
    if S.dim == 0:
        return np.zeros_like(x)
    B = S.coords()
    z = to_fcoords(x, S.frame)
    return from_fcoords((z @ B.conj().T) @ B, S.frame)


def f_rank(vectors: Sequence, fr: Frame, tol: float = DEFAULT_TOL) -> int:
    return f_orthonormalize(vectors, fr, tol).dim


def h_rank(vectors: Sequence, fr: Frame | None = None, tol: float = DEFAULT_TOL) -> int:
    """Quaternionic rank: half the F-rank of ``{v, v phi}``."""
    fr = fr if fr is not None else Frame.default()
    vecs = [np.asarray(v, dtype=float) for v in vectors]
    if not vecs:
        return 0
    doubled = vecs + [right_mul(v, fr.phi) for v in vecs]
    return f_rank(doubled, fr, tol) // 2


def h_orthonormalize(vectors: Sequence, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Quaternionic Gram-Schmidt: ``w <- w - u <w, u>`` over H directly.

    Each pass removes the components along all accepted vectors at once;
    two passes keep the result orthonormal to rounding.
    """
    vecs = [np.asarray(v, dtype=float) for v in vectors]
    if not vecs:
        return np.zeros((0, 0, 4))
    scale = max([1.0] + [norm(v) for v in vecs])
    U = np.zeros((len(vecs),) + vecs[0].shape)
    r = 0
    for v in vecs:
        w = v.copy()
        for _ in range(2):
            coef = qmul(qconj(U[:r]), w).sum(axis=1)        # <w, u> for every u
            w = w - qmul(U[:r], coef[:, None]).sum(axis=0)
        nrm = norm(w)
        if nrm > tol * scale:
            U[r] = w / nrm
            r += 1
    return U[:r]
