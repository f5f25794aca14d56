"""Spectral decomposition of skew-selfadjoint quaternion matrices.

A quaternion matrix ``A`` (array of shape (n, n, 4)) acts on H^n from the
left.  Relative to a frame, ``A`` is realised as a complex 2n x 2n matrix
on the symplectic coordinates ``x = a + phi b`` (see :mod:`quatspec.hmod`).
For skew-selfadjoint ``A`` that matrix is skew-Hermitian, and
``-f embed(A)`` is Hermitian; its eigenprojections give the F-linear
spectral measure ``E_F`` on the axis ``f R``.  Folding ``+t f`` and ``-t f``
together produces the H-linear measure ``E`` on the half-axis ``f_+`` and
the complex structure ``J = R_f (E_F(f_+) - E_F(f_-))``.

On ``ker A`` the map ``R_f`` is not H-linear, so the kernel gets its own
complex structure ``J_0 = sum_k u_k f u_k*`` built from an H-orthonormal
basis ``(u_k)`` of the kernel.  The kernel part of ``E_F`` is then split
into the eigenspaces ``J_0 = R_f`` and ``J_0 = -R_f``, which are counted
with ``f_+`` and ``f_-`` respectively; the formula for ``J`` holds verbatim.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .exceptions import NotHermitian, NotSkewSelfadjoint
from .hmod import from_fcoords, h_orthonormalize, real_matrix, right_mul, to_fcoords
from .quat import DEFAULT_TOL, Frame, qconj, qmatmul, qmatvec, qmul

EIG_TOL = 1e-15
MAX_SWEEPS = 100


def as_qmatrix(A) -> np.ndarray:
    """Validate a square quaternion matrix of shape (n, n, 4) with finite entries."""
    arr = np.asarray(A, dtype=float)
    if arr.ndim != 3 or arr.shape[0] != arr.shape[1] or arr.shape[2] != 4 or arr.shape[0] < 1:
        raise ValueError(f"expected a quaternion matrix of shape (n, n, 4), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("quaternion matrix has non-finite entries")
    return arr


def identity(n: int) -> np.ndarray:
    out = np.zeros((n, n, 4))
    out[np.arange(n), np.arange(n), 0] = 1.0
    return out


def qmat_norm(A) -> float:
    """Frobenius norm over all 4 n^2 real coordinates."""
    return float(np.linalg.norm(np.asarray(A, dtype=float)))


def adjoint(A) -> np.ndarray:
    """Conjugate transpose; ``<A x, y> = <x, adjoint(A) y>``."""
    return qconj(np.swapaxes(np.asarray(A, dtype=float), -3, -2))


def is_skew_selfadjoint(A, tol: float = DEFAULT_TOL) -> bool:
    return skew_residual(A) <= tol * max(1.0, qmat_norm(A))


def skew_residual(A) -> float:
    A = np.asarray(A, dtype=float)
    return qmat_norm(A + adjoint(A))


def qmatrix_real(A) -> np.ndarray:
    """Real 4n x 4n matrix of ``x -> A x``."""
    A = np.asarray(A, dtype=float)
    return real_matrix(lambda x: qmatvec(A, x), A.shape[0])


@dataclass(frozen=True)
class FMatrix:
    """F-linear operator on H^n stored as a complex matrix on ``(a, b)``."""

    frame: Frame
    data: np.ndarray  # (2n, 2n) complex

    @property
    def n(self) -> int:
        return self.data.shape[0] // 2

    def apply(self, x) -> np.ndarray:
        """Act on a vector or batch of vectors of shape (..., n, 4)."""
        z = to_fcoords(np.asarray(x, dtype=float), self.frame)
        return from_fcoords(z @ self.data.T, self.frame)

    def __matmul__(self, other: "FMatrix") -> "FMatrix":
        return FMatrix(self.frame, self.data @ other.data)

    def __add__(self, other: "FMatrix") -> "FMatrix":
        return FMatrix(self.frame, self.data + other.data)

    def __sub__(self, other: "FMatrix") -> "FMatrix":
        return FMatrix(self.frame, self.data - other.data)

    def to_real(self) -> np.ndarray:
        """Real 4n x 4n matrix of the map on H^n."""
        return real_matrix(self.apply, self.n)

    def is_hermitian(self, tol: float = DEFAULT_TOL) -> bool:
        d = self.data
        return np.linalg.norm(d - d.conj().T) <= tol * max(1.0, np.linalg.norm(d))

    def is_skew_hermitian(self, tol: float = DEFAULT_TOL) -> bool:
        d = self.data
        return np.linalg.norm(d + d.conj().T) <= tol * max(1.0, np.linalg.norm(d))

    def rank(self) -> int:
        """Rank of a projection, read off its trace."""
        return int(round(float(np.trace(self.data).real)))


def embed(A, fr: Frame) -> FMatrix:
    """``[[P, -conj(Q)], [Q, conj(P)]]`` where ``A_kl = P_kl + phi Q_kl``."""
    P, Q = fr.symplectic(np.asarray(A, dtype=float))
    return FMatrix(fr, np.block([[P, -Q.conj()], [Q, P.conj()]]))


def unembed(M: FMatrix) -> np.ndarray:
    """Quaternion matrix with the action of ``M`` on the standard H-basis.

    Exact inverse of :func:`embed` on H-linear operators.
    """
    n = M.n
    return M.frame.from_symplectic(M.data[:n, :n], M.data[n:, :n])


@lru_cache(maxsize=64)
def _rounds(m: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    """Round-robin schedule covering every index pair once per sweep."""
    players = list(range(m)) + ([m] if m % 2 else [])
    size = len(players)
    out = []
    for _ in range(size - 1):
        pairs = [(players[i], players[size - 1 - i]) for i in range(size // 2)]
        pairs = [(min(p, q), max(p, q)) for p, q in pairs if m not in (p, q)]
        out.append((np.array([p for p, _ in pairs]), np.array([q for _, q in pairs])))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(out)


def hermitian_eigen(M, tol: float = EIG_TOL, max_sweeps: int = MAX_SWEEPS):
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    ``M`` is an :class:`FMatrix` or a complex array.  Each sweep visits all
    index pairs in a fixed round-robin order; the disjoint rotations of one
    round are applied together.  Sweeps stop once the off-diagonal Frobenius
    mass is at most ``tol * ||M||``.

    Returns ascending real eigenvalues and a unitary matrix whose columns are
    the matching eigenvectors.
    """
    data = M.data if isinstance(M, FMatrix) else np.asarray(M, dtype=complex)
    A = np.array(data, dtype=complex)
    m = A.shape[0]
    scale = float(np.linalg.norm(A))
    herm_tol = max(tol, DEFAULT_TOL)
    if np.linalg.norm(A - A.conj().T) > herm_tol * max(1.0, scale):
        raise NotHermitian("matrix is not Hermitian to tolerance")
    A = (A + A.conj().T) / 2
    V = np.eye(m, dtype=complex)
    offmask = ~np.eye(m, dtype=bool)
    tiny = np.finfo(float).tiny
    for _ in range(max_sweeps):
        if m < 2 or np.linalg.norm(A[offmask]) <= tol * scale:
            break
        for P, Q in _rounds(m):
            apq = A[P, Q]
            mag = np.abs(apq)
            active = mag > tiny
            if not active.any():
                continue
            safe = np.where(active, mag, 1.0)
            phase = np.where(active, apq / safe, 1.0)
            theta = (A[Q, Q].real - A[P, P].real) / (2.0 * safe)
            t = np.where(theta >= 0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
            t = np.where(active, t, 0.0)
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            g11, g12 = c, s
            g21, g22 = -s * phase.conj(), c * phase.conj()

            # the disjoint rotations of one round as a single unitary
            G = np.eye(m, dtype=complex)
            G[P, P], G[P, Q], G[Q, P], G[Q, Q] = g11, g12, g21, g22
            A = G.conj().T @ A @ G
            A[P[active], Q[active]] = 0.0
            A[Q[active], P[active]] = 0.0
            V = V @ G
    w = np.diagonal(A).real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order]


@dataclass(frozen=True)
class SpectralData:
    """Atoms of ``E`` on ``f_+`` with the F-linear and H-linear projections.

    Lists are aligned with ``atoms``.  For the zero atom ``EF_pos`` and
    ``EF_neg`` hold the two halves of the kernel projection ``EF_zero``
    (where ``J`` acts as ``R_f`` and as ``-R_f``).
    """

    frame: Frame
    atoms: np.ndarray
    EF_pos: list[FMatrix]
    EF_neg: list[FMatrix]
    EF_zero: FMatrix
    E_f: list[FMatrix]          # E_k as F-linear maps (before pulling back)
    E: list[np.ndarray]         # E_k as quaternion matrices
    J_f: FMatrix
    J: np.ndarray
    eigenvalues: np.ndarray = field(repr=False)
    eigenvectors: np.ndarray = field(repr=False)
    eig_sign: np.ndarray = field(repr=False)  # +1 for columns in H+, -1 for H-
    norm: float = 0.0

    @property
    def n(self) -> int:
        return self.J.shape[0]

    @property
    def has_zero_atom(self) -> bool:
        return bool(len(self.atoms) and self.atoms[0] == 0.0)

    @property
    def EF_plus(self) -> FMatrix:
        """``E_F(f_+)``, the projection onto ``H+``."""
        return _fsum(self.frame, self.EF_pos, self.EF_zero.data.shape)

    @property
    def EF_minus(self) -> FMatrix:
        return _fsum(self.frame, self.EF_neg, self.EF_zero.data.shape)

    def multiplicities(self) -> list[int]:
        """H-rank of each ``E_k`` (half its F-rank)."""
        return [e.rank() // 2 for e in self.E_f]

    def measure(self, atom_mask) -> np.ndarray:
        """``E(alpha)`` for the set of atoms selected by a boolean mask."""
        out = np.zeros((self.n, self.n, 4))
        for keep, e in zip(atom_mask, self.E):
            if keep:
                out = out + e
        return out


def _fsum(fr: Frame, mats: list[FMatrix], shape) -> FMatrix:
    out = np.zeros(shape, dtype=complex)
    for m in mats:
        out = out + m.data
    return FMatrix(fr, out)


def kernel_structure(E0: np.ndarray, fr: Frame, tol: float = DEFAULT_TOL) -> np.ndarray:
    """H-linear complex structure ``sum_k u_k f u_k*`` on the range of ``E0``.

    ``u`` is the H-orthonormalized sequence of the columns of ``E0``, so the
    first nonzero column of ``E0`` is (up to scale) an eigenvector of
    ``J_0`` for ``R_f``.
    """
    u = h_orthonormalize([E0[:, c] for c in range(E0.shape[1])], tol)
    n = E0.shape[0]
    out = np.zeros((n, n, 4))
    f = fr.f.to_array()
    for v in u:
        out = out + qmul(qmul(v[:, None], f), qconj(v)[None, :])
    return out


def _projector(V: np.ndarray, cols) -> np.ndarray:
    W = V[:, cols]
    return W @ W.conj().T


def cluster_atoms(w: np.ndarray, ctol: float) -> list[tuple[float, np.ndarray]]:
    """Group eigenvalue indices by ``|w|`` with greedy gap merging.

    Returns ``(t, indices)`` pairs, ``t`` the mean absolute value of the
    group, ascending; a group with ``t < ctol`` becomes the zero atom.
    """
    absw = np.abs(w)
    order = np.argsort(absw, kind="stable")
    groups: list[list[int]] = []
    for idx in order:
        if groups and absw[idx] - absw[groups[-1][-1]] < ctol:
            groups[-1].append(int(idx))
        else:
            groups.append([int(idx)])
    out = []
    for g in groups:
        t = float(np.mean(absw[g]))
        out.append((0.0 if t < ctol else t, np.array(sorted(g))))
    return out


def spectral_data(A, fr: Frame | None = None, cluster_tol: float = DEFAULT_TOL,
                  tol: float = DEFAULT_TOL, eig_tol: float = EIG_TOL) -> SpectralData:
    """Spectral measure ``E``, ``E_F`` and complex structure ``J`` of ``A``."""
    A = as_qmatrix(A)
    fr = fr if fr is not None else Frame.default()
    anorm = qmat_norm(A)
    if not is_skew_selfadjoint(A, tol):
        raise NotSkewSelfadjoint(
            f"||A + A*|| = {skew_residual(A):.3e} exceeds tolerance")
    n = A.shape[0]
    M = embed(A, fr).data
    H = -1j * M
    w, V = hermitian_eigen((H + H.conj().T) / 2, tol=eig_tol)
    ctol = cluster_tol * max(1.0, anorm)

    zero = np.zeros((2 * n, 2 * n), dtype=complex)
    V = V.copy()
    sign = np.where(w > 0, 1, -1)
    atoms, pos, neg = [], [], []
    EF_zero = zero
    for t, idx in cluster_atoms(w, ctol):
        if t == 0.0:
            EF_zero = _projector(V, idx)
            # rotate the kernel basis onto the eigenvectors of J_0
            J0 = embed(kernel_structure(unembed(FMatrix(fr, EF_zero)), fr, tol), fr).data
            W = V[:, idx]
            k, U = hermitian_eigen(-1j * (W.conj().T @ J0 @ W), tol=eig_tol)
            V[:, idx] = W @ U
            sign[idx] = np.where(k > 0, 1, -1)
        atoms.append(t)
        pos.append(_projector(V, idx[sign[idx] > 0]))
        neg.append(_projector(V, idx[sign[idx] < 0]))
    # the zero group always sorts first, so atoms are already ascending
    ef = [p + q for p, q in zip(pos, neg)]
    J_data = 1j * (sum(pos, zero) - sum(neg, zero))
    F = lambda d: FMatrix(fr, d)  # noqa: E731
    E_f = [F(d) for d in ef]
    J_f = F(J_data)
    return SpectralData(
        frame=fr,
        atoms=np.array(atoms),
        EF_pos=[F(d) for d in pos],
        EF_neg=[F(d) for d in neg],
        EF_zero=F(EF_zero),
        E_f=E_f,
        E=[unembed(e) for e in E_f],
        J_f=J_f,
        J=unembed(J_f),
        eigenvalues=w,
        eigenvectors=V,
        eig_sign=sign,
        norm=anorm,
    )


def reconstruct(sd: SpectralData) -> np.ndarray:
    """``sum_k R_{-lambda_k f} J E_k``; ``-lambda_k f`` is the real ``t_k``."""
    out = np.zeros((sd.n, sd.n, 4))
    for t, e in zip(sd.atoms, sd.E):
        out = out + t * qmatmul(sd.J, e)
    return out


def right_mul_real(q, n: int) -> np.ndarray:
    """Real matrix of ``R_q`` on H^n."""
    return real_matrix(lambda x: right_mul(x, q), n)
