"""Quaternion arithmetic, subfield frames and symplectic coordinates.

Scalars are :class:`Quaternion` values; vectors and matrices over the
quaternions are plain ``float`` arrays whose last axis holds the four real
coordinates ``[q0, q1, q2, q3]`` in the basis ``{1, i, j, k}``.  All array
routines broadcast over leading axes.

A :class:`Frame` fixes an imaginary unit ``f`` (hence a subfield
``F = R<1, f>``) together with a unit ``phi`` orthogonal to ``1, f``.
Elements of ``F`` are identified with Python ``complex`` numbers through
``a + b f  <->  a + b j`` (``j`` being Python's imaginary unit).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .exceptions import NotImaginaryUnit, RealInput

DEFAULT_TOL = 1e-9

# _MUL[a, b, c]: coefficient of e_c in e_a * e_b, basis e = (1, i, j, k)
_MUL = np.zeros((4, 4, 4))
for _a, _b, _c, _s in [
    (0, 0, 0, 1), (0, 1, 1, 1), (0, 2, 2, 1), (0, 3, 3, 1),
    (1, 0, 1, 1), (1, 1, 0, -1), (1, 2, 3, 1), (1, 3, 2, -1),
    (2, 0, 2, 1), (2, 1, 3, -1), (2, 2, 0, -1), (2, 3, 1, 1),
    (3, 0, 3, 1), (3, 1, 2, 1), (3, 2, 1, -1), (3, 3, 0, -1),
]:
    _MUL[_a, _b, _c] = _s
del _a, _b, _c, _s


@dataclass(frozen=True)
class Quaternion:
    """An element ``q0 + q1 i + q2 j + q3 k`` of the quaternions."""

    q0: float = 0.0
    q1: float = 0.0
    q2: float = 0.0
    q3: float = 0.0

    def __post_init__(self):
        for name in ("q0", "q1", "q2", "q3"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"quaternion coordinate {name} is not finite")
            object.__setattr__(self, name, value)

    @classmethod
    def from_array(cls, arr) -> "Quaternion":
        arr = np.asarray(arr, dtype=float)
        if arr.shape != (4,):
            raise ValueError(f"expected 4 coordinates, got shape {arr.shape}")
        return cls(*arr.tolist())

    def to_array(self) -> np.ndarray:
        return np.array([self.q0, self.q1, self.q2, self.q3])

    def __array__(self, dtype=None, copy=None):
        return self.to_array() if dtype is None else self.to_array().astype(dtype)

    def __iter__(self):
        return iter((self.q0, self.q1, self.q2, self.q3))

    @property
    def real(self) -> float:
        return self.q0

    @property
    def vector(self) -> "Quaternion":
        return Quaternion(0.0, self.q1, self.q2, self.q3)

    def __add__(self, other):
        other = as_quaternion(other)
        return Quaternion.from_array(self.to_array() + other.to_array())

    __radd__ = __add__

    def __sub__(self, other):
        other = as_quaternion(other)
        return Quaternion.from_array(self.to_array() - other.to_array())

    def __rsub__(self, other):
        return as_quaternion(other) - self

    def __neg__(self):
        return Quaternion(-self.q0, -self.q1, -self.q2, -self.q3)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion.from_array(self.to_array() * other)
        return q_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion.from_array(self.to_array() * other)
        return q_mul(other, self)

    def __truediv__(self, scalar: float):
        return Quaternion.from_array(self.to_array() / scalar)

    def conj(self) -> "Quaternion":
        return q_conj(self)

    def __abs__(self) -> float:
        return q_abs(self)

    def isclose(self, other, tol: float = DEFAULT_TOL) -> bool:
        other = as_quaternion(other)
        diff = np.linalg.norm(self.to_array() - other.to_array())
        return bool(diff <= tol * max(1.0, abs(self), abs(other)))

    def __repr__(self):
        return f"Quaternion({self.q0!r}, {self.q1!r}, {self.q2!r}, {self.q3!r})"


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def as_quaternion(q) -> Quaternion:
    if isinstance(q, Quaternion):
        return q
    if isinstance(q, (int, float)):
        return Quaternion(float(q))
    return Quaternion.from_array(q)


def _arr(q) -> np.ndarray:
    if isinstance(q, Quaternion):
        return q.to_array()
    return np.asarray(q, dtype=float)


# -- array level -------------------------------------------------------------

def qmul(p, q) -> np.ndarray:
    """Broadcast quaternion product ``p * q`` over arrays with last axis 4."""
    p = _arr(p)
    q = _arr(q)
    p0, p1, p2, p3 = np.moveaxis(p, -1, 0)
    r0, r1, r2, r3 = np.moveaxis(q, -1, 0)
    return np.stack(
        [
            p0 * r0 - p1 * r1 - p2 * r2 - p3 * r3,
            p0 * r1 + p1 * r0 + p2 * r3 - p3 * r2,
            p0 * r2 - p1 * r3 + p2 * r0 + p3 * r1,
            p0 * r3 + p1 * r2 - p2 * r1 + p3 * r0,
        ],
        axis=-1,
    )


def qmul_vector_form(q, p) -> np.ndarray:
    """Product ``q p`` through the scalar/vector formula.

    ``q p = q0 p0 - (q, p) + ([q, p] + p0 q + q0 p)`` with dot and cross
    products of the vector parts.  Kept separate from :func:`qmul` so that
    the two can check each other.
    """
    q = _arr(q)
    p = _arr(p)
    qv, pv = q[..., 1:], p[..., 1:]
    real = q[..., 0] * p[..., 0] - np.sum(qv * pv, axis=-1)
    vec = np.cross(qv, pv) + p[..., :1] * qv + q[..., :1] * pv
    return np.concatenate([real[..., None], vec], axis=-1)


def qconj(q) -> np.ndarray:
    q = _arr(q)
    return q * np.array([1.0, -1.0, -1.0, -1.0])


def qabs(q) -> np.ndarray:
    return np.linalg.norm(_arr(q), axis=-1)


def left_matrix(q) -> np.ndarray:
    """Real 4x4 matrix of ``p -> q p``."""
    return np.einsum("a,abc->cb", _arr(q), _MUL)


def right_matrix(q) -> np.ndarray:
    """Real 4x4 matrix of ``p -> p q``."""
    return np.einsum("b,abc->ca", _arr(q), _MUL)


def _pairs(q: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``q = z1 + z2 j`` with complex ``z1 = q0 + q1 i`` and ``z2 = q2 + q3 i``."""
    return q[..., 0] + 1j * q[..., 1], q[..., 2] + 1j * q[..., 3]


def _hamilton(mm, a, b) -> np.ndarray:
    """Quaternion product with the scalar products replaced by ``mm``.

    Uses ``(a1 + a2 j)(b1 + b2 j) = (a1 b1 - a2 conj(b2)) + (a1 b2 + a2 conj(b1)) j``.
    """
    a1, a2 = _pairs(_arr(a))
    b1, b2 = _pairs(_arr(b))
    z1 = mm(a1, b1) - mm(a2, b2.conj())
    z2 = mm(a1, b2) + mm(a2, b1.conj())
    return np.stack([z1.real, z1.imag, z2.real, z2.imag], axis=-1)


def qmatvec(a, x) -> np.ndarray:
    """Matrix-vector product for a quaternion matrix ``a`` of shape (..., n, m, 4).

    ``x`` has shape (..., m, 4); the result is ``sum_l a[k, l] x[l]``.  A
    stack of matrices is matched against the leading axes of ``x`` after
    them, e.g. ``a`` of shape (K, n, m, 4) with ``x`` of shape (K, b, m, 4).
    """
    return _hamilton(lambda p, q: q @ np.swapaxes(p, -1, -2), a, x)


def qmatmul(a, b) -> np.ndarray:
    return _hamilton(np.matmul, a, b)


# -- scalar level ------------------------------------------------------------

def q_mul(p, q) -> Quaternion:
    return Quaternion.from_array(qmul(as_quaternion(p), as_quaternion(q)))


def q_conj(q) -> Quaternion:
    return Quaternion.from_array(qconj(as_quaternion(q)))


def q_abs(q) -> float:
    return float(qabs(as_quaternion(q)))


def make_imaginary_unit(q, tol: float = DEFAULT_TOL) -> Quaternion:
    """Normalize the vector part of a nonreal quaternion."""
    q = as_quaternion(q)
    vec = q.to_array()[1:]
    norm = float(np.linalg.norm(vec))
    if norm <= tol * max(1.0, abs(q.q0)):
        raise RealInput(f"{q!r} is real; it does not determine a subfield")
    return Quaternion(0.0, *(vec / norm))


def _is_imaginary_unit(q: Quaternion, tol: float) -> bool:
    return abs(q.q0) <= tol and abs(abs(q) - 1.0) <= tol


@dataclass(frozen=True)
class Frame:
    """Orthonormal basis ``{1, f, phi, f phi}`` of the quaternions."""

    f: Quaternion
    phi: Quaternion
    fphi: Quaternion

    @cached_property
    def basis(self) -> np.ndarray:
        """Rows are the coordinates of ``1, f, phi, f phi``."""
        return np.stack([ONE.to_array(), self.f.to_array(), self.phi.to_array(),
                         self.fphi.to_array()])

    def coords(self, x) -> np.ndarray:
        """Real coordinates of ``x`` (last axis 4) in the frame basis."""
        return _arr(x) @ self.basis.T

    def from_coords(self, c) -> np.ndarray:
        return np.asarray(c, dtype=float) @ self.basis

    def to_complex(self, x) -> np.ndarray:
        """Elements of ``F`` (last axis 4) as complex numbers, ``f -> 1j``.

        Only the ``1, f`` coordinates are read.
        """
        c = self.coords(x)
        return c[..., 0] + 1j * c[..., 1]

    def from_complex(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        return (z.real[..., None] * ONE.to_array()
                + z.imag[..., None] * self.f.to_array())

    def symplectic(self, x) -> tuple[np.ndarray, np.ndarray]:
        """Left-form symplectic coordinates: ``x = a + phi b`` with a, b in F."""
        c = self.coords(x)
        return c[..., 0] + 1j * c[..., 1], c[..., 2] - 1j * c[..., 3]

    def from_symplectic(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=complex)
        b = np.asarray(b, dtype=complex)
        c = np.stack([a.real, a.imag, b.real, -b.imag], axis=-1)
        return c @ self.basis

    @classmethod
    def default(cls) -> "Frame":
        return build_frame(I)

    def to_json(self) -> dict:
        return {"f": self.f.to_array().tolist(), "phi": self.phi.to_array().tolist()}


def build_frame(f, tol: float = DEFAULT_TOL) -> Frame:
    """Complete an imaginary unit ``f`` to a frame.

    ``phi`` is the candidate among ``i, j, k`` whose component orthogonal to
    ``span{1, f}`` is largest (ties keep the earlier candidate), normalized.
    """
    f = as_quaternion(f)
    if not _is_imaginary_unit(f, tol):
        raise NotImaginaryUnit(f"{f!r} is not an imaginary unit")
    fa = f.to_array()
    best, best_norm = None, -1.0
    for cand in (I, J, K):
        ca = cand.to_array()
        resid = ca - np.dot(ca, fa) * fa
        norm = float(np.linalg.norm(resid))
        if norm > best_norm + tol:
            best, best_norm = resid, norm
    phi = Quaternion.from_array(best / best_norm)
    return Frame(f=f, phi=phi, fphi=q_mul(f, phi))


@dataclass(frozen=True)
class FScalar:
    """An element ``a + b f`` of the subfield ``F`` (coordinates only)."""

    a: float = 0.0
    b: float = 0.0

    @classmethod
    def from_complex(cls, z: complex) -> "FScalar":
        return cls(float(z.real), float(z.imag))

    def __complex__(self):
        return complex(self.a, self.b)

    def __add__(self, other):
        return FScalar.from_complex(complex(self) + complex(other))

    def __sub__(self, other):
        return FScalar.from_complex(complex(self) - complex(other))

    def __mul__(self, other):
        return FScalar.from_complex(complex(self) * complex(other))

    __rmul__ = __mul__

    def conj(self) -> "FScalar":
        return FScalar(self.a, -self.b)

    def __abs__(self):
        return math.hypot(self.a, self.b)

    def to_quaternion(self, frame: Frame) -> Quaternion:
        return Quaternion.from_array(frame.from_complex(complex(self)))

    def isclose(self, other, tol: float = DEFAULT_TOL) -> bool:
        return abs(complex(self) - complex(other)) <= tol * max(1.0, abs(self))


def symplectic_split(q, fr: Frame) -> tuple[FScalar, FScalar]:
    """Write ``q = u1 + u2 phi`` with ``u1, u2`` in ``F``."""
    c = fr.coords(as_quaternion(q))
    return FScalar(c[0], c[1]), FScalar(c[2], c[3])


def symplectic_join(u1: FScalar, u2: FScalar, fr: Frame) -> Quaternion:
    return u1.to_quaternion(fr) + q_mul(u2.to_quaternion(fr), fr.phi)
