"""Seeded random skew-selfadjoint matrices."""

from __future__ import annotations

import numpy as np

from .hmod import h_orthonormalize
from .quat import I, as_quaternion, make_imaginary_unit, qmatmul
from .spectral import adjoint


def random_skew(n: int, seed: int | np.random.Generator = 0) -> np.ndarray:
    """``(B - B*) / 2`` for ``B`` with coordinates uniform on [-1, 1]."""
    rng = np.random.default_rng(seed)
    B = rng.uniform(-1.0, 1.0, size=(n, n, 4))
    return (B - adjoint(B)) / 2


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Columns of a random quaternionic unitary, shape (n, n, 4) indexed [row, col]."""
    while True:
        U = h_orthonormalize(list(rng.uniform(-1.0, 1.0, size=(n, n, 4))))
        if len(U) == n:
            return np.swapaxes(U, 0, 1)


def distinct_atoms(n: int, rng: np.random.Generator, zero_atom: bool = False) -> np.ndarray:
    """``n`` atoms in [0.5, n + 0.5], at least 0.2 apart; the first is 0 if asked."""
    t = np.arange(1, n + 1) + rng.uniform(-0.4, 0.4, size=n)
    if zero_atom:
        t[0] = 0.0
    return t


def simple_skew(n: int, seed: int | np.random.Generator = 0, zero_atom: bool = False,
                unit=I) -> np.ndarray:
    """``sum_k t_k u_k f u_k*`` for a random unitary ``(u_k)`` and distinct ``t_k``."""
    rng = np.random.default_rng(seed)
    U = random_unitary(n, rng)
    t = distinct_atoms(n, rng, zero_atom)
    f = make_imaginary_unit(as_quaternion(unit)).to_array()
    D = np.zeros((n, n, 4))
    D[np.arange(n), np.arange(n)] = t[:, None] * f
    A = qmatmul(qmatmul(U, D), adjoint(U))
    return (A - adjoint(A)) / 2


def random_imaginary_unit(seed: int | np.random.Generator) -> np.ndarray:
    rng = np.random.default_rng(seed)
    v = rng.normal(size=3)
    return np.concatenate([[0.0], v / np.linalg.norm(v)])
