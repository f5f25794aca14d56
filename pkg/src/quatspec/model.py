"""Multiplication-operator model on an atomic L^2_sigma.

A function ``h`` on the atoms ``lambda_k = t_k f`` is an array of shape
(K, 4) holding one quaternion per atom.  ``Phi h = sum_k (E_k g) h_k``
maps it isometrically onto H^n, and ``A Phi = Phi Q`` where
``(Q h)_k = lambda_k h_k`` multiplies from the left.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateWeight, LengthMismatch
from .genvec import GeneratingVector
from .hmod import f_rank, from_fcoords, inner, right_mul, to_fcoords
from .quat import DEFAULT_TOL, Frame, qabs, qconj, qmatvec, qmul
from .spectral import SpectralData, qmat_norm


@dataclass(frozen=True)
class DiscreteMeasure:
    frame: Frame
    atoms: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        if np.any(self.weights <= 0):
            raise DegenerateWeight(f"non-positive weights {self.weights}")
        if len(np.unique(self.atoms)) != len(self.atoms):
            raise ValueError("atoms must be distinct")

    @property
    def points(self) -> np.ndarray:
        """The atoms ``t_k f`` as quaternions, shape (K, 4)."""
        return self.atoms[:, None] * self.frame.f.to_array()


@dataclass(frozen=True)
class DiscreteModel:
    measure: DiscreteMeasure
    g: np.ndarray
    columns: np.ndarray  # (K, n, 4): E_k g

    @property
    def frame(self) -> Frame:
        return self.measure.frame

    @property
    def size(self) -> int:
        return len(self.measure.atoms)

    def to_json(self) -> dict:
        return {
            "frame": self.frame.to_json(),
            "atoms": self.measure.atoms.tolist(),
            "weights": self.measure.weights.tolist(),
            "g": self.g.tolist(),
            "columns": self.columns.tolist(),
        }


def model_norm(m: DiscreteModel, h) -> float:
    """``(sum_k |h_k|^2 sigma_k)^(1/2)``; batched over leading axes."""
    h = _check(m, h)
    out = np.sqrt(np.sum(qabs(h) ** 2 * m.measure.weights, axis=-1))
    return float(out) if out.ndim == 0 else out


def _check(m: DiscreteModel, h) -> np.ndarray:
    h = np.asarray(h, dtype=float)
    if h.shape[-2:] != (m.size, 4):
        raise LengthMismatch(f"model function of shape {h.shape}, expected ({m.size}, 4)")
    return h


def build_model(sd: SpectralData, gv: GeneratingVector | np.ndarray,
                tol: float = DEFAULT_TOL) -> DiscreteModel:
    """``sigma_k = <E_k g, g>`` and the columns ``E_k g``."""
    g = gv.g if isinstance(gv, GeneratingVector) else np.asarray(gv, dtype=float)
    cols = np.stack([qmatvec(e, g) for e in sd.E])
    weights = []
    for c in cols:
        w = inner(c, g)
        if np.linalg.norm(w.to_array()[1:]) > tol * max(1.0, w.q0):
            raise DegenerateWeight(f"<E_k g, g> = {w!r} is not real")
        weights.append(w.q0)
    weights = np.array(weights)
    if np.any(weights <= tol):
        raise DegenerateWeight(f"weights {weights.tolist()} not all above {tol}")
    return DiscreteModel(
        measure=DiscreteMeasure(sd.frame, np.array(sd.atoms, dtype=float), weights),
        g=g, columns=cols)


def phi(m: DiscreteModel, h) -> np.ndarray:
    """``Phi h = sum_k (E_k g) h_k``; ``h`` may be a batch (..., K, 4)."""
    h = _check(m, h)
    return qmatvec(np.swapaxes(m.columns, 0, 1), h)


def phi_inv(m: DiscreteModel, x) -> np.ndarray:
    """``h_k = <E_k x, E_k g> / sigma_k``.

    ``<E_k x, E_k g> = <x, E_k g>`` because ``E_k`` is an orthogonal
    projection, so only the columns are needed.
    """
    x = np.asarray(x, dtype=float)
    vals = [inner(x, c).to_array() for c in m.columns]
    return np.array(vals) / m.measure.weights[:, None]


def q_apply(m: DiscreteModel, h) -> np.ndarray:
    """``(Q h)_k = (t_k f) h_k``."""
    return qmul(m.measure.points, _check(m, h))


def atom_mask(m: DiscreteModel, atomset) -> np.ndarray:
    """Boolean mask from a mask or from an iterable of atom indices."""
    arr = np.asarray(list(atomset) if not isinstance(atomset, np.ndarray) else atomset)
    if arr.dtype == bool:
        if arr.shape != (m.size,):
            raise LengthMismatch("atom mask has wrong length")
        return arr
    mask = np.zeros(m.size, dtype=bool)
    mask[arr.astype(int)] = True
    return mask


def model_spectral_measure(m: DiscreteModel, atomset, h) -> np.ndarray:
    """``E(alpha) h = chi_alpha h``."""
    return np.where(atom_mask(m, atomset)[:, None], _check(m, h), 0.0)


def _split_right(m: DiscreteModel, h):
    """``h_k = h1 + h2 phi`` with ``h1, h2`` in F (quaternion arrays)."""
    fr = m.frame
    c = fr.coords(h)
    one, f = np.array([1.0, 0, 0, 0]), fr.f.to_array()
    h1 = c[..., :1] * one + c[..., 1:2] * f
    h2 = c[..., 2:3] * one + c[..., 3:4] * f
    return h1, h2


def model_spectral_measure_f(m: DiscreteModel, atomset, h, sign: int = 1) -> np.ndarray:
    """Model side of ``E_F(alpha)`` (``sign=+1``) or ``E_F(-alpha)`` (``sign=-1``).

    ``E_F(alpha)`` keeps ``chi h1`` and ``E_F(-alpha)`` keeps ``chi h2 phi``.
    At the zero atom these are the halves where ``J`` acts as ``R_f`` and
    as ``-R_f``.
    """
    h = _check(m, h)
    mask = atom_mask(m, atomset)
    h1, h2 = _split_right(m, h)
    part = h1 if sign > 0 else qmul(h2, m.frame.phi.to_array())
    return np.where(mask[:, None], part, 0.0)


def model_J(m: DiscreteModel, h) -> np.ndarray:
    """``(J h)_k = (h1 - h2 phi) f``."""
    h1, h2 = _split_right(m, _check(m, h))
    fr = m.frame
    return qmul(h1 - qmul(h2, fr.phi.to_array()), fr.f.to_array())


def basis_functions(m: DiscreteModel) -> np.ndarray:
    """Real basis ``chi_k u`` with ``u`` in ``{1, f, phi, f phi}``; shape (4K, K, 4)."""
    K = m.size
    out = np.zeros((4 * K, K, 4))
    for k in range(K):
        out[4 * k: 4 * k + 4, k] = m.frame.basis
    return out


def step_generator(m: DiscreteModel, heights=None) -> np.ndarray:
    """Step function ``g_k = s_k f`` with positive heights (default 1)."""
    heights = np.ones(m.size) if heights is None else np.asarray(heights, dtype=float)
    if np.any(heights <= 0):
        raise ValueError("step heights must be positive")
    return heights[:, None] * m.frame.f.to_array()


def model_h_rank(m: DiscreteModel, h) -> int:
    """H-rank of ``{chi_k h}``: the number of atoms where ``h`` is nonzero."""
    return int(np.sum(qabs(_check(m, h)) > 0))


def verify_equivalence(A, m: DiscreteModel, sd: SpectralData,
                       tol: float = DEFAULT_TOL) -> dict:
    """Residuals of the unitary equivalence between ``A`` and ``Q``.

    Every residual is measured on the real basis of model functions, which
    spans L^2_sigma, so the checks hold for all ``h`` by linearity.
    Residuals other than ``unitarity`` are relative to ``||h||``.
    """
    A = np.asarray(A, dtype=float)
    K = m.size
    fr = m.frame
    cols = m.columns
    gram = qmul(qconj(cols)[None, :], cols[:, None]).sum(axis=-2)  # <c_a, c_b>
    target = np.zeros_like(gram)
    target[np.arange(K), np.arange(K), 0] = m.measure.weights
    unitarity = float(np.linalg.norm(gram - target))

    basis = basis_functions(m)
    hn = model_norm(m, basis)
    ph = phi(m, basis)

    def worst(diff):
        return float(np.max(np.linalg.norm(diff, axis=(-2, -1)) / hn))

    inter = worst(qmatvec(A, ph) - phi(m, q_apply(m, basis)))
    iso = float(np.max(np.abs(np.linalg.norm(ph, axis=(-2, -1)) - hn) / hn))
    # one batch per atom k: chi_k applied to every basis function
    masks = np.eye(K, dtype=bool)
    chi = np.stack([model_spectral_measure(m, mask, basis) for mask in masks])
    measure_res = worst(phi(m, chi) - qmatvec(np.stack(sd.E), ph))
    ef_res = 0.0
    for sign, ef in ((+1, sd.EF_pos), (-1, sd.EF_neg)):
        lhs = phi(m, np.stack([model_spectral_measure_f(m, mask, basis, sign) for mask in masks]))
        z = to_fcoords(ph, fr)
        rhs = from_fcoords(z @ np.swapaxes(np.stack([e.data for e in ef]), -1, -2), fr)
        ef_res = max(ef_res, worst(lhs - rhs))
    j_res = worst(phi(m, model_J(m, basis)) - qmatvec(sd.J, ph))
    doubled = list(cols) + [right_mul(c, fr.phi) for c in cols]
    surj = f_rank(doubled, fr, tol)
    residuals = {
        "unitarity": unitarity,
        "isometry": iso,
        "intertwining": inter,
        "measure_pullback": measure_res,
        "measure_f_pullback": ef_res,
        "j_transport": j_res,
    }
    scale = max(1.0, qmat_norm(A))
    return {
        "residuals": residuals,
        "surjective_rank": surj,
        "pass": bool(all(v <= tol * scale for v in residuals.values())
                     and surj == 2 * A.shape[0]),
    }
