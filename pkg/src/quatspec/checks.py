"""Invariant residuals for a decomposition, a generating vector and a model.

Every function returns plain dictionaries of floats so the numbers can be
asserted in tests and written into reports unchanged.  Operator residuals
are Frobenius norms; maps that are only F-linear are compared through their
real 4n x 4n matrices.
"""

from __future__ import annotations

import numpy as np

from .exceptions import QuatspecError
from .genvec import has_simple_spectrum, special_generating_vector
from .hmod import f_orthonormalize, from_fcoords, right_mul, to_fcoords
from .model import build_model, verify_equivalence
from .quat import DEFAULT_TOL, I, J, K, Frame, qmatvec
from .spectral import (SpectralData, adjoint, identity, qmat_norm, qmatmul,
                       reconstruct, right_mul_real, skew_residual, spectral_data)


def spectral_residuals(A, sd: SpectralData) -> dict:
    """Measure axioms, J axioms, commutation with R_phi and reconstruction."""
    A = np.asarray(A, dtype=float)
    n = sd.n
    I_n = identity(n)
    E = np.stack(sd.E)
    na = len(E)

    def norms(X):
        return np.sqrt(np.sum(X ** 2, axis=(-3, -2, -1)))

    out = {}
    out["j_square"] = qmat_norm(qmatmul(sd.J, sd.J) + I_n)
    out["j_skew"] = qmat_norm(sd.J + adjoint(sd.J))
    out["j_commute"] = float(np.max(norms(qmatmul(sd.J, E) - qmatmul(E, sd.J))))
    prods = qmatmul(E[:, None], E[None, :])  # E_a E_b
    diag = np.arange(na)
    out["e_idempotent"] = float(np.max(norms(prods[diag, diag] - E)))
    out["e_selfadjoint"] = float(np.max(norms(E - adjoint(E))))
    off = ~np.eye(na, dtype=bool)
    out["e_orthogonal"] = float(np.max(norms(prods[off]))) if na > 1 else 0.0
    out["e_sum"] = qmat_norm(E.sum(axis=0) - I_n)

    rq = np.stack([right_mul_real(q, n) for q in (I, J, K)])[:, None]
    fr = sd.frame
    M = _freal(fr, [e.data for e in sd.E_f])
    out["e_h_linear"] = float(np.max(np.linalg.norm(M @ rq - rq @ M, axis=(-2, -1))))
    out["e_pullback"] = float(np.max(np.linalg.norm(M - _qreal(E), axis=(-2, -1))))
    jr = _freal(fr, [sd.J_f.data])
    out["j_h_linear"] = float(np.max(np.linalg.norm(jr @ rq - rq @ jr, axis=(-2, -1))))
    out["j_pullback"] = float(np.linalg.norm(jr - _qreal(sd.J[None])))

    rphi = right_mul_real(fr.phi, n)
    P = _freal(fr, [e.data for e in sd.EF_pos])
    Q = _freal(fr, [e.data for e in sd.EF_neg])
    out["ef_phi_commute"] = float(np.max(np.linalg.norm(P @ rphi - rphi @ Q, axis=(-2, -1))))
    out["reconstruction"] = qmat_norm(A - reconstruct(sd))
    w = np.sort(sd.eigenvalues)
    out["spectral_symmetry"] = float(np.max(np.abs(w + w[::-1]))) if len(w) else 0.0
    return out


def _freal(fr: Frame, mats) -> np.ndarray:
    """Real 4n x 4n matrices of a stack of F-matrices on symplectic coordinates."""
    D = np.stack(mats)
    n = D.shape[-1] // 2
    z = to_fcoords(np.eye(4 * n).reshape(4 * n, n, 4), fr)
    out = from_fcoords(z @ np.swapaxes(D, -1, -2), fr)
    return np.swapaxes(out.reshape(len(D), 4 * n, 4 * n), -1, -2)


def _qreal(A: np.ndarray) -> np.ndarray:
    """Real 4n x 4n matrices of a stack of quaternion matrices."""
    n = A.shape[-2]
    out = qmatvec(A, np.eye(4 * n).reshape(4 * n, n, 4)[None])
    return np.swapaxes(out.reshape(len(A), 4 * n, 4 * n), -1, -2)


def hplus_bases(sd: SpectralData):
    """F-orthonormal bases of ``H+`` and of ``R_phi H+``, shape (r, n, 4) each."""
    hp = from_fcoords(sd.eigenvectors[:, sd.eig_sign > 0].T, sd.frame)
    return hp, right_mul(hp, sd.frame.phi)


def hplus_decomposition(sd: SpectralData, tol: float = DEFAULT_TOL) -> dict:
    """F-rank of ``H+ + R_phi H+`` and the largest cross F-inner product."""
    hp, hq = hplus_bases(sd)
    fr = sd.frame
    rank = f_orthonormalize(list(hp) + list(hq), fr, tol).dim
    z1, z2 = to_fcoords(hp, fr), to_fcoords(hq, fr)
    cross = float(np.max(np.abs(z2.conj() @ z1.T))) if len(z1) and len(z2) else 0.0
    return {"rank": rank, "dim_hplus": len(hp), "cross": cross}


def _relative(res: dict, scale: float) -> dict:
    return {k: float(v) / scale for k, v in res.items()}


def run_suite(A, fr: Frame | None = None, tol: float = DEFAULT_TOL) -> dict:
    """Every invariant for one matrix, as a report dictionary.

    Residuals are divided by ``max(1, ||A||)`` (model residuals are already
    relative to ``||h||``, the generating-vector residual to ``||g||``);
    integer defects such as a rank deficit are recorded as residuals too.
    ``pass`` holds iff every residual is at most ``tol``.
    """
    A = np.asarray(A, dtype=float)
    fr = fr if fr is not None else Frame.default()
    n = A.shape[0]
    scale = max(1.0, qmat_norm(A))
    report = {"frame": fr.to_json(), "tolerance": tol}
    residuals = {"skew_selfadjoint": skew_residual(A) / scale}
    report["residuals"] = residuals
    if residuals["skew_selfadjoint"] > tol:
        report["pass"] = False
        return report
    sd = spectral_data(A, fr, tol=tol)
    report["atoms"] = sd.atoms.tolist()
    report["multiplicities"] = sd.multiplicities()
    report["J"] = sd.J.tolist()
    residuals.update(_relative(spectral_residuals(A, sd), scale))
    hd = hplus_decomposition(sd, tol)
    residuals["hplus_rank_deficit"] = float(2 * n - hd["rank"])
    residuals["hplus_cross"] = hd["cross"]
    simple = has_simple_spectrum(sd, tol)
    report["simple"] = simple
    if simple:
        try:
            gv = special_generating_vector(sd, tol)
        except QuatspecError as exc:
            report["error"] = str(exc)
            residuals["generating_vector"] = float("inf")
        else:
            cert = gv.certificate
            report["certificate"] = cert.to_json()
            residuals["generating_j"] = cert.j_residual / max(1.0, float(np.linalg.norm(gv.g)))
            residuals["generating_rank_deficit"] = float(n - cert.h_rank)
            m = build_model(sd, gv, tol)
            report["weights"] = m.measure.weights.tolist()
            eq = verify_equivalence(A, m, sd, tol)
            residuals.update({"model_" + k: v for k, v in eq["residuals"].items()})
            residuals["model_surjectivity_deficit"] = float(2 * n - eq["surjective_rank"])
    report["pass"] = bool(all(v <= tol for v in residuals.values()))
    return report
