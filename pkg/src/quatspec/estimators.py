"""Estimator-style wrappers around the decomposition and the model."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .genvec import has_simple_spectrum, special_generating_vector
from .model import build_model, phi, phi_inv, q_apply, verify_equivalence
from .quat import DEFAULT_TOL, qmatvec
from .spectral import reconstruct, spectral_data
from .validation import check_frame, check_qmatrix, check_qvectors


class SpectralDecomposition(BaseEstimator):
    """Spectral measure ``E`` and complex structure ``J`` of a skew-selfadjoint matrix.

    Parameters
    ----------
    field : None, Quaternion or array-like of 4 floats
        Nonreal quaternion fixing the subfield F; ``None`` means ``f = i``.
    tol : float
        Skew-selfadjointness and rank tolerance.
    cluster_tol : float
        Relative gap below which eigenvalues share an atom.

    Attributes
    ----------
    frame_, spectral_data_, atoms_, E_, J_, multiplicities_, simple_
    """

    def __init__(self, field=None, tol: float = DEFAULT_TOL, cluster_tol: float = DEFAULT_TOL):
        self.field = field
        self.tol = tol
        self.cluster_tol = cluster_tol

    def fit(self, A, y=None):
        A = check_qmatrix(A)
        self.frame_ = check_frame(self.field)
        sd = spectral_data(A, self.frame_, cluster_tol=self.cluster_tol, tol=self.tol)
        self.spectral_data_ = sd
        self.atoms_ = sd.atoms
        self.E_ = np.stack(sd.E)
        self.J_ = sd.J
        self.multiplicities_ = np.array(sd.multiplicities())
        self.simple_ = has_simple_spectrum(sd, self.tol)
        self.n_features_in_ = A.shape[0]
        return self

    def transform(self, X):
        """Per-atom components ``E_k x``: shape (m, K, n, 4), or (K, n, 4) for one vector."""
        check_is_fitted(self)
        batch, single = check_qvectors(X, self.n_features_in_)
        out = np.stack([qmatvec(e, batch) for e in self.E_], axis=1)
        return out[0] if single else out

    def inverse_transform(self, P):
        """Sum the atom components back into vectors."""
        check_is_fitted(self)
        return np.asarray(P, dtype=float).sum(axis=-3)

    def reconstruct(self):
        """``sum_k t_k J E_k``, equal to the fitted matrix."""
        check_is_fitted(self)
        return reconstruct(self.spectral_data_)


class MultiplicationModel(BaseEstimator):
    """Unitary model of a skew-selfadjoint matrix with simple spectrum.

    After :meth:`fit`, :meth:`transform` sends vectors of H^n to functions on
    the atoms (``Phi^-1``) and :meth:`inverse_transform` sends them back
    (``Phi``).  Under this change of variables the matrix acts as left
    multiplication by ``t_k f`` (:meth:`apply_q`).
    """

    def __init__(self, field=None, tol: float = DEFAULT_TOL, cluster_tol: float = DEFAULT_TOL):
        self.field = field
        self.tol = tol
        self.cluster_tol = cluster_tol

    def fit(self, A, y=None):
        A = check_qmatrix(A)
        self.frame_ = check_frame(self.field)
        sd = spectral_data(A, self.frame_, cluster_tol=self.cluster_tol, tol=self.tol)
        gv = special_generating_vector(sd, self.tol)
        self.spectral_data_ = sd
        self.generating_vector_ = gv.g
        self.certificate_ = gv.certificate
        self.model_ = build_model(sd, gv, self.tol)
        self.atoms_ = self.model_.measure.atoms
        self.weights_ = self.model_.measure.weights
        self.n_features_in_ = A.shape[0]
        self._A = A
        return self

    def transform(self, X):
        check_is_fitted(self)
        batch, single = check_qvectors(X, self.n_features_in_)
        out = np.stack([phi_inv(self.model_, x) for x in batch])
        return out[0] if single else out

    def inverse_transform(self, H):
        check_is_fitted(self)
        return phi(self.model_, H)

    def apply_q(self, H):
        check_is_fitted(self)
        return q_apply(self.model_, H)

    def verify(self) -> dict:
        """Residual report of the unitary equivalence."""
        check_is_fitted(self)
        return verify_equivalence(self._A, self.model_, self.spectral_data_, self.tol)
