"""Spectral theory of skew-selfadjoint quaternion matrices.

Decomposes an anti-Hermitian quaternion matrix into a spectral measure on
the half-axis ``f_+`` and a complex structure ``J``, builds a generating
vector with ``J g = g f`` when the spectrum is simple, and realises the
matrix as left multiplication by the independent variable on an atomic
``L^2_sigma``.
"""

from .estimators import MultiplicationModel, SpectralDecomposition
from .exceptions import (ConstructionFailed, DegenerateWeight, LengthMismatch, NotHermitian,
                         NotImaginaryUnit, NotSimpleSpectrum, NotSkewSelfadjoint,
                         QuatspecError, RealInput)
from .genvec import (GeneratingVector, cyclic_span, has_simple_spectrum, is_generating,
                     special_generating_vector)
from .hmod import (FSubspace, f_inner, f_orthonormalize, f_part, f_project, h_rank, inner,
                   right_mul)
from .model import (DiscreteMeasure, DiscreteModel, build_model, model_J,
                    model_spectral_measure, phi, phi_inv, q_apply, verify_equivalence)
from .quat import (Frame, FScalar, Quaternion, build_frame, make_imaginary_unit, q_abs,
                   q_conj, q_mul, symplectic_join, symplectic_split)
from .spectral import (FMatrix, SpectralData, adjoint, embed, hermitian_eigen,
                       is_skew_selfadjoint, reconstruct, spectral_data, unembed)

__version__ = "0.1.0"

__all__ = [
    "MultiplicationModel", "SpectralDecomposition",
    "ConstructionFailed", "DegenerateWeight", "LengthMismatch", "NotHermitian",
    "NotImaginaryUnit", "NotSimpleSpectrum", "NotSkewSelfadjoint", "QuatspecError", "RealInput",
    "GeneratingVector", "cyclic_span", "has_simple_spectrum", "is_generating",
    "special_generating_vector",
    "FSubspace", "f_inner", "f_orthonormalize", "f_part", "f_project", "h_rank", "inner",
    "right_mul",
    "DiscreteMeasure", "DiscreteModel", "build_model", "model_J", "model_spectral_measure",
    "phi", "phi_inv", "q_apply", "verify_equivalence",
    "Frame", "FScalar", "Quaternion", "build_frame", "make_imaginary_unit", "q_abs", "q_conj",
    "q_mul", "symplectic_join", "symplectic_split",
    "FMatrix", "SpectralData", "adjoint", "embed", "hermitian_eigen", "is_skew_selfadjoint",
    "reconstruct", "spectral_data", "unembed",
]
