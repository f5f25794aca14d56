"""Input checks in the spirit of ``sklearn.utils.check_array``."""

from __future__ import annotations

import numpy as np

from .hmod import as_qvector
from .quat import Frame, Quaternion, as_quaternion, build_frame, make_imaginary_unit
from .spectral import as_qmatrix

__all__ = ["check_qmatrix", "check_qvector", "check_qvectors", "check_frame"]

check_qmatrix = as_qmatrix
check_qvector = as_qvector


def check_qvectors(X, n: int) -> tuple[np.ndarray, bool]:
    """Accept one vector (n, 4) or a batch (m, n, 4).

    Returns the batch and whether the input was a single vector.
    """
    X = np.asarray(X, dtype=float)
    single = X.ndim == 2
    batch = X[None] if single else X
    if batch.ndim != 3 or batch.shape[1:] != (n, 4):
        raise ValueError(f"expected vectors of shape (n={n}, 4), got {X.shape}")
    if not np.all(np.isfinite(batch)):
        raise ValueError("input vectors have non-finite entries")
    return batch, single


def check_frame(field) -> Frame:
    """Frame from ``None`` (default ``f = i``), a Frame, or any nonreal quaternion."""
    if field is None:
        return Frame.default()
    if isinstance(field, Frame):
        return field
    q = field if isinstance(field, Quaternion) else as_quaternion(np.asarray(field, dtype=float))
    return build_frame(make_imaginary_unit(q))
