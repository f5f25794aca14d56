"""Simple spectrum and the special generating vector.

With finitely many atoms, ``E(Delta) g`` for intervals ``Delta`` spans the
same H-subspace as the atom images ``E_k g``.  A generating vector exists
iff every ``E_k`` has H-rank one, which is what :func:`has_simple_spectrum`
tests.

The families of cyclic spans follow the interval calculus on ``f_+``:
``E`` stands for the H-linear projections ``E_k`` and ``EF`` for the
F-linear ones attached to intervals of ``f_+``, i.e. ``E_F`` of the atoms
(for the zero atom, its ``H+`` half).  The negative half-axis never
occurs, so every ``EF``-span sits inside ``H+ = E_F(f_+) H``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ConstructionFailed, NotSimpleSpectrum
from .hmod import FSubspace, as_qvector, f_orthonormalize, f_project, h_rank, norm, right_mul
from .quat import DEFAULT_TOL, qmatvec
from .spectral import SpectralData


@dataclass(frozen=True)
class Certificate:
    j_residual: float   # ||J g - R_f g||
    h_rank: int         # H-rank of {E_k g}
    weights: tuple      # <E_k g, g>, real parts

    def to_json(self) -> dict:
        return {"j_residual": self.j_residual, "h_rank": self.h_rank,
                "weights": list(self.weights)}


@dataclass(frozen=True)
class GeneratingVector:
    g: np.ndarray
    certificate: Certificate


def has_simple_spectrum(sd: SpectralData, tol: float = DEFAULT_TOL) -> bool:
    """True iff every atom has H-multiplicity one (hence ``n`` atoms)."""
    mults = sd.multiplicities()
    return all(m == 1 for m in mults) and len(mults) == sd.n


def family_images(sd: SpectralData, g, family: str = "EF") -> list[np.ndarray]:
    """Images of ``g`` under the atom projections of the chosen family."""
    g = np.asarray(g, dtype=float)
    if family == "E":
        return [qmatvec(e, g) for e in sd.E]
    if family == "EF":
        return [p.apply(g) for p in sd.EF_pos]
    raise ValueError(f"unknown family {family!r}; use 'E' or 'EF'")


def cyclic_span(sd: SpectralData, g, over: str = "H", family: str | None = None,
                tol: float = DEFAULT_TOL):
    """Cyclic subspace of ``g``.

    ``over="H"`` returns the H-rank of ``{E_k g}``.  ``over="F"`` returns the
    F-span as an :class:`FSubspace`; the family defaults to ``"EF"`` there and
    may be set to ``"E"`` for the F-span of the H-linear images.
    """
    g = as_qvector(g)
    if over == "H":
        return h_rank(family_images(sd, g, family or "E"), sd.frame, tol)
    if over == "F":
        return f_orthonormalize(family_images(sd, g, family or "EF"), sd.frame, tol)
    raise ValueError(f"over must be 'H' or 'F', got {over!r}")


def is_generating(sd: SpectralData, g, tol: float = DEFAULT_TOL) -> bool:
    return cyclic_span(sd, g, "H", tol=tol) == sd.n


def initial_generator(sd: SpectralData, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Sum over atoms of the first normalized nonzero column image ``E_k e_l``."""
    n = sd.n
    y = np.zeros((n, 4))
    for e in sd.E:
        for col in range(n):
            v = e[:, col]
            if norm(v) > tol:
                y = y + v / norm(v)
                break
    return y


def special_generating_vector(sd: SpectralData, tol: float = DEFAULT_TOL) -> GeneratingVector:
    """Generating vector ``g`` with ``J g = g f``.

    Starting from a generating ``y``, split ``y = y+ + x+ phi`` with
    ``y+, x+`` in ``H+``, remove from ``x+`` its F-projection onto the cyclic
    span of ``y+`` and return ``g = y+ + v+``.  Since ``g`` lies in ``H+``,
    ``J`` acts on it as ``R_f``.
    """
    if not has_simple_spectrum(sd, tol):
        raise NotSimpleSpectrum(f"atom multiplicities {sd.multiplicities()}")
    fr = sd.frame
    y = initial_generator(sd, tol)
    if not is_generating(sd, y, tol):
        raise ConstructionFailed("initial vector does not generate")

    y_plus = sd.EF_plus.apply(y)
    x_plus = right_mul(sd.EF_minus.apply(y), -fr.phi.to_array())
    Y_plus = cyclic_span(sd, y_plus, "F", tol=tol)
    v_plus = x_plus - f_project(x_plus, Y_plus)
    g = y_plus + v_plus

    cert = certify(sd, g)
    scale = max(1.0, norm(g))
    if cert.j_residual > tol * scale or cert.h_rank != sd.n:
        raise ConstructionFailed(f"certificate failed: {cert}")
    if min(cert.weights) <= tol * scale ** 2:
        raise ConstructionFailed(f"zero atom weight in {cert.weights}")
    return GeneratingVector(g=g, certificate=cert)


def certify(sd: SpectralData, g, tol: float = DEFAULT_TOL) -> Certificate:
    g = np.asarray(g, dtype=float)
    resid = norm(qmatvec(sd.J, g) - right_mul(g, sd.frame.f))
    imgs = family_images(sd, g, "E")
    weights = tuple(float(np.sum(v * g)) for v in imgs)  # Re <E_k g, g>
    return Certificate(j_residual=resid, h_rank=h_rank(imgs, sd.frame, tol), weights=weights)


def span_in_hplus(sd: SpectralData, S: FSubspace, tol: float = DEFAULT_TOL) -> bool:
    """Whether an F-subspace lies inside ``H+``."""
    return all(norm(b - sd.EF_plus.apply(b)) <= tol for b in S.basis)
