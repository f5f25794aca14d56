import numpy as np
import pytest

from quatspec.exceptions import NotSimpleSpectrum
from quatspec.generate import random_skew, simple_skew
from quatspec.genvec import (cyclic_span, family_images, has_simple_spectrum, initial_generator,
                             is_generating, span_in_hplus, special_generating_vector)
from quatspec.hmod import f_inner, f_orthonormalize, f_project, norm, right_mul
from quatspec.quat import I, J, K, qmatvec
from quatspec.spectral import spectral_data

from conftest import qdiag

i, j, k = I.to_array(), J.to_array(), K.to_array()
one = np.array([1.0, 0, 0, 0])


def test_has_simple_spectrum_examples():
    assert has_simple_spectrum(spectral_data(qdiag(i, 2 * k)))
    assert not has_simple_spectrum(spectral_data(qdiag(i, i)))
    assert has_simple_spectrum(spectral_data(np.zeros((1, 1, 4))))
    assert not has_simple_spectrum(spectral_data(np.zeros((2, 2, 4))))


def test_cyclic_span_examples():
    sd = spectral_data(qdiag(i, 2 * k))
    assert cyclic_span(sd, np.zeros((2, 4)), "H") == 0
    assert cyclic_span(sd, [one, one], "H") == 2
    assert cyclic_span(spectral_data(qdiag(i, i)), [one, one], "H") == 1
    assert cyclic_span(sd, np.zeros((2, 4)), "F").dim == 0
    with pytest.raises(ValueError):
        cyclic_span(sd, [one, one], "R")


def test_is_generating_examples():
    sd = spectral_data(qdiag(i, 2 * k))
    assert is_generating(sd, [one, one])
    assert not is_generating(sd, np.zeros((2, 4)))
    assert not is_generating(sd, [one, 0 * one])


def test_special_generating_vector_i():
    gv = special_generating_vector(spectral_data(qdiag(i)))
    assert np.allclose(gv.g, [one], atol=1e-12)
    assert gv.certificate.j_residual < 1e-12 and gv.certificate.h_rank == 1


def test_special_generating_vector_j():
    # y = 1, y+ = (1 + k)/2 spans H+ over F, so v+ = 0 and g = y+
    sd = spectral_data(qdiag(j))
    gv = special_generating_vector(sd)
    assert np.allclose(gv.g, [[0.5, 0, 0, 0.5]], atol=1e-12)
    assert norm(qmatvec(sd.J, gv.g) - right_mul(gv.g, i)) < 1e-12
    assert is_generating(sd, gv.g)


def test_special_generating_vector_zero():
    gv = special_generating_vector(spectral_data(np.zeros((1, 1, 4))))
    assert np.allclose(gv.g, [one], atol=1e-12)


def test_special_generating_vector_not_simple():
    with pytest.raises(NotSimpleSpectrum):
        special_generating_vector(spectral_data(qdiag(i, i)))


@pytest.mark.parametrize("n", [1, 2, 4, 8])
@pytest.mark.parametrize("zero_atom", [False, True])
def test_special_generating_vector_contract(frame, n, zero_atom):
    for seed in range(3):
        sd = spectral_data(simple_skew(n, seed, zero_atom=zero_atom), frame)
        assert has_simple_spectrum(sd)
        gv = special_generating_vector(sd)
        g = gv.g
        assert norm(qmatvec(sd.J, g) - right_mul(g, frame.f)) <= 1e-9 * norm(g)
        assert cyclic_span(sd, g, "H") == n
        assert min(gv.certificate.weights) > 0
        assert is_generating(sd, initial_generator(sd))


# span calculus on random vectors

def _fspan(vectors, fr):
    return f_orthonormalize(list(vectors), fr)


@pytest.fixture(params=["random", "zero_atom"])
def instance(request, frame):
    if request.param == "random":
        A = random_skew(5, 21)
    else:
        A = simple_skew(5, 21, zero_atom=True)
    return spectral_data(A, frame)


def test_span_of_sum(instance, rng):
    g1, g2 = rng.normal(size=(2, instance.n, 4))
    lhs = cyclic_span(instance, g1 + g2, "F")
    rhs = cyclic_span(instance, g1, "F") + cyclic_span(instance, g2, "F")
    assert rhs.contains_subspace(lhs)


def test_h_span_is_f_span_plus_phi_twist(instance, rng):
    fr = instance.frame
    g = rng.normal(size=(instance.n, 4))
    imgs = family_images(instance, g, "E")
    hspan = _fspan(imgs + [right_mul(v, fr.phi) for v in imgs], fr)
    cf = cyclic_span(instance, g, "F", family="E")
    assert hspan.equals(cf + cf.right_mul(fr.phi))
    assert hspan.dim == 2 * cyclic_span(instance, g, "H")


def test_span_is_hereditary(instance, rng):
    g = rng.normal(size=(instance.n, 4))
    C = cyclic_span(instance, g, "F")
    coeffs = rng.normal(size=(C.dim, 4))
    # an F-combination of the basis: coefficients in span{1, f}
    fr = instance.frame
    h = sum(right_mul(b, c[0] * fr.basis[0] + c[1] * fr.basis[1]) for b, c in zip(C.basis, coeffs))
    assert C.contains(h)
    assert C.contains_subspace(cyclic_span(instance, h, "F"))


def test_span_lies_in_hplus(instance, rng):
    g = rng.normal(size=(instance.n, 4))
    assert span_in_hplus(instance, cyclic_span(instance, g, "F"))


def test_hplus_vector_spans_agree(instance, rng):
    fr = instance.frame
    g = instance.EF_plus.apply(rng.normal(size=(instance.n, 4)))
    cf = cyclic_span(instance, g, "F")
    assert cyclic_span(instance, g, "F", family="E").equals(cf)
    imgs = family_images(instance, g, "E")
    hspan = _fspan(imgs + [right_mul(v, fr.phi) for v in imgs], fr)
    assert hspan.equals(cf + cf.right_mul(fr.phi))
    assert hspan.dim == 2 * cf.dim


def test_span_of_phi_twist(instance, rng):
    fr = instance.frame
    g = rng.normal(size=(instance.n, 4))

    def hspan(v):
        imgs = family_images(instance, v, "E")
        return _fspan(imgs + [right_mul(w, fr.phi) for w in imgs], fr)

    assert hspan(right_mul(g, fr.phi)).equals(hspan(g).right_mul(fr.phi))


@pytest.mark.parametrize("zero_atom", [False, True])
def test_orthogonal_additivity(frame, rng, zero_atom):
    # simple spectrum: every E_F atom projection has F-rank one
    sd = spectral_data(simple_skew(6, 4, zero_atom=zero_atom), frame)
    y = rng.normal(size=(6, 4))
    g = sum(p.apply(y) for p in sd.EF_pos[::2])
    C = cyclic_span(sd, g, "F")
    h = sd.EF_plus.apply(rng.normal(size=(6, 4)))
    h = h - f_project(h, C)
    H = cyclic_span(sd, h, "F")
    assert max((abs(complex(v)) for v in _cross(C, H, frame)), default=0) < 1e-12
    total = cyclic_span(sd, h + g, "F")
    assert total.dim == C.dim + H.dim
    assert total.equals(C + H)


def _cross(S, T, fr):
    return [f_inner(a, b, fr) for a in S.basis for b in T.basis]
