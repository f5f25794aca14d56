import numpy as np
import pytest

from quatspec.exceptions import DegenerateWeight, LengthMismatch
from quatspec.generate import simple_skew
from quatspec.genvec import special_generating_vector
from quatspec.hmod import f_rank, inner, norm, right_mul
from quatspec.model import (DiscreteMeasure, basis_functions, build_model, model_h_rank, model_J,
                            model_norm, model_spectral_measure, model_spectral_measure_f, phi,
                            phi_inv, q_apply, step_generator, verify_equivalence)
from quatspec.quat import I, J, K, Frame, qabs, qmul, qmatvec
from quatspec.spectral import spectral_data

from conftest import qdiag

i, j, k = I.to_array(), J.to_array(), K.to_array()
one = np.array([1.0, 0, 0, 0])


def model_of(A, fr=None):
    sd = spectral_data(A, fr)
    return sd, build_model(sd, special_generating_vector(sd))


@pytest.fixture(params=[3, 6])
def simple_model(request, frame):
    n = request.param
    A = simple_skew(n, 100 + n, zero_atom=n == 3)
    sd, m = model_of(A, frame)
    return A, sd, m


def test_build_model_examples():
    sd, m = model_of(qdiag(i))
    assert np.allclose(m.measure.atoms, [1.0])
    assert np.allclose(m.measure.weights, [1.0], atol=1e-12)
    sd, m = model_of(qdiag(i, 2 * k))
    assert np.allclose(m.measure.atoms, [1.0, 2.0])
    assert np.all(m.measure.weights > 0)
    assert m.measure.weights.sum() == pytest.approx(norm(m.g) ** 2, abs=1e-12)
    with pytest.raises(DegenerateWeight):
        build_model(sd, np.zeros((2, 4)))


def test_build_model_j():
    # g = (1 + k)/2 and sigma = <g, g> = 1/2
    sd, m = model_of(qdiag(j))
    assert np.allclose(m.g, [[0.5, 0, 0, 0.5]], atol=1e-12)
    assert np.allclose(m.measure.weights, [0.5], atol=1e-12)


def test_discrete_measure_validation():
    fr = Frame.default()
    with pytest.raises(DegenerateWeight):
        DiscreteMeasure(fr, np.array([1.0]), np.array([0.0]))
    with pytest.raises(ValueError):
        DiscreteMeasure(fr, np.array([1.0, 1.0]), np.array([1.0, 1.0]))


def test_phi_examples(simple_model):
    A, sd, m = simple_model
    K_ = m.size
    assert np.allclose(phi(m, np.tile(one, (K_, 1))), m.g, atol=1e-12)
    chi = np.zeros((K_, 4))
    chi[[0, 2], 0] = 1
    assert np.allclose(phi(m, chi), qmatvec(sd.E[0] + sd.E[2], m.g), atol=1e-12)
    with pytest.raises(LengthMismatch):
        phi(m, np.zeros((K_ + 1, 4)))


def test_phi_one_by_one(rng):
    _, m = model_of(qdiag(i))
    q = rng.normal(size=4)
    assert np.allclose(phi(m, [q]), [q], atol=1e-12)
    assert model_norm(m, [q]) == pytest.approx(np.linalg.norm(q))


def test_phi_inv_examples(simple_model, rng):
    A, sd, m = simple_model
    h = phi_inv(m, m.g)
    assert np.allclose(h, np.tile(one, (m.size, 1)), atol=1e-10)
    h = rng.normal(size=(m.size, 4))
    assert np.allclose(phi_inv(m, phi(m, h)), h, atol=1e-10)
    x = rng.normal(size=(sd.n, 4))
    assert np.allclose(phi(m, phi_inv(m, x)), x, atol=1e-10)
    _, m1 = model_of(qdiag(i))
    assert np.allclose(phi_inv(m1, [j]), [j], atol=1e-12)


def test_isometry(simple_model, rng):
    _, _, m = simple_model
    h = rng.normal(size=(5, m.size, 4))
    lhs = np.linalg.norm(phi(m, h), axis=(-2, -1))
    assert np.allclose(lhs, model_norm(m, h), atol=1e-10)
    # inner products are preserved as well, not only norms
    a, b = h[0], h[1]
    ip = sum(qmul(np.array([1, -1, -1, -1]) * b[k_], a[k_]) * m.measure.weights[k_]
             for k_ in range(m.size))
    assert np.allclose(inner(phi(m, a), phi(m, b)).to_array(), ip, atol=1e-10)


def test_q_apply_examples():
    _, m2 = model_of(qdiag(2 * i))
    assert np.allclose(q_apply(m2, [one]), [2 * i])
    assert np.allclose(q_apply(m2, [0 * one]), 0)
    _, m1 = model_of(qdiag(i))
    assert np.allclose(q_apply(m1, [j]), [k])


def test_model_spectral_measure(simple_model, rng):
    _, sd, m = simple_model
    h = rng.normal(size=(m.size, 4))
    assert np.array_equal(model_spectral_measure(m, np.ones(m.size, bool), h), h)
    assert np.array_equal(model_spectral_measure(m, [], h), np.zeros_like(h))
    alpha = [0, m.size - 1]
    once = model_spectral_measure(m, alpha, h)
    assert np.array_equal(model_spectral_measure(m, alpha, once), once)
    q = rng.normal(size=4)
    assert np.allclose(model_spectral_measure(m, alpha, qmul(h, q)), qmul(once, q))
    Ealpha = sd.E[0] + sd.E[-1]
    assert np.allclose(phi(m, once), qmatvec(Ealpha, phi(m, h)), atol=1e-10)


def test_model_spectral_measure_f_pullback(simple_model, rng):
    _, sd, m = simple_model
    h = rng.normal(size=(m.size, 4))
    for k_ in range(m.size):
        lhs = phi(m, model_spectral_measure_f(m, [k_], h, +1))
        assert np.allclose(lhs, sd.EF_pos[k_].apply(phi(m, h)), atol=1e-10)
        lhs = phi(m, model_spectral_measure_f(m, [k_], h, -1))
        assert np.allclose(lhs, sd.EF_neg[k_].apply(phi(m, h)), atol=1e-10)


def test_model_J_examples(frame, rng):
    sd, m = model_of(qdiag(frame.f.to_array()), frame)
    f, ph = frame.f.to_array(), frame.phi.to_array()
    h1 = [0.7 * one - 1.3 * f]
    assert np.allclose(model_J(m, h1), qmul(np.array(h1), f))
    assert np.allclose(model_J(m, [ph]), [-qmul(ph, f)])
    h = rng.normal(size=(1, 4))
    assert np.allclose(model_J(m, model_J(m, h)), -h)


def test_model_J_transport(simple_model, rng):
    _, sd, m = simple_model
    h = rng.normal(size=(m.size, 4))
    assert np.allclose(phi(m, model_J(m, h)), qmatvec(sd.J, phi(m, h)), atol=1e-10)


def test_intertwining(simple_model, rng):
    A, _, m = simple_model
    h = rng.normal(size=(m.size, 4))
    assert np.allclose(qmatvec(A, phi(m, h)), phi(m, q_apply(m, h)), atol=1e-10)


def test_basis_functions(simple_model):
    _, _, m = simple_model
    B = basis_functions(m)
    assert B.shape == (4 * m.size, m.size, 4)
    assert np.linalg.matrix_rank(B.reshape(len(B), -1)) == 4 * m.size


def test_surjectivity(simple_model):
    _, sd, m = simple_model
    cols = list(m.columns) + [right_mul(c, m.frame.phi) for c in m.columns]
    assert f_rank(cols, m.frame) == 2 * sd.n


def test_step_generator(simple_model):
    _, _, m = simple_model
    s = step_generator(m, np.linspace(0.5, 2.0, m.size))
    assert model_h_rank(m, s) == m.size
    # model-side J s = s f
    assert np.allclose(model_J(m, s), qmul(s, m.frame.f.to_array()))
    with pytest.raises(ValueError):
        step_generator(m, -np.ones(m.size))


@pytest.mark.parametrize("A, bound", [(qdiag(i), 1e-12), (qdiag(j), 1e-10),
                                      (qdiag(i, 2 * k), 1e-12)])
def test_verify_equivalence_examples(A, bound):
    sd, m = model_of(A)
    rep = verify_equivalence(A, m, sd)
    assert rep["pass"]
    assert max(rep["residuals"].values()) <= bound
    assert rep["surjective_rank"] == 2 * A.shape[0]


@pytest.mark.parametrize("n", [2, 5, 8])
def test_verify_equivalence_random(frame, n):
    for seed in range(3):
        A = simple_skew(n, seed, zero_atom=seed == 1)
        sd, m = model_of(A, frame)
        rep = verify_equivalence(A, m, sd)
        assert rep["pass"] and max(rep["residuals"].values()) <= 1e-8


def test_verify_equivalence_detects_mismatch():
    sd, m = model_of(qdiag(i, 2 * k))
    rep = verify_equivalence(qdiag(i, 3 * k), m, sd)
    assert not rep["pass"]
    assert rep["residuals"]["intertwining"] > 0.1


def test_model_norm_of_h(simple_model, rng):
    _, _, m = simple_model
    h = rng.normal(size=(m.size, 4))
    expected = np.sqrt(np.sum(qabs(h) ** 2 * m.measure.weights))
    assert model_norm(m, h) == pytest.approx(expected)
