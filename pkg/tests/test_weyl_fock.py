import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lattice_bqft import weyl_fock as wf
from lattice_bqft import loop_algebra as la
from lattice_bqft.lattice_core import build_cartan

import oracles

G2 = build_cartan("A2").as_array()


def test_inner_product_weights_modes():
    g = np.array([[2.0]])
    f = wf.OneParticleVector([[1.0], [1j]], g)
    h = wf.OneParticleVector([[2.0], [1.0]], g)
    # sum_k k conj(c_k) G d_k = 1*1*2*2 + 2*(-i)*2*1
    assert f.inner(h) == pytest.approx(4 - 4j)
    assert f.norm2() == pytest.approx(2 + 4)


def test_mode_mismatch():
    a = wf.OneParticleVector(np.zeros((3, 2)), G2)
    b = wf.OneParticleVector(np.zeros((4, 2)), G2)
    with pytest.raises(wf.ModeMismatch):
        a.inner(b)
    with pytest.raises(wf.ModeMismatch):
        wf.OneParticleVector(np.zeros(3), G2)


def test_omega_agrees_with_loop_form():
    rng = np.random.default_rng(0)
    f = la.random_loop(rng, G2, 16)
    g = la.random_loop(rng, G2, 16)
    F, H = wf.OneParticleVector.from_loop(f), wf.OneParticleVector.from_loop(g)
    assert wf.omega(F, H) == pytest.approx(la.omega(f, g), abs=1e-13)


def test_single_mode_matches_truncated_fock_space():
    # K = 1, rank 1, G = [[1]]: the coordinate c is the usual amplitude
    g = np.eye(1)
    rng = np.random.default_rng(1)
    for _ in range(5):
        u, a, b = (complex(*rng.normal(scale=0.5, size=2)) for _ in range(3))
        f = wf.OneParticleVector([[u]], g)
        A = wf.CoherentTerm(0j, wf.OneParticleVector([[a]], g))
        B = wf.CoherentTerm(0j, wf.OneParticleVector([[b]], g))
        got = wf.coherent_inner(A, wf.weyl_apply(f, B))
        ref = oracles.displacement_matrix_element(u, a, b)
        assert got == pytest.approx(ref, abs=1e-12)


def test_vacuum_expectation_two_ways():
    rng = np.random.default_rng(2)
    f = wf.random_vector(rng, 8, G2, 1.3)
    assert wf.vacuum_expectation(f) == pytest.approx(math.exp(-0.5 * 1.3 ** 2))
    assert wf.vacuum_expectation_via_action(f) == pytest.approx(wf.vacuum_expectation(f))


def test_weyl_relation_100_trials():
    rng = np.random.default_rng(3)
    worst = 0.0
    for _ in range(100):
        K = int(rng.integers(1, 33))
        f = wf.random_vector(rng, K, G2, rng.uniform(0.2, 1.5))
        g = wf.random_vector(rng, K, G2, rng.uniform(0.2, 1.5))
        ts = wf.random_test_set(rng, 6, K, G2)
        worst = max(worst, wf.verify_weyl_relation(f, g, ts))
    assert worst <= 1e-10


def test_weyl_relation_without_phase_fails():
    rng = np.random.default_rng(4)
    f = wf.random_vector(rng, 8, G2, 1.0)
    g = f.scale(1j)                           # omega(f, if) = |f|^2
    ts = wf.random_test_set(rng, 6, 8, G2)
    assert wf.verify_weyl_relation(f, g, ts, drop_phase=True) > 0.1


def test_bogoliubov_100_trials():
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(100):
        K = int(rng.integers(1, 33))
        f = wf.random_vector(rng, K, G2, rng.uniform(0.2, 1.5))
        U = wf.random_unitary(rng, f)
        assert wf.unitarity_defect(U, f) < 1e-12
        ts = wf.random_test_set(rng, 6, K, G2)
        worst = max(worst, wf.verify_bogoliubov(U, f, ts))
    assert worst <= 1e-10


def test_gamma_rejects_non_unitary():
    rng = np.random.default_rng(6)
    f = wf.random_vector(rng, 4, G2)
    t = wf.CoherentTerm.exp(f)
    with pytest.raises(ValueError):
        wf.gamma_apply(2 * np.eye(8), t)


def test_gram_orthogonal_preserves_form():
    rng = np.random.default_rng(7)
    R = wf.random_gram_orthogonal(rng, G2)
    assert np.allclose(R.T @ G2 @ R, G2, atol=1e-12)


def test_coherent_gram_positive():
    rng = np.random.default_rng(8)
    ts = wf.random_test_set(rng, 8, 4, G2)
    ev = np.linalg.eigvalsh(wf.coherent_gram(ts))
    assert ev.min() > -1e-12


@given(st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2))
@settings(max_examples=60, deadline=None)
def test_property_weyl_unitary_on_vacuum(a, b, c, d):
    f = wf.OneParticleVector([[complex(a, b), complex(c, d)]], G2)
    vac = wf.CoherentTerm.vacuum(1, G2)
    w = wf.weyl_apply(f, vac)
    assert abs(wf.coherent_inner(w, w) - 1) < 1e-9
