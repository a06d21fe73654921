import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lattice_bqft import loop_algebra as la
from lattice_bqft.lattice_core import build_cartan

import oracles

A1 = build_cartan("A1")
A2 = build_cartan("A2")
G2 = A2.as_array()


def _rloop(seed, K=16, winding=(0, 0), scale=1.0):
    rng = np.random.default_rng(seed)
    return la.random_loop(rng, G2, K, winding, A2, scale=scale)


def test_wrap_and_distance():
    assert la.wrap(math.pi) == pytest.approx(math.pi)
    assert la.wrap(-math.pi) == pytest.approx(math.pi)
    assert la.circle_distance(0.1, 0.1 + 4 * math.pi) < 1e-12
    assert la.circle_distance(0.0, math.pi) == pytest.approx(math.pi)


def test_decompose_roundtrip():
    f = _rloop(0, K=16, winding=(1, -2))
    g = la.decompose(la.sample(f, 128), f.winding, 16, lattice=A2)
    assert np.allclose(g.modes, f.modes, atol=1e-12)
    assert np.allclose(g.zero_mode, f.zero_mode, atol=1e-12)


def test_decompose_rejects_bad_grid_and_winding():
    f = _rloop(1, K=8, winding=(1, 0))
    with pytest.raises(ValueError):
        la.decompose(la.sample(f, 16), f.winding, 8)      # N < 4K
    with pytest.raises(ValueError):
        la.decompose(la.sample(f, 48), f.winding, 8)      # not a power of two
    with pytest.raises(ValueError):
        la.decompose(la.sample(f, 64), [0, 0], 8)         # endpoint says winding (1, 0)


def test_straight_loop_values():
    t = la.straight_loop(A2, [1, 2], 4)
    th = np.array([0.0, 1.0])
    assert np.allclose(t(th), [[0, 0], [1, 2]])
    assert np.allclose(t.derivative(th), [[1, 2], [1, 2]])


# -------------------------------------------------------------- omega

def test_omega_matches_quadrature():
    for s in range(10):
        f, g = _rloop(10 + s), _rloop(50 + s)
        assert la.omega(f, g) == pytest.approx(la.omega_quadrature(f, g), abs=1e-12)
        assert la.omega(f, g) == pytest.approx(-la.omega(g, f), abs=1e-14)


def test_omega_frozen_value():
    # f = e^{i th} c + cc, g = e^{i th} d + cc on A1: omega = Im(c G conj d) = 2 Im(c conj d)
    f = la.FLoop([[2.0]], [0.0], [[1.0 + 0j]])
    g = la.FLoop([[2.0]], [0.0], [[1j]])
    assert la.omega(f, g) == pytest.approx(-2.0)


def test_omega_needs_zero_winding():
    with pytest.raises(ValueError):
        la.omega(_rloop(0, winding=(1, 0)), _rloop(1))


# ------------------------------------------------------------- action

def test_action_matches_adaptive_quadrature():
    for s in range(4):
        f = _rloop(100 + s, K=6, winding=(1, -1), scale=0.7)
        g = _rloop(200 + s, K=6, winding=(0, 2), scale=0.7)
        ref = oracles.action_S_quad(f.winding, f.zero_mode, f.modes,
                                    g.winding, g.zero_mode, g.modes, G2)
        assert la.action_S(f, g) == pytest.approx(ref, abs=1e-10)


def test_action_matches_expansion():
    for s in range(20):
        f = _rloop(300 + s, K=64, winding=tuple(np.random.default_rng(s).integers(-2, 3, 2)))
        g = _rloop(400 + s, K=64, winding=(1, 1))
        assert abs(la.action_S(f, g) - la.action_S_expanded(f, g)) < 1e-11


def test_action_straight_loops():
    for a in ([1, 0], [0, 1], [1, 1], [2, -1]):
        for b in ([1, 0], [1, -1]):
            s = la.action_S(la.straight_loop(A2, a, 4), la.straight_loop(A2, b, 4))
            assert s == pytest.approx(math.pi * A2.pair(a, b) / 2, abs=1e-12)


def test_central_cocycle_sign():
    a = la.straight_loop(A2, [1, 0], 4)
    b = la.straight_loop(A2, [0, 1], 4)
    # eps(a1, a2) = -1 for the upper-triangular B, S = pi <a1,a2>/2 = -pi/2
    assert la.central_cocycle(a, b) == pytest.approx(-np.exp(-0.5j * math.pi))


@pytest.mark.parametrize("K", [8, 64])
def test_two_cocycle_relation(K):
    rng = np.random.default_rng(K)
    for _ in range(40):
        f, g, h = (la.random_loop(rng, G2, K, rng.integers(-2, 3, 2), A2) for _ in range(3))
        lhs = la.cocycle_phase(g, h) + la.cocycle_phase(f, g + h)
        rhs = la.cocycle_phase(f, g) + la.cocycle_phase(f + g, h)
        assert la.circle_distance(lhs, rhs) < 1e-9


# ------------------------------------------------------- commutation

def test_commutation_displayed_equals_chained():
    rng = np.random.default_rng(5)
    for _ in range(50):
        f = la.random_loop(rng, G2, 64, rng.integers(-2, 3, 2), A2)
        g = la.random_loop(rng, G2, 64, rng.integers(-2, 3, 2), A2)
        assert la.commutation_phase(f, g).defect < 1e-9


def test_zero_winding_phase_is_exp_minus_2i_omega():
    f, g = _rloop(7, K=32), _rloop(8, K=32)
    ph = la.commutation_phase(f, g).value
    assert ph == pytest.approx(np.exp(-2j * la.omega(f, g)), abs=1e-12)


def test_straight_loops_commute_up_to_sign():
    a = la.straight_loop(A2, [1, 0], 4)
    b = la.straight_loop(A2, [0, 1], 4)
    # pi <a1,a2> = -pi: the Weyl unitaries anticommute
    assert la.commutation_phase(a, b).value == pytest.approx(-1)


# ---------------------------------------------------------- locality

@pytest.mark.parametrize("K,tol", [(256, 1e-6), (1024, 1e-8)])
def test_locality_steps(K, tol):
    f = la.step_loop([1], 1.3, 0.9, K, 8 * K, lattice=A1)
    g = la.step_loop([1], 4.2, 1.2, K, 8 * K, lattice=A1)
    assert la.locality_defect(f, g) <= tol


def test_locality_step_and_bump():
    f = la.step_loop([1, 0], 1.0, 0.7, 256, lattice=A2)
    b = la.bump_loop([0.5, -1.0], 3.5, 1.0, 256, lattice=A2)
    assert la.locality_defect(f, b) <= 1e-6


def test_overlapping_control_is_order_one():
    f = la.bump_loop([3.0], 2.0, 1.0, 256, lattice=A1)
    g = la.step_loop([1], 2.6, 1.0, 256, lattice=A1)
    assert la.locality_defect(f, g, require_disjoint=False) > 0.1
    with pytest.raises(la.SupportError):
        la.locality_defect(f, g)


def test_step_loop_values_in_2pi_lattice_outside_arc():
    f = la.step_loop([1], 2.0, 0.5, 128, lattice=A1)
    th = np.array([0.3, 1.0, 3.0, 5.0])
    v = f(th)[:, 0]
    assert np.allclose(v, [0, 0, 2 * math.pi, 2 * math.pi], atol=1e-6)


# ----------------------------------------------------------- charges

def test_charge_and_sector():
    from lattice_bqft.lattice_core import discriminant_group
    grp = discriminant_group(A2)
    # density sampled on the circle with mean (1/3, 2/3): the generating sector
    th = 2 * math.pi * np.arange(256) / 256
    dens = np.stack([1 / 3 + np.cos(th), 2 / 3 + np.sin(3 * th)], axis=1)
    q = la.charge(dens)
    assert np.allclose(q, [1 / 3, 2 / 3])
    s = la.charge_sector(grp, q)
    assert s == grp.sector([Fraction(1, 3), Fraction(2, 3)]) and s.order == 3


def test_charge_sector_rejects_non_dual():
    from lattice_bqft.lattice_core import discriminant_group
    with pytest.raises(ValueError):
        la.charge_sector(discriminant_group(A2), [0.123456, 0.0])


# -------------------------------------------------------------- CSV

def test_loop_csv_roundtrip():
    f = _rloop(9, K=5, winding=(2, -1))
    g = la.loop_from_csv(la.loop_to_csv(f), lattice=A2)
    assert np.array_equal(g.modes, f.modes)
    assert np.array_equal(g.winding, f.winding)
    assert np.array_equal(g.zero_mode, f.zero_mode)


def test_loop_csv_errors():
    with pytest.raises(ValueError):
        la.loop_from_csv("direction,k,re,im\n0,1,0,0\n")
    bad = "# winding = 0\n# zero_mode = 0.0\n# cutoff = 2\n0,3,1.0,0.0\n"
    with pytest.raises(ValueError):
        la.loop_from_csv(bad)


@given(st.integers(0, 2 ** 32 - 1))
@settings(max_examples=30, deadline=None)
def test_property_commutation_antisymmetric(seed):
    rng = np.random.default_rng(seed)
    f = la.random_loop(rng, G2, 12, rng.integers(-2, 3, 2), A2)
    g = la.random_loop(rng, G2, 12, rng.integers(-2, 3, 2), A2)
    a = la.commutation_phase(f, g).value
    b = la.commutation_phase(g, f).value
    assert abs(a * b - 1) < 1e-9
