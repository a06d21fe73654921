import math

import numpy as np
import pytest

from lattice_bqft import half_line as hl
from lattice_bqft import inner_functions as inf

import oracles

GRID = hl.LineGrid()          # X = 64, N = 2**14
BL = inf.blaschke(1j)
CONTROL = lambda p: (1 + np.cos(1.2 * p)) / 2     # noqa: E731  symmetric, not inner


def test_grid_geometry():
    g = hl.LineGrid(8.0, 64)
    assert g.h == 0.25 and g.x[0] == -8.0 and g.x[-1] == 8.0 - 0.25
    assert g.dp == pytest.approx(2 * math.pi / (g.N * g.h))
    with pytest.raises(ValueError):
        hl.LineGrid(8.0, 100)


def test_hat_matches_direct_sum():
    g = hl.LineGrid(16.0, 2 ** 10)
    f = hl.line_bump(g, 1.0, 2.0)
    p = g.p[:40]
    ref = oracles.fourier_direct(g.x, f.values[:, 0], p)
    assert np.allclose(f.hat()[:40, 0], ref, atol=1e-14)


def test_hat_is_hermitian():
    f = hl.line_bump(GRID, 1.3, 1.0, (1.0, -2.0))
    F = f.hat()
    # index -k is frequency -p_k
    assert np.allclose(F[1:], np.conj(F[:0:-1]), atol=1e-12)


def test_bump_support_exact_zeros():
    f = hl.line_bump(GRID, 2.0, 0.5)
    x = GRID.x
    outside = (x <= 1.5) | (x >= 2.5)
    assert np.all(f.values[outside] == 0)
    with pytest.raises(hl.SupportError):
        hl.line_bump(GRID, 63.8, 0.5)


# --------------------------------------------------------- multipliers

def test_identity_multiplier():
    f = hl.line_bump(GRID, 0.0, 1.0)
    out = hl.apply_multiplier(lambda p: np.ones_like(p), f)
    assert np.max(np.abs(out.values - f.values)) < 1e-12


def test_integer_shift_translation():
    f = hl.line_bump(GRID, 0.0, 1.0)
    for j in (1, 7, -40):
        t = j * GRID.h
        out = hl.apply_multiplier(lambda p: np.exp(-1j * t * p), f)
        assert np.max(np.abs(out.values[:, 0] - np.roll(f.values[:, 0], j))) < 1e-8
        tr = hl.translate(f, t)
        assert np.allclose(tr.values, out.values, atol=1e-15)
        assert tr.support == pytest.approx((-1.0 + t, 1.0 + t))


def test_off_grid_translation_matches_profile():
    f = hl.line_bump(GRID, 0.0, 1.5)
    ref = hl.line_bump(GRID, 0.3217, 1.5)
    assert np.max(np.abs(hl.translate(f, 0.3217).values - ref.values)) < 1e-9


def test_V_of_singular_factor_is_translation():
    # phi(P) = e^{itP} = T(t)
    f = hl.line_bump(GRID, 1.0, 1.0)
    out = hl.apply_V(inf.singular(0.75), f)
    assert np.max(np.abs(out.values - hl.translate(f, 0.75).values)) < 1e-12


def test_non_symmetric_multiplier_has_imaginary_part():
    f = hl.line_bump(GRID, 0.0, 1.0)
    out = hl.apply_multiplier(lambda p: (2 + np.sin(p)) / 3, f)
    assert out.imag_defect > 1e-2
    sym = hl.apply_multiplier(BL, f)
    assert sym.imag_defect < 1e-10


def test_aliasing_precondition():
    f = hl.line_bump(hl.LineGrid(64.0, 2 ** 11), 0.0, 0.5)
    with pytest.raises(hl.AliasingError):
        hl.apply_multiplier(BL, f)
    hl.apply_multiplier(BL, f, band_tol=1e-3)


def test_multiplier_preserves_weighted_norm():
    f = hl.line_bump(GRID, 0.5, 1.0, (1.0, 0.5))
    for phi in (BL, inf.singular(2.0), inf.blaschke(0.3 + 0.7j) * inf.cayley()):
        a = hl.weighted_norm2(f)
        b = hl.weighted_norm2(f, phi)
        assert abs(a - b) <= 1e-10 * a


# ---------------------------------------------------------------- omega

def test_line_omega_properties():
    f = hl.line_bump(GRID, 0.5, 1.0)
    g = hl.line_bump(GRID, 1.2, 1.0)
    far = hl.line_bump(GRID, 10.0, 1.0)
    assert abs(hl.line_omega(f, f)) < 1e-15
    assert abs(hl.line_omega(f, g) + hl.line_omega(g, f)) < 1e-10
    assert abs(hl.line_omega(f, far)) < 1e-12
    assert hl.line_omega(f, g) == pytest.approx(hl.one_particle_inner(f, g).imag, abs=1e-12)


def test_line_omega_continuous_in_translation():
    f = hl.line_bump(GRID, 0.0, 1.0)
    def max_step(n):
        ts = np.linspace(0, 2, n + 1)
        vals = [hl.line_omega(f, hl.translate(f, t)) for t in ts]
        return np.max(np.abs(np.diff(vals)))
    # Lipschitz: halving the step halves the largest increment
    assert 0.4 < max_step(80) / max_step(40) < 0.6


# ------------------------------------------------------------ semigroup

def test_semigroup_identity_exact():
    f = hl.line_bump(GRID, 0.8, 0.5)
    g = hl.line_bump(GRID, -0.8, 0.5)
    assert hl.semigroup_defect(lambda p: np.ones_like(p), f, g, band_tol=1e-3) <= 1e-12


def test_semigroup_blaschke_convergence():
    rows = hl.semigroup_sweep({"bl": BL}, [2 ** k for k in range(11, 15)])
    d = [r["defect"] for r in rows]
    assert d[-1] <= 1e-4
    assert all(b <= a / 4 for a, b in zip(d, d[1:]))


def test_semigroup_control_plateau():
    rows = hl.semigroup_sweep({"ctl": CONTROL}, [2 ** 12, 2 ** 13, 2 ** 14])
    d = [r["defect"] for r in rows]
    assert min(d) >= 0.1
    assert max(d) / min(d) < 1.01


def test_semigroup_product_subadditive():
    f = hl.line_bump(GRID, 0.8, 0.5)
    g = hl.line_bump(GRID, -0.8, 0.5)
    a, b = inf.blaschke(1j), inf.singular(0.4) * inf.blaschke(2 + 1j)
    da, db = (hl.semigroup_defect(phi, f, g, band_tol=1e-3) for phi in (a, b))
    dab = hl.semigroup_defect(a * b, f, g, band_tol=1e-3)
    assert dab <= da + db + 1e-8


def test_semigroup_support_preconditions():
    f = hl.line_bump(GRID, 0.8, 0.5)
    g = hl.line_bump(GRID, -0.8, 0.5)
    with pytest.raises(hl.SupportError):
        hl.semigroup_defect(BL, g, f)
    with pytest.raises(hl.SupportError):
        hl.semigroup_defect(BL, hl.line_bump(GRID, 0.5, 0.5), g, band_tol=1e-3)


def test_sweep_csv_columns():
    rows = [dict(phi_id="bl", N=2048, X=64.0, defect=1.5e-7)]
    assert hl.sweep_csv(rows) == "phi_id,N,X,defect\nbl,2048,64.0,1.500000e-07\n"


# ---------------------------------------------------- boundary subspaces

def test_double_cone_validation():
    with pytest.raises(ValueError):
        hl.BoundarySubspaceSpec((0, 2), (1, 3), BL)
    with pytest.raises(ValueError):
        hl.BoundarySubspaceSpec((2, 0), (3, 4), BL)


def test_assemble_K_identity_is_union():
    spec = hl.BoundarySubspaceSpec((-4, -1), (1, 4), lambda p: np.ones_like(p), width=1.0)
    K = hl.assemble_K(spec, GRID)
    base = (hl.interval_basis(GRID, (-4, -1), 1.0, 0.0, (1.0,))
            + hl.interval_basis(GRID, (1, 4), 1.0, 0.0, (1.0,)))
    assert len(K) == len(base)
    assert all(np.max(np.abs(a.values - b.values)) < 1e-12 for a, b in zip(K, base))


def test_isotony():
    small = hl.BoundarySubspaceSpec((-4, -1), (1, 4), BL, width=1.0)
    big = hl.BoundarySubspaceSpec((-5, -1), (1, 5), BL, width=1.0)
    assert hl.span_residual(hl.assemble_K(big, GRID), hl.assemble_K(small, GRID)) <= 1e-8


def test_locality_of_spacelike_cones():
    # (u, v) light-ray coordinates: spacelike cones are nested I1 < J1 < J2 < I2
    outer = hl.BoundarySubspaceSpec((-12, -6), (6, 12), BL, width=1.0)
    inner = hl.BoundarySubspaceSpec((-4, -1), (1, 4), BL, width=1.0)
    assert hl.locality_probe(hl.assemble_K(outer, GRID), hl.assemble_K(inner, GRID)) <= 1e-6
    outer_c = hl.BoundarySubspaceSpec((-12, -6), (6, 12), CONTROL, width=1.0)
    inner_c = hl.BoundarySubspaceSpec((-4, -1), (1, 4), CONTROL, width=1.0)
    assert hl.locality_probe(hl.assemble_K(outer_c, GRID), hl.assemble_K(inner_c, GRID)) > 1e-6


def test_translation_covariance_of_K():
    spec = hl.BoundarySubspaceSpec((-4, -1), (1, 4), BL, width=1.0)
    for t in (0.5, 1.5, -2.25):
        A = hl.assemble_K(spec.shifted(t), GRID)
        B = [hl.translate(k, t) for k in hl.assemble_K(spec, GRID)]
        assert max(np.max(np.abs(a.values - b.values)) for a, b in zip(A, B)) <= 1e-8


# ------------------------------------------------------------ dilations

def test_dilation_probe():
    f = hl.line_bump(GRID, 3.0, 1.0)
    assert hl.dilation_commutation_probe(1.0, 0.0, f) == 0.0
    assert hl.dilation_commutation_probe(1.0, 0.1, f) <= 1e-6
    assert hl.dilation_commutation_probe(0.0, 0.1, f) <= 1e-6


def test_dilation_support_escape():
    f = hl.line_bump(GRID, 50.0, 2.0)
    with pytest.raises(hl.SupportError):
        hl.dilation_commutation_probe(10.0, 0.5, f)
