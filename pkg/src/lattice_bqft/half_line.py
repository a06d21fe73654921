"""One-particle numerics on the real line.

Functions are sampled on ``x_j = -X + j h``, ``h = 2X / N``.  The Fourier
transform is ``f^(p) = 1/(2 pi) int e^{-ipx} f(x) dx``; the grid
frequencies are ``p = 2 pi fftfreq(N, h)``.

Conventions
-----------
``apply_multiplier(phi, f)`` multiplies ``f^`` by ``phi(p)`` literally, so
``exp(-itp)`` is the translation ``T(t) f = f(. - t)``.  The operator
``phi(P)`` with ``T(t) = exp(itP)`` is the multiplier ``phi(-p) =
conj phi(p)``; :func:`apply_V` implements it, and the semigroup and
boundary-subspace routines use it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline

from .profiles import bump

BAND_TOL = 1e-10


class AliasingError(ValueError):
    pass


class SupportError(ValueError):
    pass


@dataclass(frozen=True)
class LineGrid:
    X: float = 64.0
    N: int = 2 ** 14

    def __post_init__(self):
        if self.N < 8 or self.N & (self.N - 1):
            raise ValueError("N must be a power of two")
        if self.X <= 0:
            raise ValueError("X must be positive")

    @property
    def h(self) -> float:
        return 2 * self.X / self.N

    @property
    def x(self) -> np.ndarray:
        return -self.X + self.h * np.arange(self.N)

    @property
    def p(self) -> np.ndarray:
        return 2 * np.pi * np.fft.fftfreq(self.N, self.h)

    @property
    def dp(self) -> float:
        return math.pi / self.X


@dataclass(frozen=True, eq=False)
class SampledLineFunction:
    grid: LineGrid
    values: np.ndarray
    gram: np.ndarray = None
    support: tuple | None = None
    imag_defect: float = 0.0

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim == 1:
            v = v[:, None]
        if v.shape[0] != self.grid.N:
            raise ValueError("sample count differs from grid size")
        object.__setattr__(self, "values", v)
        g = np.eye(v.shape[1]) if self.gram is None else np.asarray(self.gram, dtype=float)
        object.__setattr__(self, "gram", g)

    @property
    def dim(self):
        return self.values.shape[1]

    def hat(self) -> np.ndarray:
        g = self.grid
        phase = np.exp(1j * g.p * g.X)
        return (g.h / (2 * np.pi)) * phase[:, None] * np.fft.fft(self.values, axis=0)

    def derivative(self) -> np.ndarray:
        d = np.fft.ifft(1j * self.grid.p[:, None] * np.fft.fft(self.values, axis=0), axis=0)
        return d.real

    def _like(self, values, support=None, imag=0.0):
        return SampledLineFunction(self.grid, values, self.gram, support, imag)

    def __add__(self, other):
        return self._like(self.values + other.values)

    def __sub__(self, other):
        return self._like(self.values - other.values)

    def __neg__(self):
        return self._like(-self.values, self.support)

    def scale(self, s: float):
        return self._like(s * self.values, self.support)

    def integral(self) -> np.ndarray:
        return self.grid.h * self.values.sum(axis=0)


def line_bump(grid: LineGrid, center: float, width: float, vector=(1.0,), gram=None,
              unit_integral: bool = False) -> SampledLineFunction:
    """``v bump((x - center)/width)`` with exact zeros off the support."""
    v = np.asarray(vector, dtype=float)
    lo, hi = center - width, center + width
    margin = 8 * grid.h
    if lo < -grid.X + margin or hi > grid.X - margin:
        raise SupportError("support must stay 8 grid steps inside the window")
    prof = bump((grid.x - center) / width)
    if unit_integral:
        prof = prof / (grid.h * prof.sum())
    return SampledLineFunction(grid, prof[:, None] * v[None, :], gram, (lo, hi))


def _multiplier_values(phi, p: np.ndarray, dim: int) -> np.ndarray:
    vals = np.asarray(phi(p.astype(complex)), dtype=complex)
    if vals.ndim == 1:
        return vals[:, None, None] * np.eye(dim)[None]
    return vals


def band_fraction(f: SampledLineFunction) -> float:
    F = np.abs(np.fft.fft(f.values, axis=0)) ** 2
    tot = F.sum()
    if tot == 0:
        return 0.0
    high = np.abs(f.grid.p) > (math.pi / f.grid.h) / 2
    return float(F[high].sum() / tot)


def apply_multiplier(phi, f: SampledLineFunction, band_tol: float = BAND_TOL) -> SampledLineFunction:
    """Inverse transform of ``phi(p) f^(p)``; ``phi`` scalar or matrix valued.

    The imaginary part of the result is discarded and recorded in
    ``imag_defect`` (max modulus); for symmetric ``phi`` it is round-off.
    """
    if band_tol is not None:
        frac = band_fraction(f)
        if frac > band_tol:
            raise AliasingError(f"energy above Nyquist/2 is {frac:.2e} of total")
    M = _multiplier_values(phi, f.grid.p, f.dim)
    F = np.fft.fft(f.values, axis=0)
    out = np.fft.ifft(np.einsum("pij,pj->pi", M, F), axis=0)
    return f._like(out.real, None, float(np.max(np.abs(out.imag))))


def apply_V(phi, f: SampledLineFunction, band_tol: float = BAND_TOL) -> SampledLineFunction:
    """``phi(P) f``: the multiplier ``phi(-p)``."""
    return apply_multiplier(lambda p: phi(-p), f, band_tol)


def translate(f: SampledLineFunction, t: float, band_tol: float | None = BAND_TOL) -> SampledLineFunction:
    """``T(t) f = f(. - t)``."""
    out = apply_multiplier(lambda p: np.exp(-1j * t * p), f, band_tol)
    sup = None if f.support is None else (f.support[0] + t, f.support[1] + t)
    return f._like(out.values, sup)


def line_omega(f: SampledLineFunction, g: SampledLineFunction) -> float:
    """``1/2 int <f', g> dx / 2 pi`` with a spectral derivative."""
    d = f.derivative()
    return 0.5 * float(np.einsum("xi,ij,xj->", d, f.gram, g.values)) * f.grid.h / (2 * np.pi)


def one_particle_inner(f: SampledLineFunction, g: SampledLineFunction) -> complex:
    """``int_0^inf p conj(f^)^T G g^ dp``; its imaginary part is ``line_omega``."""
    p = f.grid.p
    pos = p > 0
    a, b = f.hat()[pos], g.hat()[pos]
    return complex(np.sum(p[pos] * np.einsum("pi,ij,pj->p", np.conj(a), f.gram, b)) * f.grid.dp)


def one_particle_norm(f: SampledLineFunction) -> float:
    return math.sqrt(max(one_particle_inner(f, f).real, 0.0))


def weighted_norm2(f: SampledLineFunction, phi=None) -> float:
    """``sum |p| |phi(p) f^(p)|^2 dp`` over all grid frequencies."""
    F = f.hat()
    if phi is not None:
        F = np.einsum("pij,pj->pi", _multiplier_values(phi, f.grid.p, f.dim), F)
    q = np.einsum("pi,ij,pj->p", np.conj(F), f.gram, F).real
    return float(np.sum(np.abs(f.grid.p) * q) * f.grid.dp)


def _require_side(f: SampledLineFunction, side: str):
    if f.support is None:
        raise SupportError("support must be declared")
    gap = 4 * f.grid.h
    lo, hi = f.support
    if side == "right" and lo < gap:
        raise SupportError("support must lie in (0, inf), 4 grid steps from 0")
    if side == "left" and hi > -gap:
        raise SupportError("support must lie in (-inf, 0), 4 grid steps from 0")


def semigroup_defect(phi, f: SampledLineFunction, g: SampledLineFunction,
                     normalize: bool = True, band_tol: float = BAND_TOL) -> float:
    """``|omega(phi(P) f, g)|`` for f right of 0 and g left of 0.

    With ``normalize`` the value is divided by ``|f| |g|`` (one-particle
    norms), which makes the control threshold scale free.
    """
    _require_side(f, "right")
    _require_side(g, "left")
    d = abs(line_omega(apply_V(phi, f, band_tol), g))
    if normalize:
        d /= one_particle_norm(f) * one_particle_norm(g)
    return d


def semigroup_sweep(phis: dict, Ns, X: float = 64.0, f_bump=(0.8, 0.5), g_bump=(-0.8, 0.5),
                    band_tol: float = 1e-3) -> list[dict]:
    """Defects of ``phi(P)`` on a ladder of grid sizes.

    Returns rows ``{phi_id, N, X, defect}``.  The coarse levels sit in the
    pre-asymptotic regime deliberately, hence the looser aliasing tolerance.
    """
    rows = []
    for N in Ns:
        grid = LineGrid(X, N)
        f = line_bump(grid, *f_bump)
        g = line_bump(grid, *g_bump)
        for pid, phi in phis.items():
            rows.append(dict(phi_id=pid, N=N, X=X,
                             defect=semigroup_defect(phi, f, g, band_tol=band_tol)))
    return rows


def sweep_csv(rows) -> str:
    out = ["phi_id,N,X,defect"]
    for r in rows:
        out.append(f"{r['phi_id']},{r['N']},{r['X']!r},{r['defect']:.6e}")
    return "\n".join(out) + "\n"


# -------------------------------------------------- boundary subspaces

@dataclass(frozen=True)
class BoundarySubspaceSpec:
    """Double cone ``I1 x I2`` with ``I1`` before ``I2`` and a unitary ``V``.

    Basis bumps of half-width ``width`` are centered on the lattice
    ``offset + (width/2) Z`` and kept when their support lies inside the
    interval, so nested intervals give nested families.
    """

    I1: tuple
    I2: tuple
    V: object
    width: float = 0.5
    offset: float = 0.0
    vector: tuple = (1.0,)

    def __post_init__(self):
        (a, b), (c, d) = self.I1, self.I2
        if not (a < b and c < d):
            raise ValueError("intervals must be nonempty")
        if not b < c:
            raise ValueError("closure of I1 must lie strictly before I2")

    def shifted(self, t: float) -> "BoundarySubspaceSpec":
        (a, b), (c, d) = self.I1, self.I2
        return BoundarySubspaceSpec((a + t, b + t), (c + t, d + t), self.V,
                                    self.width, self.offset + t, self.vector)


def interval_basis(grid: LineGrid, interval, width, offset, vector, gram=None):
    a, b = interval
    step = width / 2
    k0 = math.ceil((a + width - offset) / step - 1e-9)
    k1 = math.floor((b - width - offset) / step + 1e-9)
    out = []
    for k in range(k0, k1 + 1):
        out.append(line_bump(grid, offset + k * step, width, vector, gram))
    if not out:
        raise ValueError(f"interval {interval} too short for bumps of half-width {width}")
    return out


def assemble_K(spec: BoundarySubspaceSpec, grid: LineGrid, gram=None,
               band_tol: float = BAND_TOL) -> list[SampledLineFunction]:
    """Spanning family ``basis(H(I1)) + V basis(H(I2))``."""
    h1 = interval_basis(grid, spec.I1, spec.width, spec.offset, spec.vector, gram)
    h2 = interval_basis(grid, spec.I2, spec.width, spec.offset, spec.vector, gram)
    return h1 + [apply_V(spec.V, b, band_tol) for b in h2]


def span_residual(family, targets) -> float:
    """Largest relative least-squares residual of targets against the family."""
    A = np.stack([f.values.ravel() for f in family], axis=1)
    worst = 0.0
    for t in targets:
        y = t.values.ravel()
        coef, *_ = np.linalg.lstsq(A, y, rcond=None)
        worst = max(worst, float(np.linalg.norm(A @ coef - y) / max(np.linalg.norm(y), 1e-300)))
    return worst


def locality_probe(K1, K2) -> float:
    """Largest ``|omega(a, b)|`` over the two spanning families."""
    return max(abs(line_omega(a, b)) for a in K1 for b in K2)


# ------------------------------------------------------------ dilations

def dilate(f: SampledLineFunction, s: float) -> SampledLineFunction:
    """``(U(delta(s)) f)(x) = f(e^{-s} x)`` by cubic spline interpolation."""
    x = f.grid.x
    cs = CubicSpline(x, f.values, axis=0)
    y = np.exp(-s) * x
    inside = (y >= x[0]) & (y <= x[-1])
    vals = np.zeros_like(f.values)
    vals[inside] = cs(y[inside])
    sup = None if f.support is None else tuple(sorted((math.exp(s) * f.support[0],
                                                       math.exp(s) * f.support[1])))
    return f._like(vals, sup)


def dilation_commutation_probe(t: float, s: float, f: SampledLineFunction) -> float:
    """Sup-norm of ``U(d(s)) T(t) U(d(-s)) f - T(e^s t) f``."""
    if s == 0:
        return 0.0
    if f.support is None:
        raise SupportError("support must be declared")
    lo, hi = f.support
    margin = f.grid.X - 8 * f.grid.h
    for sc in (math.exp(-s), 1.0):
        a, b = sorted((sc * lo, sc * hi))
        for shift in (0.0, math.exp(s) * t * sc):
            if a + shift < -margin or b + shift > margin:
                raise SupportError("dilated or translated support leaves the window")
    lhs = dilate(translate(dilate(f, -s), t, None), s)
    rhs = translate(f, math.exp(s) * t, None)
    return float(np.max(np.abs(lhs.values - rhs.values)))
