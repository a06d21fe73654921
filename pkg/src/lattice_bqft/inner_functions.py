"""Symmetric inner functions on the real line.

A scalar function is a finite product of

* symmetric Blaschke factors ``(p - a)(p + conj a) / ((p - conj a)(p + a))``
  with ``Im a > 0`` (value 1 at ``p = 0``),
* axis factors ``(p - iy) / (p + iy)`` with ``y > 0`` (value -1 at 0),
* a singular factor ``exp(i t p)`` with ``t >= 0``,
* a sign ``+1`` or ``-1``.

All poles sit in the lower half-plane, so evaluation is defined on the
closed upper half-plane.  Every factor satisfies ``phi(-p) = conj phi(p)``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .lattice_core import Lattice, is_lattice_automorphism


@dataclass(frozen=True)
class SymmetricInnerFunction:
    zeros: tuple = ()
    singular_t: float = 0.0
    sign: int = 1
    axis_zeros: tuple = ()

    def __post_init__(self):
        z = tuple(complex(a) for a in self.zeros)
        if any(a.imag <= 0 for a in z):
            raise ValueError("zeros must lie in the open upper half-plane")
        y = tuple(float(v) for v in self.axis_zeros)
        if any(v <= 0 for v in y):
            raise ValueError("axis zeros need y > 0")
        if self.singular_t < 0:
            raise ValueError("singular exponent t must be >= 0")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        object.__setattr__(self, "zeros", z)
        object.__setattr__(self, "axis_zeros", y)
        object.__setattr__(self, "singular_t", float(self.singular_t))

    def __call__(self, p):
        return evaluate(self, p)

    def at_zero(self) -> int:
        return self.sign * (-1) ** len(self.axis_zeros)

    def __mul__(self, other):
        return multiply(self, other)


def identity() -> SymmetricInnerFunction:
    return SymmetricInnerFunction()


def blaschke(*zeros) -> SymmetricInnerFunction:
    return SymmetricInnerFunction(zeros=zeros)


def singular(t: float) -> SymmetricInnerFunction:
    return SymmetricInnerFunction(singular_t=t)


def cayley(y: float = 1.0) -> SymmetricInnerFunction:
    """``(p - iy) / (p + iy)``."""
    return SymmetricInnerFunction(axis_zeros=(y,))


def evaluate(phi: SymmetricInnerFunction, p):
    """Value at real ``p`` or at points of the upper half-plane."""
    p = np.asarray(p)
    if np.iscomplexobj(p) and np.any(p.imag < -1e-14):
        raise ValueError("evaluation needs Im p >= 0")
    p = p.astype(complex)
    out = np.full(p.shape, complex(phi.sign))
    for a in phi.zeros:
        ac = np.conj(a)
        out = out * ((p - a) * (p + ac)) / ((p - ac) * (p + a))
    for y in phi.axis_zeros:
        out = out * (p - 1j * y) / (p + 1j * y)
    if phi.singular_t:
        out = out * np.exp(1j * phi.singular_t * p)
    return out if out.ndim else complex(out)


def multiply(phi: SymmetricInnerFunction, psi: SymmetricInnerFunction) -> SymmetricInnerFunction:
    return SymmetricInnerFunction(phi.zeros + psi.zeros, phi.singular_t + psi.singular_t,
                                  phi.sign * psi.sign, phi.axis_zeros + psi.axis_zeros)


# ----------------------------------------------------------------- checks

def default_grid(n: int = 10_000, L: float = 100.0) -> np.ndarray:
    return np.linspace(-L, L, n)


@dataclass
class InnerReport:
    symmetry_defect: float
    unimodular_defect: float
    upper_bound: float
    tol: float = 1e-12

    @property
    def symmetric(self) -> bool:
        return self.symmetry_defect <= self.tol

    @property
    def inner(self) -> bool:
        return self.unimodular_defect <= self.tol and self.upper_bound <= 1 + 1e-10


def check_symmetric_inner(phi, grid=None, tol: float = 1e-12) -> InnerReport:
    """Symmetry, unimodularity and an upper half-plane boundedness probe.

    ``phi`` may be any callable on complex arrays (used for negative
    controls).
    """
    p = default_grid() if grid is None else np.asarray(grid, dtype=float)
    v = np.asarray(phi(p.astype(complex)))
    vm = np.asarray(phi((-p).astype(complex)))
    sym = float(np.max(np.abs(vm - np.conj(v))))
    uni = float(np.max(np.abs(np.abs(v) - 1)))
    xs = np.linspace(-50, 50, 201)
    ys = np.logspace(-3, 3, 61)
    z = (xs[None, :] + 1j * ys[:, None]).ravel()
    with np.errstate(over="ignore", invalid="ignore"):
        pz = np.abs(np.asarray(phi(z)))
    bound = float(np.max(np.where(np.isfinite(pz), pz, np.inf)))
    return InnerReport(sym, uni, bound, tol)


@dataclass
class HolderResult:
    verdict: str
    estimate: float
    increments: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"


_GL_U, _GL_W = np.polynomial.legendre.leggauss(48)


def dyadic_integral(integrand, p_max: float = 1.0, both_sides: bool = True,
                    cauchy_tol: float = 1e-6, levels: int = 8,
                    max_levels: int = 80, slack: float = 1e-9) -> HolderResult:
    """Integrate toward ``p = 0`` over dyadic shells.

    The shell ``[p_max 2^-(j+1), p_max 2^-j]`` (and its mirror when
    ``both_sides``) is integrated with 48-point Gauss-Legendre.  PASS once a
    shell contributes less than ``cauchy_tol``; FAIL once ``levels``
    consecutive contributions fail to decrease (up to a relative ``slack``).
    """
    total = 0.0
    incs = []
    streak = 0
    for j in range(max_levels):
        hi = p_max * 2.0 ** (-j)
        lo = hi / 2
        mid, half = (hi + lo) / 2, (hi - lo) / 2
        p = mid + half * _GL_U
        val = half * float(np.dot(_GL_W, integrand(p)))
        if both_sides:
            val += half * float(np.dot(_GL_W, integrand(-p)))
        total += val
        incs.append(val)
        if abs(val) < cauchy_tol:
            return HolderResult("PASS", total, incs)
        if j and val >= incs[-2] * (1 - slack):
            streak += 1
            if streak >= levels:
                return HolderResult("FAIL", math.inf, incs)
        else:
            streak = 0
    return HolderResult("FAIL", math.inf, incs)


def holder_check(phi, p_max: float = 1.0) -> HolderResult:
    """Local integrability of ``|phi(p) - 1|^2 / |p|`` near 0."""
    def f(p):
        return np.abs(np.asarray(phi(p.astype(complex))) - 1) ** 2 / np.abs(p)
    return dyadic_integral(f, p_max)


def warn_if_not_holder(phi: SymmetricInnerFunction, context: str = ""):
    if phi.at_zero() != 1:
        warnings.warn(f"{context}: phi(0) = -1, the Hölder condition at 0 fails",
                      stacklevel=2)


# ------------------------------------------------------------ matrix case

def gram_components(lat: Lattice) -> list[list[int]]:
    """Connected components of the graph with edges ``G_ij != 0``."""
    n = lat.rank
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if not seen[j] and lat.gram[i][j]:
                    seen[j] = True
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


@dataclass(frozen=True, eq=False)
class MatrixInnerFunction:
    """``phi(p) alpha_i = phi_j(p) R alpha_i`` for ``alpha_i`` in component j."""

    lattice: Lattice
    components: tuple
    scalars: tuple
    R: np.ndarray

    def component_of(self) -> list[int]:
        out = [0] * self.lattice.rank
        for j, comp in enumerate(self.components):
            for i in comp:
                out[i] = j
        return out

    def __call__(self, p):
        """Matrices in basis coordinates, shape ``p.shape + (n, n)``."""
        p = np.asarray(p, dtype=complex)
        vals = [np.asarray(s(p), dtype=complex) * np.ones(p.shape) for s in self.scalars]
        comp = self.component_of()
        col = np.stack([vals[comp[i]] for i in range(self.lattice.rank)], axis=-1)
        return col[..., None, :] * self.R

    def scalar_for(self, i: int):
        return self.scalars[self.component_of()[i]]


def build_matrix(lattice: Lattice, scalars, R=None, components=None,
                 check_orthogonal: bool = True) -> MatrixInnerFunction:
    comps = gram_components(lattice) if components is None else [sorted(c) for c in components]
    if sorted(i for c in comps for i in c) != list(range(lattice.rank)):
        raise ValueError("components must partition the basis")
    if len(scalars) != len(comps):
        raise ValueError(f"need {len(comps)} scalars, got {len(scalars)}")
    if check_orthogonal:
        for a in range(len(comps)):
            for b in range(a + 1, len(comps)):
                if any(lattice.gram[i][j] for i in comps[a] for j in comps[b]):
                    raise ValueError("components are not orthogonal")
    R = np.eye(lattice.rank, dtype=np.int64) if R is None else np.asarray(R, dtype=np.int64)
    if not is_lattice_automorphism(lattice, R):
        raise ValueError("R is not a lattice automorphism")
    return MatrixInnerFunction(lattice, tuple(tuple(c) for c in comps), tuple(scalars), R)


def matrix_unitarity_defect(phi: MatrixInnerFunction, grid=None) -> float:
    """``max |Phi^dag G Phi - G|`` over real sample points."""
    p = np.linspace(-20, 20, 401) if grid is None else np.asarray(grid)
    M = phi(p)
    G = phi.lattice.as_array()
    d = np.einsum("pki,kl,plj->pij", np.conj(M), G, M) - G
    return float(np.max(np.abs(d)))


def matrix_symmetry_defect(phi: MatrixInnerFunction, grid=None) -> float:
    p = np.linspace(-20, 20, 401) if grid is None else np.asarray(grid)
    return float(np.max(np.abs(phi(-p) - np.conj(phi(p)))))
