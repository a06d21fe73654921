"""Charged cocycles for extending ``phi(P)`` from the current net to the lattice net.

Everything is reduced to Weyl phases and one-particle vectors on the line.
Conventions used throughout this module (``kappa = 1/(2 pi)``):

* ``pair(a, b) = kappa int <a, b> dx``;
* the Weyl form is ``w(a, b) = 1/2 kappa int <a, b'> dx``, i.e. the circle
  form carried to the line (the negative of :func:`half_line.line_omega`),
  with ``W(a) W(b) = exp(-i w(a, b)) W(a + b)``;
* the charge automorphism acts as
  ``beta_q(W(g)) = exp(i pair(g, m q~)) W(g)`` with ``q~ = sum q_i alpha~_i``.

The scalar chains checked below do not depend on the sign choice except
for the orbifold phase, which is fixed by the conventions above.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .half_line import LineGrid, SampledLineFunction, apply_V, translate, SupportError
from .inner_functions import MatrixInnerFunction, dyadic_integral, HolderResult
from .lattice_core import Lattice
from .loop_algebra import circle_distance, wrap
from .profiles import BUMP_INTEGRAL, bump, step

KAPPA = 1.0 / (2 * math.pi)


@dataclass(frozen=True, eq=False)
class StepData:
    """Unit-integral bump ``m`` on ``(center - width, center + width)`` and ``M``."""

    grid: LineGrid
    center: float = 2.0
    width: float = 1.0

    def __post_init__(self):
        if self.center - self.width <= 0:
            raise SupportError("supp m must lie in (0, inf)")

    @property
    def m(self) -> np.ndarray:
        return bump((self.grid.x - self.center) / self.width) / (BUMP_INTEGRAL * self.width)

    def M(self, shift: float = 0.0) -> np.ndarray:
        """``M_t(x) = M(x - t)``."""
        return step((self.grid.x - shift - self.center) / self.width)

    def m_hat(self, p) -> np.ndarray:
        """``1/2pi int e^{-ipx} m(x) dx`` by Gauss-Legendre on the support."""
        u, w = np.polynomial.legendre.leggauss(96)
        x = self.center + self.width * u
        mv = bump(u) / BUMP_INTEGRAL
        p = np.asarray(p, dtype=float)
        return (np.exp(-1j * np.multiply.outer(p, x)) @ (w * mv)) / (2 * math.pi)


@dataclass(frozen=True, eq=False)
class TwistedChargeData:
    """Per-generator data ``m_i``, ``h_i = M_i - M alpha~_i`` for ``phi``."""

    phi: MatrixInnerFunction
    stepdata: StepData
    m_i: list = field(init=False)
    h_i: list = field(init=False)
    dh_i: list = field(init=False)

    def __post_init__(self):
        lat = self.phi.lattice
        n = lat.rank
        g = self.stepdata.grid
        G = lat.as_array()
        m = self.stepdata.m
        p = g.p
        # conj Phi(p) is the multiplier of phi(P)
        Mv = np.conj(self.phi(p))
        eye = np.eye(n)
        mh = np.fft.fft(m)
        ms, hs, dhs = [], [], []
        for i in range(n):
            base = SampledLineFunction(g, m[:, None] * eye[i][None, :], G, self.stepdata_support())
            mi = apply_V(self.phi, base)
            ms.append(mi)
            at = self.tilde(i)
            num = np.einsum("pij,j->pi", Mv, eye[i]) * mh[:, None] - at[None, :] * mh[:, None]
            with np.errstate(divide="ignore", invalid="ignore"):
                hh = np.where(p[:, None] != 0, num / (1j * p[:, None]), 0.0)
            h = np.fft.ifft(hh, axis=0).real
            h = h - h[0]
            hs.append(SampledLineFunction(g, h, G))
            dhs.append(np.fft.ifft(num, axis=0).real)
        object.__setattr__(self, "m_i", ms)
        object.__setattr__(self, "h_i", hs)
        object.__setattr__(self, "dh_i", dhs)

    def stepdata_support(self):
        s = self.stepdata
        return (s.center - s.width, s.center + s.width)

    @property
    def lattice(self) -> Lattice:
        return self.phi.lattice

    @property
    def grid(self) -> LineGrid:
        return self.stepdata.grid

    @property
    def gram(self) -> np.ndarray:
        return self.lattice.as_array()

    def tilde(self, i: int) -> np.ndarray:
        return self.phi.R[:, i].astype(float)

    def m_alpha(self, vec) -> np.ndarray:
        return self.stepdata.m[:, None] * np.asarray(vec, dtype=float)[None, :]

    def M_alpha(self, vec, shift: float = 0.0) -> np.ndarray:
        return self.stepdata.M(shift)[:, None] * np.asarray(vec, dtype=float)[None, :]

    # -- pairings on raw (N, n) arrays
    def pair(self, a, b) -> float:
        return KAPPA * self.grid.h * float(np.sum((a @ self.gram) * b))

    def weyl_form(self, a, db) -> float:
        """``w(a, b)`` given ``a`` and the derivative ``b'``."""
        return 0.5 * self.pair(a, db)


def build_m_i(step_data: StepData, phi_j, alpha_tilde) -> SampledLineFunction:
    """Inverse transform of ``conj(phi_j(p)) m^(p)`` times ``alpha~``."""
    g = step_data.grid
    base = SampledLineFunction(g, step_data.m, None, (step_data.center - step_data.width,
                                                       step_data.center + step_data.width))
    mi = apply_V(phi_j, base)
    a = np.asarray(alpha_tilde, dtype=float)
    return SampledLineFunction(g, mi.values[:, :1] * a[None, :], None, None, mi.imag_defect)


def _spectral_derivative(grid: LineGrid, v: np.ndarray) -> np.ndarray:
    return np.fft.ifft(1j * grid.p[:, None] * np.fft.fft(v, axis=0), axis=0).real


def norm_membership_check(data: TwistedChargeData, i: int, p_max: float = 1.0) -> HolderResult:
    """``int_0^pmax |phi(p) - 1|^2 / p |m^(p) alpha~_i|^2 dp`` by dyadic shells."""
    phi_j = data.phi.scalar_for(i)
    a = data.tilde(i)
    na = float(a @ data.gram @ a)

    def f(p):
        d = np.abs(np.asarray(phi_j(p.astype(complex)), dtype=complex) * np.ones(p.shape) - 1) ** 2
        return d / np.abs(p) * np.abs(data.stepdata.m_hat(p)) ** 2 * na

    return dyadic_integral(f, p_max, both_sides=False)


# --------------------------------------------------------------- (a1)-(a3)

def verify_a1(data: TwistedChargeData, i: int, f: SampledLineFunction) -> float:
    """``pair(m a~_i, V0 f) + pair(h_i', V0 f) = pair(m a_i, f)`` mod 2 pi."""
    if f.support is None or f.support[0] <= 0:
        raise SupportError("test function must be supported in (0, inf)")
    V0f = apply_V(data.phi, f).values
    dh = _spectral_derivative(data.grid, data.h_i[i].values)
    n = data.lattice.rank
    lhs = math.fsum([data.pair(data.m_alpha(data.tilde(i)), V0f), data.pair(dh, V0f)])
    rhs = data.pair(data.m_alpha(np.eye(n)[i]), f.values)
    return circle_distance(lhs, rhs)


def a2_phase(data: TwistedChargeData, i: int, j: int) -> float:
    """Phase of ``z_i beta~_i(z_j)`` relative to ``W(h_i + h_j)``."""
    hi, hj = data.h_i[i].values, data.h_i[j].values
    return data.pair(hj, data.m_alpha(data.tilde(i))) - data.weyl_form(hi, data.dh_i[j])


def verify_a2(data: TwistedChargeData, i: int, j: int) -> float:
    """Symmetry of the ``z_i beta~_i(z_j)`` phase and of the cross term."""
    if i == j:
        return 0.0
    d1 = circle_distance(a2_phase(data, i, j), a2_phase(data, j, i))
    # int <M_i, M a~_j> - <M_j, M a~_i> reduces to the decaying h parts
    cross = (data.pair(data.h_i[i].values, data.M_alpha(data.tilde(j)))
             - data.pair(data.h_i[j].values, data.M_alpha(data.tilde(i))))
    return max(d1, abs(cross))


def verify_a3(data: TwistedChargeData, i: int, t_values) -> float:
    """``w(h_i, (M - M_t) a~_i) = w(M_i - M_{t,i}, M_{t,i} - M_t a~_i)``."""
    g = data.grid
    worst = 0.0
    hi = data.h_i[i]
    a = data.tilde(i)
    for t in t_values:
        if t == 0:
            continue
        if abs(t) + data.stepdata.center + data.stepdata.width > g.X - 8 * g.h:
            raise SupportError("translated support leaves the window")
        D = data.M_alpha(a) - data.M_alpha(a, t)
        ht = translate(hi, t, None).values
        dD = _spectral_derivative(g, D)
        dht = _spectral_derivative(g, ht)
        lhs = data.weyl_form(hi.values, dD)
        rhs = data.weyl_form(hi.values - ht + D, dht)
        worst = max(worst, circle_distance(lhs, rhs))
    return worst


# ------------------------------------------------------ phase-level arrows

@dataclass(frozen=True, eq=False)
class Arrow:
    """``exp(i theta) W(h)`` carrying the charge index ``q`` (``h'`` kept too)."""

    theta: float
    h: np.ndarray
    dh: np.ndarray
    q: tuple


class WeylArrows:
    """Products ``s <> t = s beta~_{q(s)}(t)`` of phase-level Weyl elements."""

    def __init__(self, data: TwistedChargeData):
        self.data = data
        n = data.lattice.rank
        N = data.grid.N
        self.n = n
        self._zero = np.zeros((N, n))
        self.m_tilde = [data.m_alpha(data.tilde(i)) for i in range(n)]
        self._memo = {}

    def unit(self) -> Arrow:
        return Arrow(0.0, self._zero, self._zero, (0,) * self.n)

    def weyl(self, h, dh, theta: float = 0.0) -> Arrow:
        return Arrow(theta, h, dh, (0,) * self.n)

    def charge(self, i: int, sign: int = 1, theta: float = 0.0) -> Arrow:
        q = [0] * self.n
        q[i] = sign
        return Arrow(theta, self._zero, self._zero, tuple(q))

    def beta_phase(self, q, h) -> float:
        return math.fsum(qi * self.data.pair(h, self.m_tilde[k]) for k, qi in enumerate(q) if qi)

    def mul(self, a: Arrow, b: Arrow) -> Arrow:
        th = math.fsum([a.theta, b.theta, self.beta_phase(a.q, b.h),
                        -self.data.weyl_form(a.h, b.dh)])
        return Arrow(float(wrap(th)), a.h + b.h, a.dh + b.dh,
                     tuple(x + y for x, y in zip(a.q, b.q)))

    def adjoint(self, a: Arrow) -> Arrow:
        """``(e^{i th} W(h) U_q)^* = U_{-q} e^{-i th} W(-h)``."""
        u = Arrow(0.0, self._zero, self._zero, tuple(-x for x in a.q))
        return self.mul(u, Arrow(-a.theta, -a.h, -a.dh, (0,) * self.n))

    def distance(self, a: Arrow, b: Arrow) -> float:
        if a.q != b.q:
            return math.inf
        vec = float(np.max(np.abs(a.h - b.h))) if a.h.size else 0.0
        return max(circle_distance(a.theta, b.theta), vec)

    # cocycle generators
    def z(self, i: int) -> Arrow:
        d = self.data
        return Arrow(0.0, d.h_i[i].values, d.dh_i[i], self.charge(i).q)

    def z_minus(self, i: int) -> Arrow:
        """``beta~_i^{-1}(z_i^*)`` with charge ``-e_i``."""
        d = self.data
        h = d.h_i[i].values
        th = d.pair(h, self.m_tilde[i])
        return Arrow(float(wrap(th)), -h, -d.dh_i[i], self.charge(i, -1).q)

    def word(self, g, order=None, _memo=None) -> Arrow:
        """Left-to-right product of ``z_i^{g_i}`` in the given generator order."""
        order = tuple(range(self.n)) if order is None else tuple(order)
        memo = self._memo.setdefault(order, {}) if _memo is None else _memo
        g = tuple(int(v) for v in g)
        if g in memo:
            return memo[g]
        last = next((i for i in reversed(order) if g[i]), None)
        if last is None:
            v = self.unit()
        else:
            s = 1 if g[last] > 0 else -1
            prev = list(g)
            prev[last] -= s
            gen = self.z(last) if s > 0 else self.z_minus(last)
            v = self.mul(self.word(prev, order, memo), gen)
        memo[g] = v
        return v


@dataclass
class ExtReport:
    composition: float
    ordering: float
    inverse: float
    words: int

    @property
    def defect(self) -> float:
        return max(self.composition, self.ordering, self.inverse)


def verify_ext_cocycle(data: TwistedChargeData, radius: int = 3) -> ExtReport:
    """``v_{g+h} = v_g <> v_h`` for ``|g_i|, |h_i| <= radius`` and order independence."""
    A = WeylArrows(data)
    n = data.lattice.rank
    words = {}
    for g in itertools.product(range(-2 * radius, 2 * radius + 1), repeat=n):
        words[g] = A.word(g)
    comp = 0.0
    box = list(itertools.product(range(-radius, radius + 1), repeat=n))
    for g in box:
        for h in box:
            gh = tuple(x + y for x, y in zip(g, h))
            comp = max(comp, A.distance(words[gh], A.mul(words[g], words[h])))
    rev = list(reversed(range(n)))
    ordering = max(A.distance(words[g], A.word(g, rev)) for g in box)
    inv = 0.0
    for i in range(n):
        zi = A.z_minus(i)
        inv = max(inv, A.distance(A.mul(zi, A.z(i)), A.unit()),
                  A.distance(A.mul(A.z(i), zi), A.unit()))
        for j in range(n):
            if i != j:
                inv = max(inv, A.distance(A.mul(A.z(j), zi), A.mul(zi, A.z(j))))
    return ExtReport(comp, ordering, inv, len(box) ** 2)


def verify_orbifold_commutation(data: TwistedChargeData, i: int, adjusted: bool = True,
                                c=None) -> float:
    """``eta(tau(U_i)) = tau(eta(U_i))`` for ``tau: W(f) -> W(-f)``, ``U -> c U^*``.

    ``eta(U_i) = z_i U_i`` with ``z_i = exp(i theta_i) W(h_i)``; the adjusted
    phase is ``theta_i = pair(h_i, m alpha_i) / 2``.  Requires ``R = id``.
    """
    if not np.array_equal(data.phi.R, np.eye(data.lattice.rank, dtype=data.phi.R.dtype)):
        raise ValueError("the orbifold identity is stated for R = id")
    A = WeylArrows(data)
    c = 1.0 + 0j if c is None else complex(c)
    arg_c = math.atan2(c.imag, c.real)
    h, dh = data.h_i[i].values, data.dh_i[i]
    theta = 0.5 * data.pair(h, A.m_tilde[i]) if adjusted else 0.0
    z = A.weyl(h, dh, theta)
    U = A.charge(i)

    def tau(a: Arrow) -> Arrow:
        # tau(e^{i th} W(h) U_q) = e^{i th} W(-h) tau(U_q), tau(U_i) = c U_i^*
        w = Arrow(a.theta, -a.h, -a.dh, (0,) * A.n)
        qi = a.q[i]
        if qi == 0:
            return w
        if qi == 1:
            return A.mul(w, A.charge(i, -1, arg_c))   # c U_i^*
        return A.mul(w, A.charge(i, 1, -arg_c))       # tau(U_i^*) = conj(c) U_i

    def eta(a: Arrow) -> Arrow:
        # only phases times charge generators or their adjoints enter this chain
        if np.any(a.h):
            raise ValueError("unsupported element")
        if a.q[i] == 1:
            return A.mul(Arrow(a.theta, a.h, a.dh, (0,) * A.n), A.mul(z, U))
        if a.q[i] == -1:
            ez = A.mul(z, U)
            return A.mul(Arrow(a.theta, a.h, a.dh, (0,) * A.n), A.adjoint(ez))
        raise ValueError("unsupported element")

    lhs = eta(tau(U))
    rhs = tau(eta(U))
    return A.distance(lhs, rhs)
