"""Truncated Fourier loops, the symplectic form and the loop-group cocycle.

A loop is ``f(theta) = D theta + f0 + sum_{k=1..K} (c_k e^{ik theta} + c.c.)``
with winding ``D`` in the lattice, real zero mode ``f0`` and complex modes
``c_k``.  Pairings use the Gram matrix of the basis.

Phases are real numbers in radians; :func:`circle_distance` compares them
modulo ``2 pi``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import roots_legendre

from .discrete_cocycle import EpsilonCocycle
from .lattice_core import Lattice
from .profiles import bump, step

TWO_PI = 2 * math.pi


def wrap(phi):
    """Representative of ``phi`` in ``(-pi, pi]``."""
    return np.asarray(-((-np.asarray(phi) + math.pi) % TWO_PI - math.pi))


def circle_distance(a, b) -> float:
    return float(np.max(np.abs(wrap(np.asarray(a) - np.asarray(b)))))


# ------------------------------------------------------------------ loops

@dataclass(frozen=True, eq=False)
class TorusLoop:
    """Truncated loop with lattice winding.

    Attributes
    ----------
    gram : (n, n) float array, the pairing ``<., .>``
    winding : (n,) integer array
    zero_mode : (n,) float array
    modes : (K, n) complex array, ``modes[k-1]`` is the coefficient of e^{ik theta}
    lattice : optional Lattice, needed for the sign cocycle
    support : optional arc ``(a, b)`` with ``0 <= a < b <= a + 2 pi``
    """

    gram: np.ndarray
    winding: np.ndarray
    zero_mode: np.ndarray
    modes: np.ndarray
    lattice: Lattice | None = None
    support: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "gram", np.asarray(self.gram, dtype=float))
        object.__setattr__(self, "winding", np.asarray(self.winding, dtype=np.int64))
        object.__setattr__(self, "zero_mode", np.asarray(self.zero_mode, dtype=float))
        object.__setattr__(self, "modes", np.asarray(self.modes, dtype=complex))
        n = self.gram.shape[0]
        if self.winding.shape != (n,) or self.zero_mode.shape != (n,):
            raise ValueError("winding and zero mode must have length rank")
        if self.modes.ndim != 2 or self.modes.shape[1] != n:
            raise ValueError("modes must have shape (K, rank)")

    @property
    def rank(self):
        return self.gram.shape[0]

    @property
    def cutoff(self):
        return self.modes.shape[0]

    def oscillator(self, theta, deriv: bool = False) -> np.ndarray:
        """``f_1(theta)`` or ``f_1'(theta)``; shape (len(theta), n)."""
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        k = np.arange(1, self.cutoff + 1)
        e = np.exp(1j * np.outer(theta, k))
        if deriv:
            e = e * (1j * k)
        return 2.0 * np.real(e @ self.modes)

    def __call__(self, theta) -> np.ndarray:
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        return np.outer(theta, self.winding) + self.zero_mode + self.oscillator(theta)

    def derivative(self, theta) -> np.ndarray:
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        return self.winding[None, :] + self.oscillator(theta, deriv=True)

    def __add__(self, other: "TorusLoop") -> "TorusLoop":
        _check_same(self, other)
        return TorusLoop(self.gram, self.winding + other.winding,
                         self.zero_mode + other.zero_mode, self.modes + other.modes,
                         self.lattice or other.lattice)

    def __neg__(self) -> "TorusLoop":
        return TorusLoop(self.gram, -self.winding, -self.zero_mode, -self.modes, self.lattice)

    def scaled_oscillator(self, s: float) -> "TorusLoop":
        return TorusLoop(self.gram, self.winding, self.zero_mode, s * self.modes, self.lattice)


def FLoop(gram, zero_mode, modes, support=None) -> TorusLoop:
    """Zero-winding loop with values in ``F``."""
    g = np.asarray(gram, dtype=float)
    return TorusLoop(g, np.zeros(g.shape[0], dtype=np.int64), zero_mode, modes, None, support)


def _check_same(f: TorusLoop, g: TorusLoop):
    if f.cutoff != g.cutoff:
        raise ValueError(f"cutoff mismatch: {f.cutoff} vs {g.cutoff}")
    if f.gram.shape != g.gram.shape or not np.array_equal(f.gram, g.gram):
        raise ValueError("loops live on different spaces")


def straight_loop(lat: Lattice, alpha, K: int) -> TorusLoop:
    """``t_alpha(theta) = alpha theta``."""
    n = lat.rank
    return TorusLoop(lat.as_array(), np.asarray(alpha), np.zeros(n), np.zeros((K, n)), lat)


def constant_loop(gram, v, K: int, lattice=None) -> TorusLoop:
    g = np.asarray(gram, dtype=float)
    n = g.shape[0]
    return TorusLoop(g, np.zeros(n, dtype=np.int64), np.asarray(v, float), np.zeros((K, n)), lattice)


def decompose(samples, winding, K: int, gram=None, lattice: Lattice | None = None,
              atol: float = 1e-9) -> TorusLoop:
    """Fourier data of a loop sampled at ``theta_j = 2 pi j / N``, ``j = 0..N``.

    Parameters
    ----------
    samples : (N + 1, n) array including the endpoint ``theta = 2 pi``
    winding : integer vector declared for the loop
    K : cutoff, needs ``N >= 4K`` with ``N`` a power of two
    """
    s = np.asarray(samples, dtype=float)
    if s.ndim == 1:
        s = s[:, None]
    N = s.shape[0] - 1
    if N < 4 or N & (N - 1):
        raise ValueError("grid size must be a power of two")
    if N < 4 * K:
        raise ValueError(f"grid size {N} below 4K = {4 * K}")
    d = np.asarray(winding, dtype=np.int64)
    if np.max(np.abs(s[N] - s[0] - TWO_PI * d)) > atol * max(1.0, np.abs(s).max()):
        raise ValueError("declared winding inconsistent with endpoint data")
    if lattice is not None:
        gram = lattice.as_array()
    if gram is None:
        gram = np.eye(s.shape[1])
    theta = TWO_PI * np.arange(N) / N
    c = np.fft.fft(s[:N] - np.outer(theta, d), axis=0) / N
    return TorusLoop(gram, d, c[0].real, c[1:K + 1], lattice)


def sample(f: TorusLoop, N: int) -> np.ndarray:
    theta = TWO_PI * np.arange(N + 1) / N
    return f(theta)


def loop_from_function(fun, winding, K: int, N: int | None = None, gram=None,
                       lattice=None, support=None) -> TorusLoop:
    """Sample ``fun(theta)`` on ``N + 1`` points (default ``N = 8K``) and truncate."""
    N = 8 * K if N is None else N
    theta = TWO_PI * np.arange(N + 1) / N
    vals = np.asarray(fun(theta), dtype=float)
    if vals.ndim == 1:
        vals = vals[:, None]
    f = decompose(vals, winding, K, gram=gram, lattice=lattice)
    return TorusLoop(f.gram, f.winding, f.zero_mode, f.modes, f.lattice, support)


def _arc(center, width):
    a = (center - width) % TWO_PI
    return (a, a + 2 * width)


def _periodic(x):
    return (np.asarray(x) + math.pi) % TWO_PI - math.pi


def bump_loop(vector, center, width, K, N=None, gram=None, lattice=None) -> TorusLoop:
    """``v * bump((theta - center) / width)``, periodically placed."""
    v = np.asarray(vector, dtype=float)
    fun = lambda th: bump(_periodic(th - center) / width)[:, None] * v
    return loop_from_function(fun, np.zeros(len(v), dtype=np.int64), K, N, gram, lattice,
                              _arc(center, width))


def step_loop(alpha, center, width, K, N=None, lattice: Lattice | None = None,
              gram=None) -> TorusLoop:
    """Smooth step from 0 to ``2 pi alpha`` across the arc; winding ``alpha``.

    Outside the arc the values lie in ``2 pi L``, so ``exp(i f)`` is
    supported on the arc.  Requires ``width < center < 2 pi - width``.
    """
    a = np.asarray(alpha, dtype=np.int64)
    if not (width < center < TWO_PI - width):
        raise ValueError("step arc must not contain theta = 0")
    fun = lambda th: TWO_PI * step((th - center) / width)[:, None] * a
    return loop_from_function(fun, a, K, N, gram, lattice, _arc(center, width))


# ----------------------------------------------------- forms and actions

def omega(f: TorusLoop, g: TorusLoop) -> float:
    """``sum_k k Im(c_k^T G conj(d_k))``, equal to ``1/2 avg <f, g'>``."""
    _check_same(f, g)
    if np.any(f.winding) or np.any(g.winding):
        raise ValueError("omega is defined on zero-winding loops")
    k = np.arange(1, f.cutoff + 1)
    return float(np.sum(k * np.imag(np.einsum("ki,ij,kj->k", f.modes, f.gram, np.conj(g.modes)))))


def omega_quadrature(f: TorusLoop, g: TorusLoop, N: int | None = None) -> float:
    """Oracle for :func:`omega`: trapezoid mean of ``1/2 <f, g'>``."""
    N = 4 * f.cutoff + 8 if N is None else N
    th = TWO_PI * np.arange(N) / N
    v = np.einsum("ti,ij,tj->t", f.oscillator(th) + f.zero_mode, f.gram, g.oscillator(th, True))
    return 0.5 * float(np.mean(v))


@lru_cache(maxsize=16)
def _gl_nodes(K: int):
    # scipy's asymptotic-based nodes: numpy's leggauss is a dense eigenproblem,
    # far too slow at 4K + 64 ~ 4000 nodes
    u, w = roots_legendre(4 * K + 64)
    return math.pi * (u + 1.0), math.pi * w


def action_S(f: TorusLoop, g: TorusLoop) -> float:
    """``S`` from ``2S = avg <f', g> + <D_f, g(0)>`` by Gauss-Legendre.

    The mean over ``[0, 2 pi]`` uses ``4K + 64`` nodes; ``g`` is not
    periodic when it winds, so the periodic trapezoid rule is not used.
    """
    _check_same(f, g)
    th, w = _gl_nodes(f.cutoff)
    integrand = np.einsum("ti,ij,tj->t", f.derivative(th), f.gram, g(th))
    mean = float(np.dot(w, integrand)) / TWO_PI
    bdry = float(f.winding @ f.gram @ g(0.0)[0])
    return 0.5 * (mean + bdry)


def action_S_expanded(f: TorusLoop, g: TorusLoop) -> float:
    """Closed form of :func:`action_S` from the mode data (cross-check only).

    ``2S = pi<Df,Dg> + 2<Df,g0> + <Dg,f1(0)> + <Df,g1(0)> + avg<f1',g1>``.
    """
    G = f.gram
    k = np.arange(1, f.cutoff + 1)
    avg = 2.0 * float(np.real(np.sum(1j * k * np.einsum("ki,ij,kj->k", f.modes, G, np.conj(g.modes)))))
    f10 = f.oscillator(0.0)[0]
    g10 = g.oscillator(0.0)[0]
    Df = f.winding.astype(float)
    Dg = g.winding.astype(float)
    return 0.5 * (math.pi * Df @ G @ Dg + 2 * Df @ G @ g.zero_mode + Dg @ G @ f10
                  + Df @ G @ g10 + avg)


def _eps(f: TorusLoop, g: TorusLoop) -> int:
    if not np.any(f.winding) or not np.any(g.winding):
        return 1
    lat = f.lattice or g.lattice
    if lat is None:
        raise ValueError("winding loops need a lattice for the sign cocycle")
    return EpsilonCocycle.of(lat)(f.winding, g.winding)


def cocycle_phase(f: TorusLoop, g: TorusLoop) -> float:
    """Argument of ``c(f, g)`` (not wrapped)."""
    return (math.pi if _eps(f, g) < 0 else 0.0) + action_S(f, g)


def central_cocycle(f: TorusLoop, g: TorusLoop) -> complex:
    """``c(f, g) = eps(D_f, D_g) exp(i S(f, g))``."""
    return _eps(f, g) * complex(np.exp(1j * action_S(f, g)))


def oscillator_mean(f: TorusLoop, g: TorusLoop) -> float:
    """``avg <f_1', g_1>`` by Gauss-Legendre quadrature."""
    th, w = _gl_nodes(f.cutoff)
    v = np.einsum("ti,ij,tj->t", f.oscillator(th, True), f.gram, g.oscillator(th))
    return float(np.dot(w, v)) / TWO_PI


@dataclass
class CommutationPhase:
    displayed: float
    chained: float

    @property
    def defect(self) -> float:
        return circle_distance(self.displayed, self.chained)

    @property
    def value(self) -> complex:
        return complex(np.exp(1j * self.displayed))


def commutation_phase(f: TorusLoop, g: TorusLoop) -> CommutationPhase:
    """Phase of ``e^{if} e^{ig} (e^{if})^{-1} e^{-ig}`` two ways.

    ``displayed``: ``pi<Df,Dg> + avg<f1',g1> + <Df,g0> - <Dg,f0>``.
    ``chained``: ``pi<Df,Dg> + S(f,g) - S(g,f)``.
    """
    _check_same(f, g)
    G = f.gram
    Df = f.winding.astype(float)
    Dg = g.winding.astype(float)
    # pi <Df, Dg> only matters mod 2 pi; use the exact integer pairing
    ipair = int(f.winding @ np.rint(G).astype(np.int64) @ g.winding) if np.any(f.winding) and np.any(g.winding) else 0
    sign = math.pi * (ipair % 2)
    disp = sign + oscillator_mean(f, g) + Df @ G @ g.zero_mode - Dg @ G @ f.zero_mode
    chain = sign + action_S(f, g) - action_S(g, f)
    return CommutationPhase(float(disp), float(chain))


class SupportError(ValueError):
    pass


def _arcs_disjoint(s, t) -> bool:
    a0, a1 = s
    b0, b1 = t
    for shift in (-TWO_PI, 0.0, TWO_PI):
        if b0 + shift < a1 and a0 < b1 + shift:
            return False
    return True


def locality_defect(f: TorusLoop, g: TorusLoop, require_disjoint: bool = True) -> float:
    """``|commutation phase - 1|`` for loops with declared supports."""
    if require_disjoint:
        if f.support is None or g.support is None:
            raise SupportError("supports must be declared")
        if not _arcs_disjoint(f.support, g.support):
            raise SupportError("supports are not disjoint")
    return abs(commutation_phase(f, g).value - 1.0)


def charge(samples) -> np.ndarray:
    """Mean of a periodic density sampled at ``theta_j = 2 pi j / N``."""
    s = np.asarray(samples, dtype=float)
    if s.ndim == 1:
        s = s[:, None]
    return s.mean(axis=0)


def charge_sector(group, q, max_den: int | None = None):
    """Sector label of a charge vector ``q`` (basis coordinates)."""
    from fractions import Fraction
    den = max_den or max(abs(group.lattice.det()), 1)
    x = [Fraction(float(v)).limit_denominator(den) for v in q]
    if max(abs(float(a) - float(b)) for a, b in zip(x, q)) > 1e-8:
        raise ValueError("charge is not a dual-lattice vector")
    return group.sector(x)


def random_loop(rng, gram, K: int, winding=None, lattice=None, decay: float = 1.5,
                scale: float = 1.0) -> TorusLoop:
    g = np.asarray(gram, dtype=float)
    n = g.shape[0]
    k = np.arange(1, K + 1)[:, None]
    modes = scale * (rng.normal(size=(K, n)) + 1j * rng.normal(size=(K, n))) / k ** decay
    d = np.zeros(n, dtype=np.int64) if winding is None else np.asarray(winding, dtype=np.int64)
    return TorusLoop(g, d, scale * rng.normal(size=n), modes, lattice)


# ------------------------------------------------------------- fixtures

def loop_to_csv(f: TorusLoop) -> str:
    lines = ["# winding = " + ";".join(str(int(v)) for v in f.winding),
             "# zero_mode = " + ";".join(repr(float(v)) for v in f.zero_mode),
             f"# cutoff = {f.cutoff}",
             "direction,k,re,im"]
    for i in range(f.rank):
        for k in range(f.cutoff):
            c = f.modes[k, i]
            lines.append(f"{i},{k + 1},{float(c.real)!r},{float(c.imag)!r}")
    return "\n".join(lines) + "\n"


def loop_from_csv(text: str, gram=None, lattice: Lattice | None = None) -> TorusLoop:
    head = {}
    rows = []
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln:
            continue
        if ln.startswith("#"):
            key, _, val = ln[1:].partition("=")
            head[key.strip()] = val.strip()
        elif ln.startswith("direction"):
            continue
        else:
            d, k, re_, im_ = ln.split(",")
            rows.append((int(d), int(k), float(re_), float(im_)))
    try:
        wind = [int(v) for v in head["winding"].split(";")]
        zero = [float(v) for v in head["zero_mode"].split(";")]
        K = int(head["cutoff"])
    except KeyError as exc:
        raise ValueError(f"missing header line {exc}") from None
    n = len(wind)
    modes = np.zeros((K, n), dtype=complex)
    for d, k, re_, im_ in rows:
        if not (0 <= d < n and 1 <= k <= K):
            raise ValueError(f"mode index out of range: direction {d}, k {k}")
        modes[k - 1, d] = complex(re_, im_)
    if lattice is not None:
        gram = lattice.as_array()
    if gram is None:
        gram = np.eye(n)
    return TorusLoop(gram, wind, zero, modes, lattice)
