"""Finite cocycles on an even lattice.

The sign cocycle ``eps`` is stored through a matrix ``B`` over ``Z_2`` and
evaluated by bilinear extension, so bimultiplicativity holds by
construction.  More general bicharacters ``eta(a, b) = exp(2 pi i a.T.b)``
use a rational turn matrix ``T`` written as ``num / den``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .lattice_core import Lattice, LatticeError, exact_phase, is_even


# ---------------------------------------------------------------- B, eps

@dataclass(frozen=True)
class BilinearFormB:
    matrix: tuple

    def __post_init__(self):
        m = tuple(tuple(int(v) % 2 for v in r) for r in self.matrix)
        object.__setattr__(self, "matrix", m)

    @property
    def rank(self):
        return len(self.matrix)


def build_b(lat: Lattice) -> BilinearFormB:
    """Upper-triangular ``B``: off-diagonal pairings above, half norms on it."""
    if not is_even(lat):
        raise LatticeError("the sign cocycle needs an even lattice")
    g = lat.gram
    n = lat.rank
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i < j:
                row.append(g[i][j] % 2)
            elif i == j:
                row.append((g[i][i] // 2) % 2)
            else:
                row.append(0)
        rows.append(tuple(row))
    return BilinearFormB(tuple(rows))


@dataclass(frozen=True)
class EpsilonCocycle:
    b: BilinearFormB

    @classmethod
    def of(cls, lat: Lattice) -> "EpsilonCocycle":
        return cls(build_b(lat))

    def exponent(self, a, c) -> int:
        m = self.b.matrix
        n = len(m)
        return sum(int(a[i]) * m[i][j] * int(c[j]) for i in range(n) for j in range(n)) % 2

    def __call__(self, a, c) -> int:
        return -1 if self.exponent(a, c) else 1

    def as_bicharacter(self) -> "Bicharacter":
        return Bicharacter(np.array(self.b.matrix, dtype=np.int64), 2)


def epsilon(e: EpsilonCocycle, a, b) -> int:
    return e(a, b)


# ---------------------------------------------------------- bicharacters

@dataclass(frozen=True, eq=False)
class Bicharacter:
    """``eta(a, b) = exp(2 pi i a.num.b / den)`` on integer vectors."""

    num: np.ndarray
    den: int

    def __post_init__(self):
        object.__setattr__(self, "num", np.asarray(self.num, dtype=np.int64))
        if int(self.den) <= 0:
            raise ValueError("denominator must be positive")
        object.__setattr__(self, "den", int(self.den))

    @property
    def rank(self):
        return self.num.shape[0]

    def residue(self, a, b):
        """Exponent numerator modulo ``den``; vectorized over leading axes."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        return np.einsum("...i,ij,...j->...", a, self.num, b) % self.den

    def turns(self, a, b) -> Fraction:
        return Fraction(int(self.residue(a, b)), self.den)

    def __call__(self, a, b) -> complex:
        return exact_phase(self.turns(a, b))

    def generator_table(self) -> np.ndarray:
        n = self.rank
        eye = np.eye(n, dtype=np.int64)
        return np.array([[self(eye[i], eye[j]) for j in range(n)] for i in range(n)])


def trivial_bicharacter(n: int) -> Bicharacter:
    return Bicharacter(np.zeros((n, n), dtype=np.int64), 1)


def loop_bicharacter(lat: Lattice) -> Bicharacter:
    """The choice ``eta(a, b) = c(t_a, t_b)`` for the straight loops ``t_a``.

    With the normative action ``S(t_a, t_b) = pi <a, b> / 2`` the phase is
    ``eps(a, b) exp(i pi <a,b> / 2)``, i.e. turns ``B/2 + G/4``.
    """
    b = np.array(build_b(lat).matrix, dtype=np.int64)
    g = np.array(lat.gram, dtype=np.int64)
    return Bicharacter(2 * b + g, 4)


# ------------------------------------------------------- identity checks

@dataclass
class EpsilonReport:
    trials: int
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def csv_rows(self):
        head = ["trial", "identity", "a", "b", "c", "lhs", "rhs"]
        rows = [head]
        for f in self.failures:
            rows.append([str(f[k]) if k not in "abc" else ";".join(map(str, f[k]))
                         for k in head])
        return rows


def verify_epsilon_identities(lat: Lattice, e: EpsilonCocycle | None = None,
                              trials: int = 1000, rng_seed: int = 0,
                              box: int = 4) -> EpsilonReport:
    """Check the 2-cocycle, commutator and diagonal identities exactly.

    Random integer triples ``(a, b, c)`` are drawn from ``[-box, box]^n``.
    """
    e = EpsilonCocycle.of(lat) if e is None else e
    rng = np.random.default_rng(rng_seed)
    rep = EpsilonReport(trials)
    n = lat.rank
    for t in range(trials):
        a, b, c = (tuple(int(v) for v in rng.integers(-box, box + 1, n)) for _ in range(3))
        bc = tuple(x + y for x, y in zip(b, c))
        ab = tuple(x + y for x, y in zip(a, b))
        lhs = e(a, bc) * e(b, c)
        rhs = e(a, b) * e(ab, c)
        if lhs != rhs:
            rep.failures.append(dict(trial=t, identity="cocycle", a=a, b=b, c=c, lhs=lhs, rhs=rhs))
        lhs = e(a, b) * e(b, a)
        rhs = -1 if lat.pair(a, b) % 2 else 1
        if lhs != rhs:
            rep.failures.append(dict(trial=t, identity="commutator", a=a, b=b, c=c, lhs=lhs, rhs=rhs))
        lhs = e(a, a)
        rhs = -1 if (lat.norm(a) // 2) % 2 else 1
        if lhs != rhs:
            rep.failures.append(dict(trial=t, identity="diagonal", a=a, b=b, c=c, lhs=lhs, rhs=rhs))
    return rep


# ------------------------------------------------------ commutator maps

@dataclass
class CommutatorVerdict:
    cohomologous: bool
    mismatches: list
    assumption: str = ("restriction to each generator factor assumed cohomologous "
                       "(automatic for bimultiplicative input)")


def _table(c):
    if isinstance(c, Bicharacter):
        return c.generator_table()
    if isinstance(c, EpsilonCocycle):
        return c.as_bicharacter().generator_table()
    return np.asarray(c, dtype=complex)


def commutator_map(c1, c2, tol: float = 1e-12) -> CommutatorVerdict:
    """Compare ``c(g, h) / c(h, g)`` on all generator pairs.

    Parameters
    ----------
    c1, c2 : Bicharacter, EpsilonCocycle or square array of generator values
    """
    t1, t2 = _table(c1), _table(c2)
    if t1.shape != t2.shape:
        raise ValueError("generator tables differ in shape")
    for t in (t1, t2):
        if np.max(np.abs(np.abs(t) - 1)) > 1e-12:
            raise ValueError("cocycle values must be unit complex numbers")
    h1 = t1 / t1.T
    h2 = t2 / t2.T
    bad = [(i, j) for i, j in zip(*np.nonzero(np.abs(h1 - h2) > tol))]
    return CommutatorVerdict(not bad, [(int(i), int(j)) for i, j in bad])


# ---------------------------------------------------------- Klein shifts

@dataclass(frozen=True, eq=False)
class ChargeWindow:
    """Box ``{x : |x_i| <= radius}`` of charges together with a cocycle."""

    lattice: Lattice
    radius: int
    eta: Bicharacter

    def points(self) -> np.ndarray:
        n = self.lattice.rank
        r = self.radius
        return np.array(list(itertools.product(range(-r, r + 1), repeat=n)), dtype=np.int64)

    def contains(self, x) -> np.ndarray:
        return np.all(np.abs(x) <= self.radius, axis=-1)


def klein_apply(w: ChargeWindow, alpha, gammas):
    """Action of the twisted shift on basis vectors ``e_gamma``.

    Returns target charges ``gamma + alpha`` and the residues of the phase
    ``eta(-(gamma + alpha), alpha)`` (units of ``1/den`` turns).
    """
    alpha = np.asarray(alpha, dtype=np.int64)
    tgt = gammas + alpha
    return tgt, w.eta.residue(-tgt, alpha)


@dataclass
class KleinReport:
    checked: int
    undefined: int
    failures: list

    @property
    def ok(self):
        return not self.failures


def default_shifts(n: int) -> np.ndarray:
    vecs = [v for v in itertools.product((-1, 0, 1), repeat=n) if sum(map(abs, v)) <= 2]
    return np.array(vecs, dtype=np.int64)


def klein_shift_check(w: ChargeWindow, shifts=None) -> KleinReport:
    """Exact check of ``G(a) G(b) = eta(a, b) G(a + b)`` on the window.

    An index ``gamma`` is defined for the pair when ``gamma + b`` and
    ``gamma + a + b`` lie in the window; the other indices are counted as
    boundary.
    """
    pts = w.points()
    if len(pts) == 0:
        raise ValueError("empty window")
    shifts = default_shifts(w.lattice.rank) if shifts is None else np.asarray(shifts, dtype=np.int64)
    den = w.eta.den
    checked = undefined = 0
    failures = []
    for a in shifts:
        for b in shifts:
            mid, r1 = klein_apply(w, b, pts)
            end, r2 = klein_apply(w, a, mid)
            end2, r3 = klein_apply(w, a + b, pts)
            ok = w.contains(mid) & w.contains(end)
            lhs = (r1 + r2) % den
            rhs = (w.eta.residue(a, b) + r3) % den
            bad = ok & ((lhs != rhs) | np.any(end != end2, axis=1))
            checked += int(ok.sum())
            undefined += int((~ok).sum())
            for idx in np.nonzero(bad)[0]:
                failures.append((tuple(a), tuple(b), tuple(pts[idx])))
    if checked == 0:
        raise ValueError("window too small: no index where both sides are defined")
    return KleinReport(checked, undefined, failures)
