"""Exact integer engine for even lattices.

A lattice is stored through its Gram matrix in a fixed basis.  Everything
here is exact: Python integers for the Smith normal form and
``fractions.Fraction`` for dual vectors.  Floating point only appears as an
enumeration aid inside :func:`short_vectors`, where every candidate is
re-checked exactly.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence


class LatticeError(ValueError):
    """Raised for malformed or unsupported lattice input."""


# ---------------------------------------------------------------- helpers

def _as_int_matrix(rows) -> tuple[tuple[int, ...], ...]:
    out = []
    for row in rows:
        r = []
        for v in row:
            if isinstance(v, bool):
                raise LatticeError("boolean entry in integer matrix")
            if isinstance(v, Fraction):
                if v.denominator != 1:
                    raise LatticeError(f"non-integral entry {v}")
                v = v.numerator
            elif isinstance(v, float):
                if not v.is_integer():
                    raise LatticeError(f"non-integral entry {v}")
                v = int(v)
            else:
                try:
                    iv = int(v)
                except (TypeError, ValueError):
                    raise LatticeError(f"non-integral entry {v!r}") from None
                if iv != v:
                    raise LatticeError(f"non-integral entry {v!r}")
                v = iv
            r.append(v)
        out.append(tuple(r))
    n = len(out)
    if any(len(r) != n for r in out):
        raise LatticeError("matrix is not square")
    return tuple(out)


def int_det(a: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free Bareiss elimination."""
    m = [list(map(int, r)) for r in a]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rational_inverse(a: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Exact inverse by Gauss-Jordan over the rationals."""
    n = len(a)
    m = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            raise LatticeError("matrix is singular")
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [v * inv for v in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


def mat_vec(a, x):
    return [sum(r[j] * x[j] for j in range(len(x))) for r in a]


def mat_mul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(r, c)) for c in bt] for r in a]


def transpose(a):
    return [list(c) for c in zip(*a)]


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


# ---------------------------------------------------------- Smith form

def smith_normal_form(a: Sequence[Sequence[int]]):
    """Smith normal form with unimodular transforms.

    Parameters
    ----------
    a : square integer matrix

    Returns
    -------
    diag : list of int
        Nonnegative diagonal ``d_1 | d_2 | ... | d_n``.
    U, V : list of lists
        Unimodular integer matrices with ``U @ a @ V == diag(d)``.
    """
    A = [list(map(int, r)) for r in a]
    n = len(A)
    U = identity(n)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (A, V):
            for r in M:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        if k:
            A[dst] = [x + k * y for x, y in zip(A[dst], A[src])]
            U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        if k:
            for M in (A, V):
                for r in M:
                    r[dst] += k * r[src]

    for t in range(n):
        # pick the smallest nonzero entry of the trailing block as pivot
        while True:
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return [A[i][i] for i in range(n)], U, V
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = A[t][t]
            done = True
            for i in range(t + 1, n):
                q = A[i][t] // p
                add_row(i, t, -q)
                if A[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = A[t][j] // p
                add_col(j, t, -q)
                if A[t][j]:
                    done = False
            if not done:
                continue
            # the pivot must divide the whole trailing block
            bad = next(((i, j) for i in range(t + 1, n) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return [A[i][i] for i in range(n)], U, V


# ------------------------------------------------------------- lattices

@dataclass(frozen=True)
class Lattice:
    """Integral lattice given by its Gram matrix.

    Parameters
    ----------
    gram : square integer matrix ``<alpha_i, alpha_j>``
    labels : optional basis names
    """

    gram: tuple
    labels: tuple | None = None

    def __post_init__(self):
        g = _as_int_matrix(self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        for i in range(n):
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise LatticeError("gram matrix is not symmetric")
        for k in range(1, n + 1):
            if int_det([r[:k] for r in g[:k]]) <= 0:
                raise LatticeError("gram matrix is not positive definite")
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != n:
                raise LatticeError("one label per basis vector required")
            object.__setattr__(self, "labels", labels)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def det(self) -> int:
        return int_det(self.gram)

    def pair(self, x, y):
        """Bilinear form on coordinate vectors (exact for int/Fraction input)."""
        g = self.gram
        return sum(x[i] * g[i][j] * y[j] for i in range(len(g)) for j in range(len(g)))

    def norm(self, x):
        return self.pair(x, x)

    def gram_inverse(self) -> list[list[Fraction]]:
        return rational_inverse(self.gram)

    def as_array(self):
        import numpy as np
        return np.array(self.gram, dtype=float).reshape(self.rank, self.rank)


def is_even(lat: Lattice) -> bool:
    """True iff every basis vector has even norm (enough by bilinearity)."""
    return all(lat.gram[i][i] % 2 == 0 and lat.gram[i][i] >= 0 for i in range(lat.rank))


def direct_sum(a: Lattice, b: Lattice) -> Lattice:
    n, m = a.rank, b.rank
    g = [list(r) + [0] * m for r in a.gram] + [[0] * n + list(r) for r in b.gram]
    labels = None
    if a.labels is not None and b.labels is not None:
        labels = a.labels + b.labels
    return Lattice(tuple(map(tuple, g)), labels)


# --------------------------------------------------------- Dynkin data

_FAMILY_MIN = {"A": 1, "D": 4}


@dataclass(frozen=True)
class DynkinSpec:
    """A list of ``(family, rank)`` components, e.g. ``A2+D4+E8``."""

    components: tuple

    def __post_init__(self):
        comps = tuple((str(f).upper(), int(r)) for f, r in self.components)
        if not comps:
            raise LatticeError("empty Dynkin specification")
        for fam, r in comps:
            if fam in _FAMILY_MIN:
                if r < _FAMILY_MIN[fam]:
                    raise LatticeError(f"{fam}{r}: rank below {_FAMILY_MIN[fam]}")
            elif fam == "E":
                if r not in (6, 7, 8):
                    raise LatticeError(f"E{r}: only E6, E7, E8 exist")
            else:
                raise LatticeError(f"unknown family {fam!r}")
        object.__setattr__(self, "components", comps)

    @classmethod
    def parse(cls, text: str) -> "DynkinSpec":
        parts = [p.strip() for p in text.split("+")]
        comps = []
        for p in parts:
            m = re.fullmatch(r"([A-Za-z])_?(\d+)", p)
            if not m:
                raise LatticeError(f"cannot parse Dynkin component {p!r}")
            comps.append((m.group(1), int(m.group(2))))
        return cls(tuple(comps))

    def __str__(self):
        return "+".join(f"{f}{r}" for f, r in self.components)


def dynkin_edges(family: str, n: int) -> list[tuple[int, int]]:
    """Edges of a connected Dynkin diagram, 0-based node indices.

    Node order: A_n is a chain.  D_n is the chain ``0..n-2`` with both
    ``n-2`` and ``n-1`` attached to ``n-3``.  E_n is the chain ``0..n-2``
    with node ``n-1`` attached to node 2 (the third node of the chain).
    """
    if family == "A":
        return [(i, i + 1) for i in range(n - 1)]
    if family == "D":
        return [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    if family == "E":
        return [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)]
    raise LatticeError(f"unknown family {family!r}")


def cartan_matrix(family: str, n: int) -> list[list[int]]:
    DynkinSpec(((family, n),))
    c = [[2 * int(i == j) for j in range(n)] for i in range(n)]
    for i, j in dynkin_edges(family.upper(), n):
        c[i][j] = c[j][i] = -1
    return c


def build_cartan(spec: DynkinSpec | str) -> Lattice:
    """Root lattice of a (possibly reducible) simply-laced Dynkin diagram."""
    if isinstance(spec, str):
        spec = DynkinSpec.parse(spec)
    out = None
    for fam, r in spec.components:
        labels = tuple(f"{fam}{r}.{k + 1}" for k in range(r))
        lat = Lattice(tuple(map(tuple, cartan_matrix(fam, r))), labels)
        out = lat if out is None else direct_sum(out, lat)
    return out


# ------------------------------------------------- discriminant group

@dataclass(frozen=True, eq=False)
class DiscriminantGroup:
    """``L*/L`` as ``Z/d_1 x ... x Z/d_k`` via the Smith decomposition.

    An element of ``L*`` with basis coordinates ``x`` has integer image
    ``y = G x``.  Its Smith coordinates are ``(U y)_i mod d_i`` for the
    positions whose diagonal entry exceeds 1.
    """

    lattice: Lattice
    diagonal: tuple
    U: tuple
    V: tuple
    positions: tuple = field(init=False)

    def __post_init__(self):
        pos = tuple(i for i, d in enumerate(self.diagonal) if d > 1)
        object.__setattr__(self, "positions", pos)
        U_inv = rational_inverse(self.U)
        object.__setattr__(self, "_U_inv", [[int(v) for v in r] for r in U_inv])
        object.__setattr__(self, "_g_inv", self.lattice.gram_inverse())

    @property
    def invariant_factors(self) -> list[int]:
        return [self.diagonal[i] for i in self.positions]

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    def _coords_from_y(self, y) -> tuple:
        uy = mat_vec(self.U, y)
        return tuple(uy[i] % self.diagonal[i] for i in self.positions)

    def sector(self, x) -> "Sector":
        """Canonical sector of a rational (dual) vector in basis coordinates."""
        x = [Fraction(v) for v in x]
        if len(x) != self.lattice.rank:
            raise LatticeError("vector length does not match lattice rank")
        y = mat_vec(self.lattice.gram, x)
        if any(v.denominator != 1 for v in y):
            raise LatticeError("vector is not in the dual lattice")
        return self.from_coords(self._coords_from_y([int(v) for v in y]))

    def from_coords(self, c) -> "Sector":
        c = tuple(int(ci) % d for ci, d in zip(c, self.invariant_factors))
        if len(c) != len(self.positions):
            raise LatticeError("wrong number of Smith coordinates")
        full = [0] * self.lattice.rank
        for ci, i in zip(c, self.positions):
            full[i] = ci
        y = mat_vec(self._U_inv, full)
        x = tuple(mat_vec(self._g_inv, y))
        return Sector(self, c, x)

    def zero(self) -> "Sector":
        return self.from_coords([0] * len(self.positions))

    def generators(self) -> list["Sector"]:
        out = []
        for k in range(len(self.positions)):
            c = [0] * len(self.positions)
            c[k] = 1
            out.append(self.from_coords(c))
        return out

    def elements(self) -> list["Sector"]:
        """All elements, in lexicographic order of Smith coordinates."""
        import itertools
        return [self.from_coords(c) for c in
                itertools.product(*[range(d) for d in self.invariant_factors])]


def discriminant_group(lat: Lattice) -> DiscriminantGroup:
    if lat.rank and lat.det() == 0:
        raise LatticeError("degenerate gram matrix")
    d, U, V = smith_normal_form(lat.gram)
    return DiscriminantGroup(lat, tuple(d), tuple(map(tuple, U)), tuple(map(tuple, V)))


def mu_index(lat: Lattice) -> int:
    return discriminant_group(lat).order


@dataclass(frozen=True, eq=False)
class Sector:
    """Element of ``L*/L`` with its canonical coset representative."""

    group: DiscriminantGroup
    coords: tuple
    coset_rep: tuple

    def __eq__(self, other):
        return (isinstance(other, Sector) and other.group is self.group
                and other.coords == self.coords)

    def __hash__(self):
        return hash((id(self.group), self.coords))

    def __repr__(self):
        rep = ";".join(str(v) for v in self.coset_rep)
        return f"Sector[{rep}]"

    @property
    def norm(self) -> Fraction:
        return self.group.lattice.norm(self.coset_rep)

    @property
    def order(self) -> int:
        o = 1
        for c, d in zip(self.coords, self.group.invariant_factors):
            o = math.lcm(o, d // math.gcd(c, d))
        return o

    def canonicalize(self) -> "Sector":
        return self.group.sector(self.coset_rep)


def canonicalize(group: DiscriminantGroup, x) -> Sector:
    return group.sector(x)


def fuse(a: Sector, b: Sector) -> Sector:
    """Fusion ``[a] x [b] = [a + b]``."""
    if a.group is not b.group:
        raise LatticeError("sectors belong to different lattices")
    return a.group.from_coords([x + y for x, y in zip(a.coords, b.coords)])


def inverse(a: Sector) -> Sector:
    return a.group.from_coords([-x for x in a.coords])


def conformal_spin(s: Sector) -> tuple[Fraction, complex]:
    """Spin exponent ``<l,l> mod 2`` and the phase ``exp(i pi <l,l>)``.

    The exponent is independent of the representative on an even lattice.
    """
    e = s.norm % 2
    return e, exact_phase(e / 2)


def exact_phase(turns: Fraction) -> complex:
    """``exp(2 pi i turns)`` with exact values at multiples of 1/4."""
    t = Fraction(turns) % 1
    table = {Fraction(0): 1 + 0j, Fraction(1, 4): 1j, Fraction(1, 2): -1 + 0j,
             Fraction(3, 4): -1j}
    if t in table:
        return table[t]
    a = 2 * math.pi * float(t)
    return complex(math.cos(a), math.sin(a))


def sector_table(group: DiscriminantGroup) -> list[dict]:
    rows = []
    for s in group.elements():
        e, _ = conformal_spin(s)
        rows.append({"coset_rep": ";".join(str(v) for v in s.coset_rep),
                     "order": s.order, "spin_exponent": str(e)})
    return rows


# ---------------------------------------------------- short vectors

def _ldl(gram):
    """Rational ``q`` with ``x.G.x = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2``."""
    n = len(gram)
    q = [[Fraction(v) for v in r] for r in gram]
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def short_vectors(lat: Lattice, bound, exact_norm=None) -> list[tuple[int, ...]]:
    """All nonzero ``x`` in ``Z^n`` with ``x.G.x <= bound`` (Fincke-Pohst).

    Parameters
    ----------
    bound : int or Fraction
    exact_norm : optional value; keep only vectors of this norm.

    Notes
    -----
    Interval endpoints are found in floating point with some slack and
    every coordinate is then admitted by an exact rational test, so the
    result does not depend on rounding.
    """
    n = lat.rank
    bound = Fraction(bound)
    if n == 0:
        return []
    q = _ldl(lat.gram)
    x = [0] * n
    out = []

    def rec(i, budget):
        c = -sum(q[i][j] * x[j] for j in range(i + 1, n))
        r = math.sqrt(max(float(budget / q[i][i]), 0.0))
        lo = math.floor(float(c) - r) - 1
        hi = math.ceil(float(c) + r) + 1
        for v in range(lo, hi + 1):
            used = q[i][i] * (v - c) ** 2
            if used > budget:
                continue
            x[i] = v
            if i == 0:
                out.append(tuple(x))
            else:
                rec(i - 1, budget - used)
        x[i] = 0

    rec(n - 1, bound)
    res = [v for v in out if any(v)]
    if exact_norm is not None:
        res = [v for v in res if lat.norm(v) == exact_norm]
    return sorted(res)


def enumerate_roots(lat: Lattice) -> list[tuple[int, ...]]:
    """All lattice vectors of norm 2."""
    if not is_even(lat):
        raise LatticeError("root enumeration expects an even lattice")
    return short_vectors(lat, 2, exact_norm=2)


# ------------------------------------------------- extensions, symmetries

def sublattice_extension_group(sub: Lattice, over: Lattice, B) -> list[Sector]:
    """The subgroup ``Q/L`` of ``L*/L`` for a full-rank inclusion ``L ⊂ Q``.

    Parameters
    ----------
    sub : the lattice L
    over : the even overlattice Q
    B : integer matrix whose columns are the basis of L written in the
        basis of Q, so that ``gram_L = B^T gram_Q B``.

    Returns
    -------
    list of Sector
        The elements of ``Q/L`` as sectors of L, closed under fusion.
    """
    B = [list(map(int, r)) for r in _as_int_matrix(B)]
    n = sub.rank
    if over.rank != n or len(B) != n:
        raise LatticeError("inclusion must be full rank")
    if not is_even(over):
        raise LatticeError("overlattice is not even")
    d = int_det(B)
    if d == 0:
        raise LatticeError("inclusion matrix is not full rank")
    if mat_mul(mat_mul(transpose(B), over.gram), B) != [list(r) for r in sub.gram]:
        raise LatticeError("B^T gram_Q B does not reproduce gram_L")
    grp = discriminant_group(sub)
    Binv = rational_inverse(B)
    gens = [grp.sector([Binv[i][j] for i in range(n)]) for j in range(n)]
    elems = {grp.zero()}
    frontier = list(elems)
    while frontier:
        nxt = []
        for s in frontier:
            for g in gens:
                t = fuse(s, g)
                if t not in elems:
                    elems.add(t)
                    nxt.append(t)
        frontier = nxt
    if len(elems) != abs(d):
        raise LatticeError("group order differs from the index |det B|")
    return sorted(elems, key=lambda s: s.coords)


def is_lattice_automorphism(lat: Lattice, R) -> bool:
    """True iff R is unimodular and ``R^T G R == G``."""
    R = [list(r) for r in _as_int_matrix(R)]
    if len(R) != lat.rank:
        raise LatticeError("shape mismatch")
    if abs(int_det(R)) != 1:
        return False
    return mat_mul(mat_mul(transpose(R), lat.gram), R) == [list(r) for r in lat.gram]


def integer_vectors_in_box(n: int, radius: int) -> Iterable[tuple[int, ...]]:
    import itertools
    return itertools.product(range(-radius, radius + 1), repeat=n)
