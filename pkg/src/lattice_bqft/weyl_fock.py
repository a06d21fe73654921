"""Coherent-state calculus for Weyl operators on a finite mode space.

One-particle vectors have coordinates ``c[k-1, i]`` for modes ``k = 1..K``
and basis directions ``i``.  The inner product is
``(f, h) = sum_k k conj(c_k)^T G d_k``, antilinear in the first slot.
A loop with modes ``f_k`` maps to ``c_k = conj(f_k)``; this keeps the map
complex linear and makes ``Im(f, h)`` the loop form ``omega``.

Exponential vectors are handled in closed form:
``(e^a, e^b) = exp((a, b))`` and
``W(f) e^h = exp(-|f|^2/2 - (f, h)) e^{f+h}``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class ModeMismatch(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class OneParticleVector:
    coords: np.ndarray
    gram: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coords", np.asarray(self.coords, dtype=complex))
        object.__setattr__(self, "gram", np.asarray(self.gram, dtype=float))
        if self.coords.ndim != 2 or self.coords.shape[1] != self.gram.shape[0]:
            raise ModeMismatch("coordinates must have shape (K, rank)")

    @property
    def shape(self):
        return self.coords.shape

    def _same(self, other):
        if self.shape != other.shape or not np.array_equal(self.gram, other.gram):
            raise ModeMismatch("vectors live on different mode spaces")

    def inner(self, other: "OneParticleVector") -> complex:
        self._same(other)
        k = np.arange(1, self.shape[0] + 1)
        return complex(np.sum(k * np.einsum("ki,ij,kj->k", np.conj(self.coords), self.gram, other.coords)))

    def norm2(self) -> float:
        return self.inner(self).real

    def __add__(self, other):
        self._same(other)
        return OneParticleVector(self.coords + other.coords, self.gram)

    def __neg__(self):
        return OneParticleVector(-self.coords, self.gram)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s: complex):
        return OneParticleVector(s * self.coords, self.gram)

    @classmethod
    def zero(cls, K: int, gram):
        gram = np.asarray(gram, dtype=float)
        return cls(np.zeros((K, gram.shape[0])), gram)

    @classmethod
    def from_loop(cls, loop) -> "OneParticleVector":
        return cls(np.conj(loop.modes), loop.gram)

    def flat(self) -> np.ndarray:
        return self.coords.ravel()


def omega(f: OneParticleVector, h: OneParticleVector) -> float:
    return f.inner(h).imag


@dataclass(frozen=True, eq=False)
class CoherentTerm:
    """``scalar * e^label``; the scalar is kept as its logarithm."""

    log_scalar: complex
    label: OneParticleVector

    @property
    def scalar(self) -> complex:
        return complex(np.exp(self.log_scalar))

    @classmethod
    def vacuum(cls, K: int, gram) -> "CoherentTerm":
        return cls(0j, OneParticleVector.zero(K, gram))

    @classmethod
    def exp(cls, h: OneParticleVector, scalar: complex = 1.0) -> "CoherentTerm":
        return cls(complex(np.log(complex(scalar))), h)


def coherent_inner(s: CoherentTerm, t: CoherentTerm) -> complex:
    """``(c e^a, d e^b) = conj(c) d exp((a, b))``."""
    return complex(np.exp(np.conj(s.log_scalar) + t.log_scalar + s.label.inner(t.label)))


def weyl_apply(f: OneParticleVector, t: CoherentTerm) -> CoherentTerm:
    f._same(t.label)
    return CoherentTerm(t.log_scalar - 0.5 * f.norm2() - f.inner(t.label), f + t.label)


def gamma_apply(U, t: CoherentTerm, check: bool = True, tol: float = 1e-12) -> CoherentTerm:
    """Second quantization ``Gamma(U) e^h = e^{Uh}`` for a matrix ``U``."""
    U = np.asarray(U, dtype=complex)
    if check:
        d = unitarity_defect(U, t.label)
        if d > tol:
            raise ValueError(f"operator is not unitary (defect {d:.2e})")
    h = t.label
    return CoherentTerm(t.log_scalar, OneParticleVector((U @ h.flat()).reshape(h.shape), h.gram))


def _weight(h: OneParticleVector) -> np.ndarray:
    K = h.shape[0]
    return np.kron(np.diag(np.arange(1, K + 1, dtype=float)), h.gram)


def unitarity_defect(U, like: OneParticleVector) -> float:
    """``max |U^dag W U - W|`` relative to ``max |W|``, W the weight matrix."""
    W = _weight(like)
    U = np.asarray(U, dtype=complex)
    if U.shape != W.shape:
        raise ModeMismatch("operator shape does not match the mode space")
    return float(np.max(np.abs(U.conj().T @ W @ U - W)) / np.max(np.abs(W)))


def adjoint(U, like: OneParticleVector) -> np.ndarray:
    W = _weight(like)
    return np.linalg.solve(W, np.asarray(U).conj().T @ W)


def apply_operator(U, h: OneParticleVector) -> OneParticleVector:
    return OneParticleVector((np.asarray(U) @ h.flat()).reshape(h.shape), h.gram)


def _matrix(test_set, op) -> np.ndarray:
    out = np.empty((len(test_set), len(test_set)), dtype=complex)
    for j, b in enumerate(test_set):
        terms = op(b)
        for i, a in enumerate(test_set):
            out[i, j] = sum(coherent_inner(a, t) for t in terms)
    return out


def verify_weyl_relation(f: OneParticleVector, g: OneParticleVector, test_set,
                         drop_phase: bool = False) -> float:
    """max over the test set of ``|(e^a, W(f)W(g) e^b) - e^{-i omega}(e^a, W(f+g) e^b)|``."""
    ph = 1.0 if drop_phase else np.exp(-1j * omega(f, g))
    lhs = _matrix(test_set, lambda b: [weyl_apply(f, weyl_apply(g, b))])
    w = f + g
    rhs = _matrix(test_set, lambda b: [weyl_apply(w, b)])
    return float(np.max(np.abs(lhs - ph * rhs)))


def verify_bogoliubov(U, f: OneParticleVector, test_set) -> float:
    """``Gamma(U) W(f) Gamma(U)^* = W(Uf)`` on matrix elements."""
    U = np.asarray(U, dtype=complex)
    Uinv = adjoint(U, f)

    def lhs_op(b):
        t = gamma_apply(Uinv, b, check=False)
        t = weyl_apply(f, t)
        return [gamma_apply(U, t, check=False)]

    Uf = apply_operator(U, f)
    lhs = _matrix(test_set, lhs_op)
    rhs = _matrix(test_set, lambda b: [weyl_apply(Uf, b)])
    return float(np.max(np.abs(lhs - rhs)))


def vacuum_expectation(f: OneParticleVector) -> complex:
    return complex(np.exp(-0.5 * f.norm2()))


def vacuum_expectation_via_action(f: OneParticleVector) -> complex:
    vac = CoherentTerm(0j, OneParticleVector.zero(f.shape[0], f.gram))
    return coherent_inner(vac, weyl_apply(f, vac))


def coherent_gram(test_set) -> np.ndarray:
    return np.array([[coherent_inner(a, b) for b in test_set] for a in test_set])


# ------------------------------------------------------------ generators

def random_vector(rng, K: int, gram, scale: float = 1.0) -> OneParticleVector:
    """Random vector normalized to ``|f| = scale``."""
    gram = np.asarray(gram, dtype=float)
    n = gram.shape[0]
    k = np.arange(1, K + 1)[:, None]
    c = (rng.normal(size=(K, n)) + 1j * rng.normal(size=(K, n))) / k
    v = OneParticleVector(c, gram)
    return v.scale(scale / np.sqrt(v.norm2()))


def random_test_set(rng, size: int, K: int, gram, scale: float = 0.5):
    return [CoherentTerm(0j, random_vector(rng, K, gram, scale * rng.uniform(0.2, 1.0)))
            for _ in range(size)]


def mode_multiplier(phases, like: OneParticleVector) -> np.ndarray:
    """Diagonal operator multiplying mode ``k`` by ``phases[k-1]``."""
    K, n = like.shape
    return np.kron(np.diag(np.asarray(phases, dtype=complex)), np.eye(n))


def basis_rotation(R, like: OneParticleVector) -> np.ndarray:
    """``1 (x) R`` for a matrix with ``R^dag G R = G``."""
    K = like.shape[0]
    return np.kron(np.eye(K), np.asarray(R, dtype=complex))


def random_gram_orthogonal(rng, gram) -> np.ndarray:
    """Random real ``R`` with ``R^T G R = G`` (``G^{-1/2} O G^{1/2}``)."""
    gram = np.asarray(gram, dtype=float)
    n = gram.shape[0]
    w, v = np.linalg.eigh(gram)
    s = v @ np.diag(np.sqrt(w)) @ v.T
    si = v @ np.diag(1 / np.sqrt(w)) @ v.T
    q, r = np.linalg.qr(rng.normal(size=(n, n)))
    q = q @ np.diag(np.sign(np.diag(r)))
    return si @ q @ s


def random_unitary(rng, like: OneParticleVector) -> np.ndarray:
    """Product of a random mode-phase multiplier and a Gram-orthogonal rotation."""
    K = like.shape[0]
    ph = np.exp(1j * rng.uniform(0, 2 * np.pi, K))
    return mode_multiplier(ph, like) @ basis_rotation(random_gram_orthogonal(rng, like.gram), like)
