"""Smooth compactly supported profiles.

``bump(x) = exp(-1/(1 - x^2))`` on ``|x| < 1`` and zero elsewhere.  The
step is its normalized primitive, so it is exactly 0 for ``x <= -1`` and
exactly 1 for ``x >= 1``.
"""
import numpy as np

_U, _W = np.polynomial.legendre.leggauss(96)


def bump(x):
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    m = np.abs(x) < 1
    out[m] = np.exp(-1.0 / (1.0 - x[m] ** 2))
    return out


def _partial(x):
    # integral of bump over [-1, x] for x in (-1, 0]
    a = (x + 1.0) / 2.0
    s = -1.0 + a[:, None] * (_U[None, :] + 1.0)
    return a * (bump(s) @ _W)


BUMP_INTEGRAL = float(2 * _partial(np.array([0.0]))[0])


def step(x):
    """Normalized primitive of :func:`bump`, rising from 0 to 1 on (-1, 1)."""
    x = np.asarray(x, dtype=float)
    flat = x.ravel()
    out = np.where(flat >= 1.0, 1.0, 0.0)
    left = (flat > -1.0) & (flat <= 0.0)
    right = (flat > 0.0) & (flat < 1.0)
    if left.any():
        out[left] = _partial(flat[left]) / BUMP_INTEGRAL
    if right.any():
        out[right] = 1.0 - _partial(-flat[right]) / BUMP_INTEGRAL
    return out.reshape(x.shape)


def unit_bump(x, center=0.0, width=1.0):
    """Bump on ``(center - width, center + width)`` with unit integral."""
    return bump((np.asarray(x, dtype=float) - center) / width) / (BUMP_INTEGRAL * width)
