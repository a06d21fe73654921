"""Parsers for the small text formats (lattice specs, inner functions, run configs).

All formats are UTF-8 ``key = value`` lines; ``#`` starts a comment and
``;`` may separate entries on one line.  See ``docs/formats.md``.
"""
from __future__ import annotations

import ast
import math
import re
from dataclasses import dataclass, field, replace

from .inner_functions import SymmetricInnerFunction
from .lattice_core import DynkinSpec, Lattice, LatticeError, build_cartan


class SpecError(ValueError):
    """Malformed input file."""


def _entries(text: str) -> list[tuple[str, str]]:
    """Split into ``(key, value)`` pairs; brackets may span lines."""
    chunks = []
    buf = ""
    depth = 0
    for raw in text.splitlines():
        line = raw.split("#", 1)[0]
        for piece in re.split(r";(?![^\[]*\])", line):
            if not piece.strip() and depth == 0:
                continue
            buf = f"{buf} {piece}" if buf else piece
            depth = buf.count("[") - buf.count("]")
            if depth < 0:
                raise SpecError(f"unbalanced brackets near {piece.strip()!r}")
            if depth == 0:
                chunks.append(buf.strip())
                buf = ""
    if buf.strip():
        raise SpecError("unterminated bracket")
    out = []
    for c in chunks:
        key, eq, val = c.partition("=")
        if not eq or not key.strip():
            raise SpecError(f"expected 'key = value', got {c!r}")
        out.append((key.strip().lower(), val.strip()))
    return out


def _unquote(v: str) -> str:
    if len(v) >= 2 and v[0] == v[-1] and v[0] in "'\"":
        return v[1:-1]
    return v


# ------------------------------------------------------------- lattices

def parse_lattice_spec(text: str) -> Lattice:
    """``dynkin = "A2+D4"`` or ``gram = [[2,-1],[-1,2]]`` (exactly one)."""
    entries = dict()
    for k, v in _entries(text):
        if k in entries:
            raise SpecError(f"duplicate key {k!r}")
        entries[k] = v
    unknown = set(entries) - {"dynkin", "gram", "labels"}
    if unknown:
        raise SpecError(f"unknown keys: {', '.join(sorted(unknown))}")
    if ("dynkin" in entries) == ("gram" in entries):
        raise SpecError("give exactly one of 'dynkin' or 'gram'")
    try:
        if "dynkin" in entries:
            return build_cartan(DynkinSpec.parse(_unquote(entries["dynkin"])))
        try:
            rows = ast.literal_eval(entries["gram"])
        except (ValueError, SyntaxError):
            raise SpecError(f"cannot parse gram matrix {entries['gram']!r}") from None
        if not isinstance(rows, (list, tuple)) or not all(isinstance(r, (list, tuple)) for r in rows):
            raise SpecError("gram must be a list of rows")
        labels = None
        if "labels" in entries:
            labels = [s.strip() for s in _unquote(entries["labels"]).split(",")]
        if any(not isinstance(v, int) or isinstance(v, bool) for r in rows for v in r):
            raise SpecError("gram entries must be integers")
        return Lattice(tuple(tuple(r) for r in rows), labels)
    except LatticeError as exc:
        raise SpecError(str(exc)) from None


# ------------------------------------------------------- inner functions

def parse_complex(tok: str) -> complex:
    """``0+1i``, ``2i``, ``i``, ``-0.5-2i`` or a real number."""
    t = tok.strip().replace(" ", "").lower().replace("j", "i")
    if not t:
        raise SpecError("empty number")
    if t.endswith("i"):
        body = t[:-1]
        # split real and imaginary parts at the last sign not after an exponent
        m = re.match(r"^(.*?)([+-]?)([\d.]*(?:e[+-]?\d+)?)$", body)
        if m is None:
            raise SpecError(f"bad complex number {tok!r}")
        re_part, sign, mag = m.groups()
        if re_part and re_part[-1] in "e":
            raise SpecError(f"bad complex number {tok!r}")
        try:
            im = float(mag) if mag else 1.0
            re_v = float(re_part) if re_part else 0.0
        except ValueError:
            raise SpecError(f"bad complex number {tok!r}") from None
        return complex(re_v, -im if sign == "-" else im)
    try:
        return complex(float(t), 0.0)
    except ValueError:
        raise SpecError(f"bad number {tok!r}") from None


def _list(v: str) -> list[str]:
    v = v.strip()
    if not (v.startswith("[") and v.endswith("]")):
        raise SpecError(f"expected a bracketed list, got {v!r}")
    inner = v[1:-1].strip()
    return [p for p in (s.strip() for s in inner.split(",")) if p] if inner else []


def parse_inner_spec(text: str) -> SymmetricInnerFunction:
    zeros, axis, t, sign = [], [], 0.0, 1
    seen = set()
    for k, v in _entries(text):
        if k in seen:
            raise SpecError(f"duplicate key {k!r}")
        seen.add(k)
        if k == "zeros":
            zeros = [parse_complex(s) for s in _list(v)]
        elif k == "axis_zeros":
            axis = [parse_complex(s).real for s in _list(v)]
        elif k == "t":
            try:
                t = float(v)
            except ValueError:
                raise SpecError(f"bad value for t: {v!r}") from None
        elif k == "sign":
            if v.strip() not in ("+1", "1", "-1"):
                raise SpecError("sign must be +1 or -1")
            sign = int(v)
        else:
            raise SpecError(f"unknown key {k!r}")
    try:
        return SymmetricInnerFunction(tuple(zeros), t, sign, tuple(axis))
    except ValueError as exc:
        raise SpecError(str(exc)) from None


# ---------------------------------------------------------- run configs

DEFAULT_TOLERANCES = {
    "epsilon": 0.0, "klein": 0.0, "weyl": 1e-10, "bogoliubov": 1e-10,
    "cocycle": 1e-9, "lgrel": 1e-9, "locality": 1e-6, "inner": 1e-12,
    "holder": 0.0, "semigroup": 1e-4, "a1": 1e-6, "a2": 1e-6, "a3": 1e-6,
    "ext": 1e-8, "orbifold": 1e-8,
}


@dataclass(frozen=True)
class RunConfig:
    N: int = 2 ** 14
    X: float = 64.0
    K: int = 256
    seed: int = 0
    out: str | None = None
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))

    def __post_init__(self):
        if self.N < 8 or self.N & (self.N - 1):
            raise SpecError("N must be a power of two >= 8")
        if self.K < 1:
            raise SpecError("K must be positive")
        if self.N < 4 * self.K:
            raise SpecError(f"N = {self.N} must be at least 4K = {4 * self.K}")
        if self.X <= 0:
            raise SpecError("X must be positive")
        for k, v in self.tolerances.items():
            if k not in DEFAULT_TOLERANCES:
                raise SpecError(f"unknown tolerance class {k!r}")
            if v < 0 or math.isnan(v):
                raise SpecError(f"tolerance for {k} must be nonnegative")

    def with_tolerances(self, overrides: dict) -> "RunConfig":
        tol = dict(self.tolerances)
        tol.update(overrides)
        return replace(self, tolerances=tol)


def parse_tolerance(item: str) -> tuple[str, float]:
    key, eq, val = item.partition("=")
    if not eq:
        raise SpecError(f"expected class=value, got {item!r}")
    key = key.strip().lower()
    if key not in DEFAULT_TOLERANCES:
        raise SpecError(f"unknown tolerance class {key!r}")
    try:
        v = float(val)
    except ValueError:
        raise SpecError(f"bad tolerance value {val!r}") from None
    if not v > 0:
        raise SpecError("tolerance overrides must be positive")
    return key, v


def parse_config(text: str) -> RunConfig:
    kw = {}
    tol = dict(DEFAULT_TOLERANCES)
    for k, v in _entries(text):
        v = _unquote(v)
        try:
            if k in ("n", "k", "seed"):
                iv = int(v)
                kw[{"n": "N", "k": "K", "seed": "seed"}[k]] = iv
            elif k == "x":
                kw["X"] = float(v)
            elif k == "out":
                kw["out"] = v
            elif k.startswith("tolerance."):
                name, val = parse_tolerance(f"{k.split('.', 1)[1]}={v}")
                tol[name] = val
            else:
                raise SpecError(f"unknown key {k!r}")
        except ValueError as exc:
            if isinstance(exc, SpecError):
                raise
            raise SpecError(f"bad value for {k}: {v!r}") from None
    return RunConfig(tolerances=tol, **kw)
