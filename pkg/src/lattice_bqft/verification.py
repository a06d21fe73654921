"""The batch verification suite behind ``lattice-bqft verify``.

Each check yields a :class:`CheckResult`; the report is sorted by check id
so its bytes depend only on the configuration and the seed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import boundary_cocycle as bc
from . import discrete_cocycle as dc
from . import half_line as hl
from . import inner_functions as inf
from . import loop_algebra as la
from . import weyl_fock as wf
from .lattice_core import build_cartan
from .specfiles import RunConfig


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    params: str
    defect: float
    tolerance: float

    @property
    def tol_class(self) -> str:
        return self.check_id.split(".", 1)[0]

    @property
    def passed(self) -> bool:
        return self.defect <= self.tolerance

    def text(self) -> str:
        st = "PASS" if self.passed else "FAIL"
        return (f"{self.check_id}  [{self.params}]  defect={self.defect:.3e}  "
                f"tol={self.tolerance:.1e}  {st}")

    def csv(self) -> str:
        st = "PASS" if self.passed else "FAIL"
        return f"{self.check_id},{self.params},{self.defect:.6e},{self.tolerance:.1e},{st}"


def _rec(out, cfg, cid, params, defect):
    out.append(CheckResult(cid, params, float(defect), cfg.tolerances[cid.split(".", 1)[0]]))


# -------------------------------------------------------------- suites

def suite_discrete(cfg: RunConfig, out: list):
    for name in ("A1", "A2", "A3", "D4", "E6", "E7", "E8"):
        lat = build_cartan(name)
        rep = dc.verify_epsilon_identities(lat, trials=1000, rng_seed=cfg.seed)
        _rec(out, cfg, f"epsilon.{name}", "trials=1000", len(rep.failures))
    for name in ("A1", "A2", "A1+A1", "A3", "D4"):
        lat = build_cartan(name)
        for label, eta in (("eps", dc.EpsilonCocycle.of(lat).as_bicharacter()),
                           ("loop", dc.loop_bicharacter(lat))):
            rep = dc.klein_shift_check(dc.ChargeWindow(lat, 3, eta))
            _rec(out, cfg, f"klein.{name}.{label}", f"radius=3 checked={rep.checked}",
                 len(rep.failures))


def suite_weyl(cfg: RunConfig, out: list, trials: int = 100):
    rng = np.random.default_rng(cfg.seed)
    K = min(cfg.K, 32)
    G = build_cartan("A2").as_array()
    worst_w = worst_b = 0.0
    for _ in range(trials):
        f = wf.random_vector(rng, K, G, rng.uniform(0.3, 1.2))
        g = wf.random_vector(rng, K, G, rng.uniform(0.3, 1.2))
        ts = wf.random_test_set(rng, 10, K, G)
        worst_w = max(worst_w, wf.verify_weyl_relation(f, g, ts))
        U = wf.random_unitary(rng, f)
        worst_b = max(worst_b, wf.verify_bogoliubov(U, f, ts))
    _rec(out, cfg, "weyl.relation", f"K={K} trials={trials}", worst_w)
    _rec(out, cfg, "bogoliubov.covariance", f"K={K} trials={trials}", worst_b)


def suite_loops(cfg: RunConfig, out: list, trials: int = 100):
    rng = np.random.default_rng(cfg.seed + 1)
    lat = build_cartan("A2")
    G = lat.as_array()
    K = 64
    worst_c = worst_l = 0.0
    for _ in range(trials):
        f, g, h = (la.random_loop(rng, G, K, rng.integers(-2, 3, 2), lat) for _ in range(3))
        lhs = la.cocycle_phase(g, h) + la.cocycle_phase(f, g + h)
        rhs = la.cocycle_phase(f, g) + la.cocycle_phase(f + g, h)
        worst_c = max(worst_c, la.circle_distance(lhs, rhs))
        worst_l = max(worst_l, la.commutation_phase(f, g).defect)
    _rec(out, cfg, "cocycle.relation", f"K={K} trials={trials}", worst_c)
    _rec(out, cfg, "lgrel.phase", f"K={K} trials={trials}", worst_l)
    A1 = build_cartan("A1")
    K, N = cfg.K, cfg.N
    f = la.step_loop([1], 1.3, 0.9, K, N, lattice=A1)
    g = la.step_loop([1], 4.2, 1.2, K, N, lattice=A1)
    b = la.bump_loop([0.7], 4.0, 1.3, K, N, lattice=A1)
    _rec(out, cfg, "locality.steps", f"K={K} N={N}", la.locality_defect(f, g))
    _rec(out, cfg, "locality.step_bump", f"K={K} N={N}", la.locality_defect(f, b))


def _inner_cases():
    return {
        "singular_t1": (inf.singular(1.0), "PASS"),
        "blaschke_i": (inf.blaschke(1j), "PASS"),
        "blaschke_mixed": (inf.blaschke(0.5 + 2j) * inf.singular(0.3), "PASS"),
        "cayley": (inf.cayley(1.0), "FAIL"),
        "sign_minus": (inf.SymmetricInnerFunction(sign=-1), "FAIL"),
    }


def suite_inner(cfg: RunConfig, out: list):
    for name, (phi, expect) in _inner_cases().items():
        r = inf.check_symmetric_inner(phi)
        _rec(out, cfg, f"inner.{name}.symmetric", "grid=1e4 on [-100,100]", r.symmetry_defect)
        _rec(out, cfg, f"inner.{name}.unimodular", "grid=1e4 on [-100,100]", r.unimodular_defect)
        h = inf.holder_check(phi)
        _rec(out, cfg, f"holder.{name}", f"expect={expect} got={h.verdict}",
             0.0 if h.verdict == expect else 1.0)


def suite_half_line(cfg: RunConfig, out: list):
    grid = hl.LineGrid(cfg.X, cfg.N)
    f = hl.line_bump(grid, 0.8, 0.5)
    g = hl.line_bump(grid, -0.8, 0.5)
    for name, phi in (("blaschke_i", inf.blaschke(1j)),
                      ("blaschke_mixed", inf.blaschke(0.5 + 2j) * inf.singular(0.3))):
        d = hl.semigroup_defect(phi, f, g, band_tol=1e-3)
        _rec(out, cfg, f"semigroup.{name}", f"N={cfg.N} X={cfg.X:g}", d)


def _boundary_cases():
    A2 = build_cartan("A2")
    A11 = build_cartan("A1+A1")
    return {
        "A2.blaschke": inf.build_matrix(A2, [inf.blaschke(1j)]),
        "A2.identity": inf.build_matrix(A2, [inf.identity()]),
        "A1+A1.blaschke": inf.build_matrix(A11, [inf.blaschke(0.5 + 1j),
                                                 inf.blaschke(1j) * inf.singular(0.5)]),
    }


def suite_boundary(cfg: RunConfig, out: list):
    grid = hl.LineGrid(cfg.X, cfg.N)
    sd = bc.StepData(grid)
    rng = np.random.default_rng(cfg.seed + 2)
    for name, phi in _boundary_cases().items():
        data = bc.TwistedChargeData(phi, sd)
        n = phi.lattice.rank
        vec = 2 * math.pi * rng.uniform(-2, 2, n)
        f = hl.line_bump(grid, 2.5, 1.2, vec, phi.lattice.as_array())
        par = f"N={cfg.N} X={cfg.X:g}"
        _rec(out, cfg, f"a1.{name}", par, max(bc.verify_a1(data, i, f) for i in range(n)))
        _rec(out, cfg, f"a2.{name}", par, bc.verify_a2(data, 0, 1))
        _rec(out, cfg, f"a3.{name}", par + " t=0.1,0.5,1",
             max(bc.verify_a3(data, i, (0.1, 0.5, 1.0)) for i in range(n)))
        if name.startswith("A2"):
            rep = bc.verify_ext_cocycle(data, 3)
            _rec(out, cfg, f"ext.{name}", par + " |g_i|<=3", rep.defect)
            c = np.exp(1j * rng.uniform(0, 2 * math.pi))
            _rec(out, cfg, f"orbifold.{name}", par,
                 max(bc.verify_orbifold_commutation(data, i, True, c) for i in range(n)))


# (suite, tolerance class charged when the suite cannot run at this resolution)
SUITES = (
    (suite_discrete, "epsilon"), (suite_weyl, "weyl"), (suite_loops, "locality"),
    (suite_inner, "inner"), (suite_half_line, "semigroup"), (suite_boundary, "a1"),
)


def run_suite(cfg: RunConfig) -> list[CheckResult]:
    """All checks, sorted by id.

    A suite whose grid preconditions fail (support too close to the window
    edge, unresolved band) is reported as one failing ``<class>.grid`` line.
    """
    out: list[CheckResult] = []
    for s, cls in SUITES:
        part: list[CheckResult] = []
        try:
            s(cfg, part)
        except (hl.SupportError, hl.AliasingError, la.SupportError, ValueError) as exc:
            msg = str(exc).replace(",", ";")
            part.append(CheckResult(f"{cls}.grid", f"{s.__name__}: {msg}", math.inf,
                                    cfg.tolerances[cls]))
        out.extend(part)
    return sorted(out, key=lambda r: r.check_id)


def report_text(results) -> str:
    lines = [r.text() for r in results]
    n_fail = sum(not r.passed for r in results)
    lines.append(f"summary: {len(results) - n_fail} passed, {n_fail} failed")
    return "\n".join(lines) + "\n"


def report_csv(results) -> str:
    return "check_id,params,defect,tolerance,status\n" + "\n".join(r.csv() for r in results) + "\n"
