"""Command line front door: ``lattice``, ``verify`` and ``inner``.

Exit codes: 0 everything passed, 1 a verification failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import inner_functions as inf
from .lattice_core import (DynkinSpec, LatticeError, build_cartan, discriminant_group,
                           enumerate_roots, is_even, sector_table)
from .specfiles import (RunConfig, SpecError, parse_config, parse_inner_spec,
                        parse_lattice_spec, parse_tolerance)
from .verification import report_csv, report_text, run_suite


class InputError(Exception):
    pass


def spin_phase_label(e: Fraction) -> str:
    """``exp(i pi e)`` as a string; quarter turns print as 1, i, -1, -i."""
    named = {Fraction(0): "1", Fraction(1, 2): "i", Fraction(1): "-1", Fraction(3, 2): "-i"}
    return named.get(e % 2, f"exp(i*pi*{e % 2})")


def _write(out_dir, name, text):
    path = Path(out_dir)
    path.mkdir(parents=True, exist_ok=True)
    (path / name).write_text(text, encoding="utf-8")
    return path / name


# ------------------------------------------------------------- lattice

def cmd_lattice(args) -> int:
    try:
        if args.dynkin:
            lat = build_cartan(DynkinSpec.parse(args.dynkin))
        else:
            try:
                text = Path(args.gram_file).read_text(encoding="utf-8")
            except OSError as exc:
                raise InputError(f"cannot read {args.gram_file}: {exc.strerror}") from None
            lat = parse_lattice_spec(text)
    except (LatticeError, SpecError) as exc:
        raise InputError(str(exc)) from None
    even = is_even(lat)
    print("gram:")
    for row in lat.gram:
        print("  " + " ".join(f"{v:3d}" for v in row))
    print(f"rank: {lat.rank}")
    print(f"det: {lat.det()}")
    print(f"even: {'yes' if even else 'no'}")
    grp = discriminant_group(lat)
    print(f"mu_index: {grp.order}")
    inv = grp.invariant_factors
    print("discriminant factors: " + (" x ".join(f"Z{d}" for d in inv) if inv else "trivial"))
    print(f"roots: {len(enumerate_roots(lat))}")
    if grp.order > 4096:
        print("sector table: omitted (more than 4096 sectors)")
        return 0
    rows = sector_table(grp)
    csv_lines = ["coset_rep,order,spin_exponent"]
    csv_lines += [f"{r['coset_rep']},{r['order']},{r['spin_exponent']}" for r in rows]
    csv = "\n".join(csv_lines) + "\n"
    print("sectors:")
    for r in rows:
        spin = spin_phase_label(Fraction(r["spin_exponent"])) if even else "n/a (odd lattice)"
        print(f"  [{r['coset_rep']}]  order={r['order']}  spin_exponent={r['spin_exponent']}"
              f"  spin={spin}")
    if args.out:
        p = _write(args.out, "sectors.csv", csv)
        print(f"wrote {p}")
    return 0


# -------------------------------------------------------------- verify

def _load_config(args) -> RunConfig:
    try:
        if args.config:
            try:
                text = Path(args.config).read_text(encoding="utf-8")
            except OSError as exc:
                raise InputError(f"cannot read {args.config}: {exc.strerror}") from None
            cfg = parse_config(text)
        else:
            cfg = RunConfig()
        over = dict(parse_tolerance(t) for t in args.tolerance or ())
        cfg = cfg.with_tolerances(over)
        kw = {}
        if args.seed is not None:
            kw["seed"] = args.seed
        if args.out is not None:
            kw["out"] = args.out
        if kw:
            cfg = replace(cfg, **kw)
    except SpecError as exc:
        raise InputError(str(exc)) from None
    return cfg


def cmd_verify(args) -> int:
    cfg = _load_config(args)
    results = run_suite(cfg)
    text = report_text(results)
    sys.stdout.write(text)
    failed = [r for r in results if not r.passed]
    if failed:
        sys.stdout.write("failing checks:\n")
        for r in failed:
            sys.stdout.write(f"  {r.check_id}  defect={r.defect:.3e} > tol={r.tolerance:.1e}\n")
    if cfg.out:
        _write(cfg.out, "report.txt", text)
        _write(cfg.out, "report.csv", report_csv(results))
    return 1 if failed else 0


# --------------------------------------------------------------- inner

def cmd_inner(args) -> int:
    src = args.spec
    path = Path(src)
    try:
        text = path.read_text(encoding="utf-8") if path.is_file() else src
        phi = parse_inner_spec(text)
    except SpecError as exc:
        raise InputError(str(exc)) from None
    rep = inf.check_symmetric_inner(phi)
    hol = inf.holder_check(phi)
    verdict = lambda ok: "PASS" if ok else "FAIL"  # noqa: E731
    print(f"symmetric: {verdict(rep.symmetric)}  (defect {rep.symmetry_defect:.3e})")
    print(f"inner: {verdict(rep.inner)}  (|phi|-1 defect {rep.unimodular_defect:.3e}, "
          f"sup on probe {rep.upper_bound:.6f})")
    est = f"integral {hol.estimate:.6e}" if hol.passed else "divergent"
    print(f"holder: {hol.verdict}  ({est}, {len(hol.increments)} shells)")
    p = np.linspace(-args.p_max, args.p_max, args.samples)
    v = np.asarray(phi(p.astype(complex)))
    csv = "p,re,im\n" + "".join(f"{a:.6f},{b.real:.15e},{b.imag:.15e}\n" for a, b in zip(p, v))
    if args.out:
        out = _write(args.out, "inner_values.csv", csv)
        print(f"wrote {out}")
    else:
        sys.stdout.write(csv)
    return 0 if (rep.symmetric and rep.inner and hol.passed) else 1


# ---------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lattice-bqft", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    lp = sub.add_parser("lattice", help="inspect an even lattice and its sectors")
    g = lp.add_mutually_exclusive_group(required=True)
    g.add_argument("--dynkin", help='ADE type, e.g. "A2+D4"')
    g.add_argument("--gram-file", help="lattice spec file")
    lp.add_argument("--out", help="directory for sectors.csv")
    lp.set_defaults(func=cmd_lattice)

    vp = sub.add_parser("verify", help="run the verification suite")
    vp.add_argument("--config", help="run config file (key = value)")
    vp.add_argument("--seed", type=int)
    vp.add_argument("--out", help="directory for report.txt and report.csv")
    vp.add_argument("--tolerance", action="append", metavar="CLASS=VALUE",
                    help="override a tolerance class; repeatable")
    vp.set_defaults(func=cmd_verify)

    ip = sub.add_parser("inner", help="check an inner-function spec")
    ip.add_argument("spec", help="spec file or inline text such as 'zeros=[i]'")
    ip.add_argument("--samples", type=int, default=21)
    ip.add_argument("--p-max", type=float, default=10.0)
    ip.add_argument("--out", help="directory for inner_values.csv")
    ip.set_defaults(func=cmd_inner)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
