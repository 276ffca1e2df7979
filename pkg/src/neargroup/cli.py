"""Batch verification reports for the categories C_{n,l}.

Each subcommand prints one JSON document (or a TSV flattening) with result
rows and named pass/fail verdicts.  Exit status is 0 when every verdict
passes, 1 when any fails and 2 on usage errors.

Flags may also be given through environment variables ``NEARGROUP_<DEST>``
(``NEARGROUP_N``, ``NEARGROUP_L``, ``NEARGROUP_KMAX``, ``NEARGROUP_MODULUS``,
``NEARGROUP_SEED``, ``NEARGROUP_SAMPLES``, ``NEARGROUP_FORMAT``,
``NEARGROUP_OUT``); explicit flags win.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Optional

from . import category as ca
from . import cochains as co
from . import groups as gr
from . import invertibles as iv
from .cyclotomic import CycInt, root_of_unity

ENV_PREFIX = "NEARGROUP_"
DEFAULT_SEED = 42


class UsageError(ValueError):
    pass


def _cyc(x: CycInt) -> dict:
    z = x.approx()
    return {"exact": str(x), "approx": [round(z.real, 12) + 0.0, round(z.imag, 12) + 0.0]}


def _verdict(check: str, ok: bool, **detail) -> dict:
    return {"check": check, "pass": bool(ok), **detail}


def _report(command: str, params: dict, rows: list, verdicts: list) -> dict:
    return {"command": command, "parameters": params, "rows": rows, "verdicts": verdicts,
            "pass": all(v["pass"] for v in verdicts)}


def _validate(n=None, l=None, kmax=None, N=None):
    if n is not None and n not in (1, 2, 3):
        raise UsageError(f"--n must be 1, 2 or 3 (got {n})")
    if l is not None and l not in range(6):
        raise UsageError(f"--l must be in 0..5 (got {l})")
    if kmax is not None and not 1 <= kmax <= 12:
        raise UsageError(f"--kmax must be in 1..12 (got {kmax})")
    if N is not None and (N <= 0 or N % 36):
        raise UsageError(f"--N must be a positive multiple of 36 (got {N})")


def expected_nu2(l: int, N: int) -> CycInt:
    return CycInt.from_int((-1) ** l, N)


def expected_nu3(n: int, l: int, N: int) -> CycInt:
    return (2 ** n) * root_of_unity(-l * N // 3, N)


# -- commands ---------------------------------------------------------------------

def cmd_verify_cocycles(n: int, N: int = 36, seed: int = DEFAULT_SEED,
                        samples: Optional[int] = None) -> dict:
    _validate(n=n, N=N)
    verdicts = []
    w0 = co.omega0(N)
    checked, bad = co.check_identity(w0)
    verdicts.append(_verdict("d(omega0) = 1 on S3^4", bad == 0, checked=checked, violations=bad))

    w = co.adapted_omega(N)
    H = co.s4_H()
    checked, bad = co.adaptedness_check(w, H)
    verdicts.append(_verdict("omega(g1,g2,h) = 1 on S4xS4xH", bad == 0, checked=checked, violations=bad))
    closed = co.adapted_omega_closed(N)
    verdicts.append(_verdict("closed formula = inf(omega0)*d(xi) on S4^3", w.equals(closed),
                             checked=24 ** 3))
    checked, bad = co.check_identity(w)
    verdicts.append(_verdict("d(omega) = 1 on S4^4", bad == 0, checked=checked, violations=bad))

    trivial_at = [l for l in range(7) if co.solve_coboundary(co.power(w0, l)) is not None]
    verdicts.append(_verdict("[omega0^l] = 0 exactly for l in {0, 6}", trivial_at == [0, 6],
                             trivial_at=trivial_at))

    if n >= 2:
        data = gr.build_Gn(n)
        wn = co.omega_n(data, N)
        count = samples or co.DEFAULT_SAMPLES
        checked, bad = co.adaptedness_check(wn, data.H, samples=count, seed=seed)
        verdicts.append(_verdict(f"omega_{n} adapted for H_{n} (sampled)", bad == 0,
                                 checked=checked, violations=bad, seed=seed))
        checked, bad = co.check_identity(wn, samples=count, seed=seed)
        verdicts.append(_verdict(f"d(omega_{n}) = 1 (sampled)", bad == 0,
                                 checked=checked, violations=bad, seed=seed))
    return _report("verify-cocycles", {"n": n, "N": N, "seed": seed, "samples": samples}, [], verdicts)


def _character_summary(s: ca.SimpleObject) -> list:
    S = s.stabilizer
    if S.cyclic_cert is None:
        return []
    return [int(s.character[S.local(g)]) for g, _ in S.cyclic_cert]


def cmd_category(n: int, l: int, N: int = 36) -> dict:
    _validate(n=n, l=l, N=N)
    cat = ca.near_group_category(n, l, N)
    G = cat.G
    rows = []
    defects = 0
    for s in cat.simples:
        row = {"coset_rep": G.labels[s.rep], "fpdim": s.fpdim,
               "character_on_generators": _character_summary(s)}
        for k in (1, 2, 3):
            row[f"nu{k}"] = _cyc(ca.fs_indicator(cat, s, k))
        rows.append(row)
        defects += s.projective_defect()
    summary = ca.near_group_check(cat)
    verdicts = [
        _verdict("invertible count = 2^(2n+1)", summary.invertible_count == 2 ** (2 * n + 1),
                 value=summary.invertible_count),
        _verdict("FPdim(rho) = 2^(n+1)", summary.d == 2 ** (n + 1), value=summary.d),
        _verdict("multiplicity m = 2^n", summary.m == 2 ** n, value=summary.m),
        _verdict("global dimension = |G_n|", summary.global_dimension == G.order,
                 value=summary.global_dimension),
        _verdict("projective character identities", defects == 0, violations=defects),
    ]
    return _report("category", {"n": n, "l": l, "N": N}, rows, verdicts)


def cmd_indicators(n: int, l: int, kmax: int = 3, N: int = 36) -> dict:
    _validate(n=n, l=l, kmax=kmax, N=N)
    cat = ca.near_group_category(n, l, N)
    rho = ca.near_group_check(cat).rho
    values = {k: ca.fs_indicator(cat, rho, k) for k in range(1, kmax + 1)}
    rows = [{"k": k, "nu": _cyc(v)} for k, v in values.items()]
    verdicts = []
    if kmax >= 2:
        verdicts.append(_verdict("nu2(rho) = (-1)^l", values[2] == expected_nu2(l, N),
                                 value=str(values[2])))
    if kmax >= 3:
        verdicts.append(_verdict("nu3(rho) = 2^n exp(-2 pi i l/3)", values[3] == expected_nu3(n, l, N),
                                 value=str(values[3])))
    return _report("indicators", {"n": n, "l": l, "kmax": kmax, "N": N}, rows, verdicts)


def cmd_invertibles(n: int, l: int, N: int = 36) -> dict:
    _validate(n=n, l=l, N=N)
    cat = ca.near_group_category(n, l, N)
    twist = iv.compute_K(cat)
    ident = iv.identify(cat, n)
    expected = iv.extraspecial_type_name(n, bool(l % 2))
    row = {"n": n, "l": l, **ident}
    verdicts = [
        _verdict("|K| = 2^n", len(twist.K) == 2 ** n, value=len(twist.K)),
        _verdict("nu(s,t) are characters", twist.character_defect() == 0),
        _verdict("nu 2-cocycle identity on K^3", twist.cocycle_defect() == 0),
        _verdict("|Gamma| = 2^(2n+1)", ident["order"] == 2 ** (2 * n + 1), value=ident["order"]),
        _verdict("Gamma is extraspecial", ident["extraspecial"]),
        _verdict(f"Gamma is {expected}", ident["type"] == expected
                 and ident.get("isomorphism_confirmed", False)
                 and ident.get("other_type_excluded", False), value=ident["type"]),
    ]
    return _report("invertibles", {"n": n, "l": l, "N": N}, [row], verdicts)


def cmd_full(nmax: int = 3, N: int = 36) -> dict:
    _validate(n=nmax, N=N)
    rows, verdicts = [], []
    for n in range(1, nmax + 1):
        pairs = []
        for l in range(6):
            cat = ca.near_group_category(n, l, N)
            summary = ca.near_group_check(cat)
            nu2 = ca.fs_indicator(cat, summary.rho, 2)
            nu3 = ca.fs_indicator(cat, summary.rho, 3)
            ident = iv.identify(cat, n)
            expected = iv.extraspecial_type_name(n, bool(l % 2))
            ok = (nu2 == expected_nu2(l, N) and nu3 == expected_nu3(n, l, N)
                  and summary.invertible_count == 2 ** (2 * n + 1) and summary.d == 2 ** (n + 1)
                  and summary.m == 2 ** n and ident["extraspecial"] and ident["type"] == expected
                  and ident["isomorphism_confirmed"] and ident["other_type_excluded"])
            rows.append({"n": n, "l": l, "invertibles": summary.invertible_count, "d": summary.d,
                         "m": summary.m, "nu2": _cyc(nu2), "nu3": _cyc(nu3),
                         "gamma_order": ident["order"], "gamma_type": ident["type"],
                         "involutions": ident["involutions"]})
            verdicts.append(_verdict(f"C_{{{n},{l}}} matches closed forms", ok))
            pairs.append((nu2, nu3))
        verdicts.append(_verdict(f"n={n}: (nu2, nu3) pairwise distinct over l", len(set(pairs)) == 6))
    return _report("full", {"nmax": nmax, "N": N}, rows, verdicts)


# -- output -------------------------------------------------------------------------

def _flat(d, prefix=""):
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flat(v, key + "."))
        elif isinstance(v, list):
            out[key] = json.dumps(v, ensure_ascii=False)
        else:
            out[key] = v
    return out


def to_tsv(report: dict) -> str:
    lines = []
    for section in ("rows", "verdicts"):
        items = [_flat(r) for r in report[section]]
        if not items:
            continue
        cols = []
        for it in items:
            cols += [c for c in it if c not in cols]
        lines.append("#" + section)
        lines.append("\t".join(cols))
        for it in items:
            lines.append("\t".join("" if it.get(c) is None else str(it.get(c)) for c in cols))
    return "\n".join(lines) + "\n"


def render(report: dict, fmt: str = "json") -> str:
    if fmt == "tsv":
        return to_tsv(report)
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


# -- entry point ----------------------------------------------------------------------

def _env(dest, cast, default):
    raw = os.environ.get(ENV_PREFIX + dest.upper())
    if raw is None:
        return default
    try:
        return cast(raw)
    except ValueError:
        raise UsageError(f"bad value for {ENV_PREFIX}{dest.upper()}: {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="neargroup", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, n=True, l=False, kmax=False, sampling=False):
        if n:
            sp.add_argument("--n", type=int, default=_env("n", int, 1))
        if l:
            sp.add_argument("--l", type=int, default=_env("l", int, 0))
        if kmax:
            sp.add_argument("--kmax", type=int, default=_env("kmax", int, 3))
        if sampling:
            sp.add_argument("--seed", type=int, default=_env("seed", int, DEFAULT_SEED))
            sp.add_argument("--samples", type=int, default=_env("samples", int, None))
        sp.add_argument("--N", dest="modulus", type=int, default=_env("modulus", int, 36))
        sp.add_argument("--format", choices=("json", "tsv"), default=_env("format", str, "json"))
        sp.add_argument("--out", default=_env("out", str, None))
        sp.add_argument("--timing", action="store_true", help="add wall-clock runtime to the report")

    common(sub.add_parser("verify-cocycles", help="cocycle, adaptedness and cohomology checks"),
           sampling=True)
    common(sub.add_parser("category", help="simple objects of C_{n,l}"), l=True)
    common(sub.add_parser("indicators", help="Frobenius-Schur indicators of rho"), l=True, kmax=True)
    common(sub.add_parser("invertibles", help="the group of invertible objects"), l=True)
    full = sub.add_parser("full", help="all (n, l) up to --nmax with closed-form cross-checks")
    full.add_argument("--nmax", type=int, default=_env("nmax", int, 3))
    common(full, n=False)
    return p


def run(args) -> dict:
    N = args.modulus
    if args.command == "verify-cocycles":
        return cmd_verify_cocycles(args.n, N, args.seed, args.samples)
    if args.command == "category":
        return cmd_category(args.n, args.l, N)
    if args.command == "indicators":
        return cmd_indicators(args.n, args.l, args.kmax, N)
    if args.command == "invertibles":
        return cmd_invertibles(args.n, args.l, N)
    return cmd_full(args.nmax, N)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        start = time.perf_counter()
        report = run(args)
    except UsageError as exc:
        print(f"neargroup: error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    if args.timing:
        report["runtime_seconds"] = round(time.perf_counter() - start, 3)
    text = render(report, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report["pass"] else 1


if __name__ == "__main__":
    sys.exit(main())
