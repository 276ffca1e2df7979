"""Acceptance gate: one recorded PASS/FAIL line per criterion (see the terminal summary)."""
import time

import numpy as np
import pytest

from conftest import record
from neargroup import category as ca
from neargroup import cochains as co
from neargroup import groups as gr
from neargroup import invertibles as iv
from neargroup.cyclotomic import root_of_unity

PAIRS = [(n, l) for n in (1, 2, 3) for l in range(6)]
_CATS = {}


def categories():
    for key in PAIRS:
        if key not in _CATS:
            _CATS[key] = ca.near_group_category(*key)
    return _CATS


def gate(name, ok, detail=""):
    record(name, ok, detail)
    assert ok, f"{name}: {detail}"


def test_1_cocycle_verification():
    t = time.perf_counter()
    checked, bad = co.check_identity(co.omega0())
    dt = time.perf_counter() - t
    gate("1 cocycle verification", checked == 1296 and bad == 0 and dt < 1,
         f"{checked} quadruples, {bad} violations, {dt:.2f}s")


def test_2_cohomology_order():
    t = time.perf_counter()
    w0 = co.omega0()
    found = {l: co.solve_coboundary(co.power(w0, l)) for l in range(1, 7)}
    dt = time.perf_counter() - t
    ok6 = found[6] is not None and co.coboundary(found[6]).equals(co.power(w0, 6))
    ok = all(found[l] is None for l in range(1, 6)) and ok6 and dt < 10
    gate("2 cohomology order", ok, f"solvable at {[l for l, x in found.items() if x is not None]}, {dt:.2f}s")


def test_3_adaptedness():
    t = time.perf_counter()
    w = co.adapted_omega()
    checked, bad = co.adaptedness_check(w, co.s4_H())
    same = np.array_equal(w.table, co.adapted_omega_closed().table)
    dt = time.perf_counter() - t
    gate("3 adaptedness", checked == 24 * 24 * 4 and bad == 0 and same and dt < 5,
         f"{checked} triples, {bad} violations, closed formula equal={same}, {dt:.2f}s")


def test_4_simple_objects():
    problems = []
    t3 = 0.0
    for n, l in PAIRS:
        t = time.perf_counter()
        cat = ca.near_group_category(n, l)
        ss = cat.simples
        dt = time.perf_counter() - t
        if n == 3:
            t3 += dt
        _CATS[n, l] = cat
        dims = sorted(s.fpdim for s in ss)
        want = [1] * 2 ** (2 * n + 1) + [2 ** (n + 1)]
        if dims != want or sum(d * d for d in dims) != cat.G.order:
            problems.append((n, l))
        if n == 1 and len(ss) != 9:
            problems.append((n, l))
    gate("4 simple objects", not problems and t3 < 30,
         f"failures {problems}, n=3 total {t3:.2f}s")


def test_5_schur_multiplier():
    f0, _, _ = co.f0_f_xi()
    _, wg = co.schur_multiplier(co.adapted_omega(), gr.s4_element("(12)(34)"), co.s4_H())
    ok = np.array_equal(wg.table, co.coboundary(f0).table)
    mismatches = 0
    cosets = 0
    for n in (1, 2, 3):
        d = gr.build_Gn(n)
        w = co.omega_n(d)
        for g in gr.double_cosets(d.group, d.H).reps:
            _, a = co.schur_multiplier(w, g, d.H)
            _, b = co.schur_multiplier(w, g, d.H, general=True)
            cosets += 1
            mismatches += not np.array_equal(a.table, b.table)
    gate("5 schur multiplier", ok and mismatches == 0,
         f"ω_γ1 = df0: {ok}, general vs shortcut mismatches {mismatches}/{cosets}")


def test_6_indicators():
    t = time.perf_counter()
    bad = []
    for (n, l), cat in categories().items():
        rho = cat.rho()
        if rho.rep != gr.build_Gn(n).gamma2 or rho.char_index != 0:
            bad.append((n, l))
        nu2, nu3 = ca.fs_indicator(cat, rho, 2), ca.fs_indicator(cat, rho, 3)
        if nu2 != (-1) ** l or nu3 != 2 ** n * root_of_unity(-12 * l):
            bad.append((n, l))
    dt = time.perf_counter() - t
    gate("6 indicators", not bad and dt < 60, f"mismatches {bad}, {dt:.2f}s")


def test_7_invertible_groups():
    bad = []
    t3 = 0.0
    for (n, l), cat in categories().items():
        t = time.perf_counter()
        row = iv.identify(cat, n)
        dt = time.perf_counter() - t
        if n == 3:
            t3 += dt
        model = iv.extraspecial_model(n, l % 2 == 1)
        ok = (row["order"] == 2 ** (2 * n + 1) and row["extraspecial"]
              and row["type"] == iv.extraspecial_type_name(n, l % 2 == 1)
              and row["involutions"] == iv.involution_count(model)
              and row["isomorphism_confirmed"] and row["other_type_excluded"])
        if not ok:
            bad.append((n, l))
    gate("7 invertible groups", not bad and t3 < 120, f"mismatches {bad}, n=3 total {t3:.2f}s")


def test_8_pairwise_inequivalence():
    bad = []
    for n in (1, 2, 3):
        cats = categories()
        tuples = []
        for l in range(6):
            cat = cats[n, l]
            rho = cat.rho()
            tuples.append((ca.fs_indicator(cat, rho, 2), ca.fs_indicator(cat, rho, 3)))
        if len(set(tuples)) != 6:
            bad.append(n)
    gate("8 pairwise inequivalence", not bad, f"collisions at n in {bad}")


def test_9_property_suites():
    fails = []
    rng = np.random.default_rng(0)
    S3 = gr.symmetric_group(3)
    for k in (0, 1, 2):
        c = co.TorsionCochain(S3, k, table=rng.integers(0, 36, (6,) * k))
        if not co.coboundary(co.coboundary(c)).is_trivial():
            fails.append(f"d∘d degree {k}")
    for (n, l), cat in categories().items():
        t = iv.compute_K(cat)
        if t.cocycle_defect() or t.character_defect():
            fails.append(f"ν cocycle {(n, l)}")
        if any(s.projective_defect() for s in cat.simples):
            fails.append(f"projective characters {(n, l)}")
        try:
            iv.build_extension(t)
        except iv.ExtensionError:
            fails.append(f"extension axioms {(n, l)}")
    for n in (1, 2, 3):
        d = gr.build_Gn(n)
        G = d.group
        w = co.omega_n(d)
        r = G.mul[d.gamma2, d.H.members]
        closed = np.zeros(len(r), dtype=np.int64)
        rj = np.full(len(r), G.id)
        for k in range(13):
            if not np.array_equal(ca.pi(r, -k, w), closed % 36):
                fails.append(f"π_(-{k}) n={n}")
            rj = G.mul[rj, G.inv[r]]
            closed -= w(r, rj, r)
    gate("9 property suites", not fails, f"failures {fails}")
