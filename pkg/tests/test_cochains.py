import itertools
import json

import numpy as np
import pytest

from neargroup import cochains as co
from neargroup import groups as gr


@pytest.fixture(scope="module")
def w0():
    return co.omega0()


@pytest.fixture(scope="module")
def fxi():
    return co.f0_f_xi()


def test_alpha_values():
    assert co.alpha(0, 0, 1) == 0
    assert co.alpha(1, 2, 1) == 12  # e^{2πi·3/9}
    assert co.alpha(2, 2, 2) == 24
    assert co.alpha(1, 1, 5) == 0
    # only x3 mod 9 and the carry matter
    for x1, x2, x3 in itertools.product(range(3), range(3), range(9)):
        carry = 3 if x1 + x2 >= 3 else 0
        assert co.alpha(x1, x2, x3) == (4 * carry * x3) % 36


def test_alpha_requires_divisible_modulus():
    with pytest.raises(co.CochainError):
        co.alpha(1, 1, 1, N=12)


def test_omega0_is_normalized_cocycle(w0):
    checked, bad = co.check_identity(w0)
    assert (checked, bad) == (1296, 0)
    t = w0.table
    assert not t[0].any() and not t[:, 0].any() and not t[:, :, 0].any()


def test_omega0_sign_part(w0):
    t13 = gr.s3_index(0, 1)
    assert w0(t13, t13, t13) == 18
    c = gr.s3_index(1, 0)
    assert w0(c, c, c) == 0 and w0(c, c, gr.s3_index(2, 0)) == 0


def test_dd_is_trivial():
    S3 = gr.symmetric_group(3)
    rng = np.random.default_rng(1)
    for k in (0, 1, 2):
        c = co.TorsionCochain(S3, k, table=rng.integers(0, 36, (6,) * k))
        dd = co.coboundary(co.coboundary(c))
        assert dd.is_trivial()


def test_dd_random_s4_two_cochain():
    S4 = gr.symmetric_group(4)
    c = co.TorsionCochain(S4, 2, table=np.random.default_rng(2).integers(0, 36, (24, 24)))
    assert co.check_identity(co.coboundary(c)) == (24 ** 4, 0)


def test_omega0_powers_cohomology_order(w0):
    solvable = [co.solve_coboundary(co.power(w0, l)) is not None for l in range(13)]
    assert solvable == [l % 6 == 0 for l in range(13)]
    x = co.solve_coboundary(co.power(w0, 6))
    assert co.coboundary(x).equals(co.power(w0, 6))


def test_inflation_formula(w0):
    inf = co.inflated_omega0()
    pi = gr.quotient_pi().map
    for g in itertools.product(range(24), repeat=3):
        if sum(g) % 7 == 0:
            assert inf(*g) == w0(pi[g[0]], pi[g[1]], pi[g[2]])
    assert co.is_cocycle(inf)
    back = co.restrict(inf, gr.Subgroup(gr.symmetric_group(4), gr.s3_embedding().map))
    assert np.array_equal(back.table, w0.table)


def test_inflation_needs_surjection(w0):
    emb = gr.s3_embedding()
    inc = gr.GroupHom(gr.symmetric_group(3), gr.symmetric_group(3), np.zeros(6, dtype=np.int64))
    with pytest.raises(co.CochainError):
        co.inflate(w0, inc)
    assert emb.is_homomorphism()


def test_f0_and_f(fxi):
    f0, f, xi = fxi
    S4 = gr.symmetric_group(4)
    H = co.s4_H()
    c = gr.s4_element("(1234)")
    # f0 on H = <(1234)>: 1, 1, -1, -1
    assert [f0.table[H.local(S4.power(c, z))] for z in range(4)] == [0, 0, 18, 18]
    assert np.array_equal(f.table[H.members], f0.table)
    eps = gr.S4_EPSILON
    for h1, h2 in itertools.product(H.members, repeat=2):
        lhs = f0.table[H.local(S4.mul[h1, h2])]
        assert (lhs - f0.table[H.local(h1)] - f0.table[H.local(h2)] - 18 * eps[h1] * eps[h2]) % 36 == 0
    # f(σh) = f0(h) (-1)^{ε(σ)ε(h)} on the factorization S4 = S3·H
    s3 = gr.s3_embedding().map
    seen = set()
    for sigma, h in itertools.product(s3, H.members):
        g = int(S4.mul[sigma, h])
        seen.add(g)
        assert (f.table[g] - f0.table[H.local(h)] - 18 * eps[sigma] * eps[h]) % 36 == 0
    assert len(seen) == 24
    assert np.array_equal(xi.table, (eps[:, None] * f.table[None, :]) % 36)


def test_f0_coboundary_is_character_square(fxi):
    f0, _, _ = fxi
    d = co.coboundary(f0)
    HG = f0.group
    eps = gr.S4_EPSILON[co.s4_H().members]
    # d f0(h, k) = (-1)^{ε(h)ε(k)}
    assert np.array_equal(d.table, 18 * np.outer(eps, eps))
    assert co.is_cocycle(d) and HG.order == 4


def test_adapted_omega(fxi):
    w = co.adapted_omega()
    assert co.is_cocycle(w)
    assert w.is_normalized()
    assert co.adaptedness_check(w, co.s4_H()) == (24 * 24 * 4, 0)
    assert w.equals(co.adapted_omega_closed())
    x = gr.s4_element("(14)")
    assert w(x, x, x) == 18


def test_power_commutes_with_inflation(w0):
    a = co.power(co.inflated_omega0(), 4)
    b = co.inflate(co.power(w0, 4), gr.quotient_pi())
    assert a.equals(b)
    w = co.adapted_omega()
    six = co.add(co.power(w, 2), co.power(w, 4))
    assert six.equals(co.power(w, 6))
    s3 = gr.Subgroup(gr.symmetric_group(4), gr.s3_embedding().map)
    assert co.solve_coboundary(co.restrict(six, s3)) is not None


@pytest.mark.parametrize("n", [1, 2, 3])
def test_omega_n(n):
    d = gr.build_Gn(n)
    w = co.omega_n(d)
    if n == 1:
        assert w.equals(co.adapted_omega()) and co.adaptedness_check(w, d.H)[1] == 0
    checked, bad = co.adaptedness_check(w, d.H, samples=None if n < 3 else 10 ** 6, seed=7)
    assert bad == 0 and checked >= min(d.group.order ** 2 * len(d.H), 10 ** 6)
    checked, bad = co.check_identity(w, samples=10 ** 5 if n > 1 else None, seed=3)
    assert bad == 0


def test_schur_multiplier_gamma1(fxi):
    f0, _, _ = fxi
    w = co.adapted_omega()
    g1 = gr.s4_element("(12)(34)")
    Hg, wg = co.schur_multiplier(w, g1, co.s4_H())
    assert Hg is co.s4_H()
    assert wg.equals(co.coboundary(f0))
    eta = co.solve_coboundary(wg)
    assert co.coboundary(eta).equals(wg)


@pytest.mark.parametrize("n", [1, 2])
def test_general_multiplier_matches_shortcut(n):
    d = gr.build_Gn(n)
    w = co.omega_n(d)
    for g in gr.double_cosets(d.group, d.H).reps:
        _, a = co.schur_multiplier(w, g, d.H)
        _, b = co.schur_multiplier(w, g, d.H, general=True)
        assert np.array_equal(a.table, b.table)


def test_lazy_cochains_refuse_materialization():
    w = co.omega_n(gr.build_Gn(2))
    assert not w.is_dense
    with pytest.raises(co.CochainError):
        w.table
    assert w(0, 0, 0) == 0


def test_cochain_serialization(w0):
    doc = json.loads(json.dumps(w0.to_dict()))
    assert doc["degree"] == 3 and doc["modulus"] == 36
    assert np.array_equal(np.array(doc["table"]).reshape(6, 6, 6), w0.table)
    lazy = co.omega_n(gr.build_Gn(2)).to_dict()
    assert "pullback" in lazy


def test_incompatible_operations():
    S3 = gr.symmetric_group(3)
    with pytest.raises(co.CochainError):
        co.add(co.trivial(S3, 2), co.trivial(S3, 3))
    with pytest.raises(co.CochainError):
        co.TorsionCochain(S3, 2, table=np.zeros((6, 5)))
