"""Torsion-valued group cochains and the explicit cocycles on S3, S4 and G_n.

A k-cochain takes values in the N-th roots of unity and is stored as an
exponent table mod N, so the (multiplicative) coboundary becomes an additive
operation on exponents.  Cochains on small groups are dense numpy tables;
pullbacks to large groups stay lazy and are evaluated by composition.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Optional

import numpy as np

from . import groups as gr
from .cyclotomic import DEFAULT_N
from .groups import FiniteGroup, GroupHom, Subgroup
from .modlinalg import solve_mod

DENSE_LIMIT = 400_000
EXHAUSTIVE_LIMIT = 5_000_000
DEFAULT_SAMPLES = 1_000_000


class CochainError(ValueError):
    pass


class TorsionCochain:
    """A map ``G^k → μ_N`` stored as exponents mod ``N``.

    Exactly one of ``table`` (dense array of shape ``(|G|,) * k``) or ``func``
    (vectorized callable on index arrays) backs the cochain.  Calling the
    cochain on ``k`` index arrays returns the exponents, broadcasting like
    numpy.
    """

    def __init__(self, group: FiniteGroup, degree: int, table=None, func=None,
                 modulus: int = DEFAULT_N, pullback=None):
        if (table is None) == (func is None):
            raise CochainError("give exactly one of table or func")
        self.group = group
        self.degree = degree
        self.modulus = modulus
        self._func = func
        self._table = None
        self.pullback = pullback  # (base cochain, hom) for lazy pullbacks
        if table is not None:
            table = np.asarray(table, dtype=np.int64) % modulus
            if table.shape != (group.order,) * degree:
                raise CochainError(f"table shape {table.shape} does not match degree {degree}")
            table.setflags(write=False)
            self._table = table

    def __repr__(self):
        kind = "dense" if self.is_dense else "lazy"
        return f"<TorsionCochain deg={self.degree} N={self.modulus} on {self.group!r} ({kind})>"

    @property
    def is_dense(self):
        return self._table is not None

    def __call__(self, *args):
        if len(args) != self.degree:
            raise CochainError(f"expected {self.degree} arguments")
        if self._table is not None:
            if self.degree == 0:
                return self._table[()]
            return self._table[tuple(np.asarray(a) for a in args)]
        return np.asarray(self._func(*args), dtype=np.int64) % self.modulus

    @property
    def table(self) -> np.ndarray:
        if self._table is None:
            size = self.group.order ** self.degree
            if size > DENSE_LIMIT:
                raise CochainError(f"refusing to materialize {size} entries")
            self._table = _evaluate_all(self)
            self._table.setflags(write=False)
        return self._table

    def equals(self, other: "TorsionCochain") -> bool:
        if not same_group(other.group, self.group) or other.degree != self.degree:
            return False
        return bool(np.array_equal(_scale(self, other.modulus), _scale(other, self.modulus)))

    def is_trivial(self):
        return not np.any(self.table)

    def is_normalized(self):
        G, k = self.group, self.degree
        if k == 0:
            return True
        t = self.table
        for i in range(k):
            idx = [slice(None)] * k
            idx[i] = G.id
            if np.any(t[tuple(idx)]):
                return False
        return True

    def to_dict(self, group_ref=None):
        d = {"group_ref": group_ref or self.group.name, "degree": self.degree,
             "modulus": self.modulus}
        if self.pullback is not None and not self.is_dense:
            base, hom = self.pullback
            d["pullback"] = {"base": base.to_dict(), "along": hom.map.tolist()}
        else:
            d["table"] = self.table.ravel().tolist()
        return d


def same_group(a: FiniteGroup, b: FiniteGroup) -> bool:
    return a is b or np.array_equal(a.mul, b.mul)


def _scale(c, other_modulus):
    lcm = np.lcm(c.modulus, other_modulus)
    return c.table * (lcm // c.modulus)


def _evaluate_all(c):
    if c.degree == 0:
        return np.asarray(c._func(), dtype=np.int64) % c.modulus
    grids = np.indices((c.group.order,) * c.degree)
    return np.asarray(c._func(*grids), dtype=np.int64) % c.modulus


def _maybe_dense(c: TorsionCochain) -> TorsionCochain:
    if not c.is_dense and c.group.order ** c.degree <= DENSE_LIMIT:
        c.table
    return c


def from_function(G, degree, func, modulus=DEFAULT_N) -> TorsionCochain:
    return _maybe_dense(TorsionCochain(G, degree, func=func, modulus=modulus))


def trivial(G: FiniteGroup, degree: int, modulus=DEFAULT_N) -> TorsionCochain:
    return TorsionCochain(G, degree, table=np.zeros((G.order,) * degree, dtype=np.int64),
                          modulus=modulus)


# -- coboundary calculus ---------------------------------------------------

def coboundary(c: TorsionCochain) -> TorsionCochain:
    """``(dc)(g_1..g_{k+1}) = c(g_2..) Π_i c(.., g_i g_{i+1}, ..)^{(-1)^i} c(g_1..g_k)^{(-1)^{k+1}}``."""
    k = c.degree
    if k not in (0, 1, 2, 3):
        raise CochainError(f"coboundary supports degrees 0..3, got {k}")
    mul = c.group.mul

    def dc(*g):
        if k == 0:
            return np.zeros(np.broadcast(*g).shape, dtype=np.int64)
        out = c(*g[1:]).astype(np.int64)
        for i in range(1, k + 1):
            args = g[:i - 1] + (mul[g[i - 1], g[i]],) + g[i + 1:]
            out = out + (-1) ** i * c(*args)
        return out + (-1) ** (k + 1) * c(*g[:k])

    return from_function(c.group, k + 1, dc, c.modulus)


def random_tuples(G: FiniteGroup, k: int, samples: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    return tuple(rng.integers(0, G.order, size=samples) for _ in range(k))


def check_identity(c: TorsionCochain, samples: Optional[int] = None, seed: int = 0):
    """Count violations of ``dc = 1``; returns ``(checked, violations)``.

    Exhaustive whenever ``|G|^{k+1}`` is small enough, else ``samples``
    random tuples from a seeded generator.
    """
    G, k = c.group, c.degree + 1
    d = coboundary(c)
    if samples is None and G.order ** k <= EXHAUSTIVE_LIMIT:
        t = d.table if d.is_dense else _evaluate_all(d)
        return t.size, int(np.count_nonzero(t))
    samples = samples or DEFAULT_SAMPLES
    vals = d(*random_tuples(G, k, samples, seed))
    return samples, int(np.count_nonzero(vals))


def is_cocycle(c: TorsionCochain, samples: Optional[int] = None, seed: int = 0) -> bool:
    return check_identity(c, samples, seed)[1] == 0


def power(c: TorsionCochain, l: int) -> TorsionCochain:
    if c.pullback is not None and not c.is_dense:
        base, hom = c.pullback
        return pullback(power(base, l), hom)
    if c.is_dense:
        return TorsionCochain(c.group, c.degree, table=c.table * l, modulus=c.modulus)
    return TorsionCochain(c.group, c.degree, func=lambda *a: c(*a) * l, modulus=c.modulus)


def add(a: TorsionCochain, b: TorsionCochain) -> TorsionCochain:
    """Pointwise product of the represented cochains."""
    if a.group is not b.group or a.degree != b.degree or a.modulus != b.modulus:
        raise CochainError("incompatible cochains")
    return from_function(a.group, a.degree, lambda *g: a(*g) + b(*g), a.modulus)


def negate(a: TorsionCochain) -> TorsionCochain:
    return from_function(a.group, a.degree, lambda *g: -a(*g), a.modulus)


# -- inflation / restriction ------------------------------------------------

def pullback(c: TorsionCochain, hom: GroupHom) -> TorsionCochain:
    if hom.target is not c.group:
        raise CochainError("homomorphism target is not the cochain's group")
    m = hom.map
    out = TorsionCochain(hom.source, c.degree, func=lambda *g: c(*(m[x] for x in g)),
                         modulus=c.modulus, pullback=(c, hom))
    return _maybe_dense(out)


def inflate(c: TorsionCochain, q: GroupHom) -> TorsionCochain:
    """Precompose with a surjection ``q: G → Q``."""
    if len(np.unique(q.map)) != q.target.order:
        raise CochainError("inflation needs a surjective map")
    return pullback(c, q)


def restrict(c: TorsionCochain, S: Subgroup) -> TorsionCochain:
    """Restriction to ``S``, as a cochain on ``S.as_group()``."""
    if S.parent is not c.group:
        raise CochainError("subgroup of a different group")
    return pullback(c, S.inclusion())


# -- the explicit cochains ---------------------------------------------------

def _require(N, m):
    if N % m:
        raise CochainError(f"modulus {N} is not divisible by {m}")


def alpha(x1, x2, x3, N: int = DEFAULT_N):
    """Exponent of ``exp(2πi (x1 + x2 - [x1+x2]_3) x3 / 9)``; arguments are arbitrary integers."""
    _require(N, 9)
    x1, x2, x3 = (np.asarray(x, dtype=np.int64) for x in (x1, x2, x3))
    s = x1 + x2
    return (N // 9) * (((s - s % 3) * x3) % 9)


def _s3_coords(g):
    x, y = np.divmod(np.asarray(g), 2)
    return x, y


def _s4_coords(g):
    xy, z = np.divmod(np.asarray(g), 4)
    x, y = np.divmod(xy, 2)
    return x, y, z


def _sign(y):
    return 1 - 2 * (np.asarray(y) % 2)


def omega0(N: int = DEFAULT_N) -> TorsionCochain:
    """The 3-cocycle ``α(x1, (-1)^{y1} x2, (-1)^{y1+y2} x3) (-1)^{y1 y2 y3}`` on S3."""
    _require(N, 18)
    S3 = gr.symmetric_group(3)

    def w(g1, g2, g3):
        (x1, y1), (x2, y2), (x3, y3) = _s3_coords(g1), _s3_coords(g2), _s3_coords(g3)
        a = alpha(x1, _sign(y1) * x2, _sign(y1 + y2) * x3, N)
        return a + (N // 2) * (y1 * y2 * y3)

    return from_function(S3, 3, w, N)


@lru_cache(maxsize=None)
def s4_H() -> Subgroup:
    """``H = ⟨(1234)⟩ ≅ Z4`` inside S4, certified by its generator."""
    S4 = gr.symmetric_group(4)
    c = gr.s4_index(0, 0, 1)
    H = gr.subgroup_generated(S4, [c])
    return Subgroup(S4, H.members, cyclic_cert=[(c, 4)])


_F0 = np.array([0, 0, 1, 1], dtype=np.int64)  # f0((1234)^z) = (-1)^{[z >= 2]}


def f0_f_xi(N: int = DEFAULT_N):
    """``(f0 on H, f on S4, ξ on S4)`` with ``ξ(g1, g2) = f(g2)^{ε(g1)}``.

    ``f(σ h) = f0(h) (-1)^{ε(σ) ε(h)}`` for ``σ = (123)^x (13)^y`` and
    ``h = (1234)^z``; on this normal form ``ε(σ) = y`` and ``ε(h) = z mod 2``.
    """
    _require(N, 2)
    S4 = gr.symmetric_group(4)
    H = s4_H()
    half = N // 2
    zs = np.array([gr.s4_normal_form(h)[2] for h in H.members])
    f0 = TorsionCochain(H.as_group(), 1, table=half * _F0[zs], modulus=N)

    x, y, z = _s4_coords(np.arange(24))
    f = TorsionCochain(S4, 1, table=half * ((_F0[z] + y * (z % 2)) % 2), modulus=N)
    eps = gr.S4_EPSILON
    xi = TorsionCochain(S4, 2, table=eps[:, None] * f.table[None, :], modulus=N)
    return f0, f, xi


def inflated_omega0(N: int = DEFAULT_N) -> TorsionCochain:
    return inflate(omega0(N), gr.quotient_pi())


def adapted_omega(N: int = DEFAULT_N) -> TorsionCochain:
    """``ω = inf ω0 · dξ``, a 3-cocycle on S4 trivial on ``S4 × S4 × H``."""
    _, _, xi = f0_f_xi(N)
    return add(inflated_omega0(N), coboundary(xi))


def adapted_omega_closed(N: int = DEFAULT_N) -> TorsionCochain:
    """The same cocycle from its closed formula in normal-form coordinates."""
    _, f, _ = f0_f_xi(N)
    S4 = gr.symmetric_group(4)
    eps = gr.S4_EPSILON
    half = N // 2

    def w(g1, g2, g3):
        (x1, y1, z1), (x2, y2, z2), (x3, y3, z3) = _s4_coords(g1), _s4_coords(g2), _s4_coords(g3)
        a = alpha(x1, _sign(y1 + z1) * x2, _sign(y1 + y2 + z1 + z2) * x3, N)
        sigma3 = gr.s4_index(x3, y3, 0)
        inner = f(S4.mul[g2, sigma3]) + f(g2) + half * ((eps[g2] * eps[sigma3]) % 2)
        return a + eps[g1] * inner

    return from_function(S4, 3, w, N)


def omega_n(data: gr.GnData, N: int = DEFAULT_N) -> TorsionCochain:
    """Pullback of the adapted S4 cocycle along the projection ``G_n → S4``."""
    return pullback(adapted_omega(N), data.p)


# -- Schur multipliers -------------------------------------------------------

def adaptedness_check(omega: TorsionCochain, H: Subgroup, samples: Optional[int] = None,
                      seed: int = 0):
    """Count triples ``(g1, g2, h)`` with ``ω(g1, g2, h) ≠ 1``; returns ``(checked, violations)``."""
    G = omega.group
    hs = H.members
    if samples is None and G.order ** 2 * len(hs) <= EXHAUSTIVE_LIMIT:
        g2 = np.arange(G.order)[:, None]
        bad = 0
        for g1 in range(G.order):
            bad += int(np.count_nonzero(omega(g1, g2, hs[None, :])))
        return G.order ** 2 * len(hs), bad
    samples = samples or DEFAULT_SAMPLES
    rng = np.random.default_rng(seed)
    g1 = rng.integers(0, G.order, samples)
    g2 = rng.integers(0, G.order, samples)
    h = hs[rng.integers(0, len(hs), samples)]
    return samples, int(np.count_nonzero(omega(g1, g2, h)))


def is_adapted(omega, H, samples=None, seed=0) -> bool:
    return adaptedness_check(omega, H, samples, seed)[1] == 0


def schur_multiplier(omega: TorsionCochain, g: int, H: Subgroup, general: bool = False):
    """The 2-cocycle governing projective characters of ``H^g = H ∩ gHg⁻¹``.

    Returns ``(H^g, cochain on H^g.as_group())``.  By default this is the
    shortcut ``ω_g(h, k) = ω(h, k, g)``, valid for adapted ω; with
    ``general=True`` the full formula (with ψ = 1)
    ``ω(h,k,g) ω(h,kg,k⁻¹◁g) / ω(hkg, k⁻¹◁g, h⁻¹◁g)`` is used instead.
    """
    G = omega.group
    Hg = gr.stabilizer(G, H, g)
    if len(Hg) == len(H):
        Hg = H
    hs = Hg.members
    h, k = hs[:, None], hs[None, :]
    if not general:
        table = omega(h, k, g)
    else:
        mul, inv = G.mul, G.inv
        gi = inv[g]
        kg = mul[k, g]
        kinv_g = mul[mul[gi, inv[k]], g]
        hinv_g = mul[mul[gi, inv[h]], g]
        hkg = mul[mul[h, k], g]
        table = omega(h, k, g) + omega(h, kg, kinv_g) - omega(hkg, kinv_g, hinv_g)
    table = np.broadcast_to(table, (len(hs), len(hs)))
    return Hg, TorsionCochain(Hg.as_group(), 2, table=table, modulus=omega.modulus)


# -- deciding triviality -------------------------------------------------------

def coboundary_matrix(G: FiniteGroup, k: int) -> np.ndarray:
    """Integer matrix of ``d: C^k → C^{k+1}`` in lexicographic tuple order."""
    n = G.order
    rows = n ** (k + 1)
    cols = n ** k
    A = np.zeros((rows, cols), dtype=np.int64)
    g = np.indices((n,) * (k + 1)).reshape(k + 1, -1)
    r = np.arange(rows)

    def col(args):
        if k == 0:
            return np.zeros(rows, dtype=np.int64)
        return np.ravel_multi_index(tuple(args), (n,) * k)

    np.add.at(A, (r, col(g[1:])), 1)
    for i in range(1, k + 1):
        args = list(g[:i - 1]) + [G.mul[g[i - 1], g[i]]] + list(g[i + 1:])
        np.add.at(A, (r, col(args)), (-1) ** i)
    np.add.at(A, (r, col(g[:k])), (-1) ** (k + 1))
    return A


def solve_coboundary(c: TorsionCochain) -> Optional[TorsionCochain]:
    """A cochain ``x`` of one lower degree with ``dx = c``, or ``None``.

    The solution is computed over Z/N with all free variables set to zero,
    so it is deterministic.  Solvability over μ_N can be stricter than
    triviality in C^× cohomology when the degree-k cohomology has N-divisible
    torsion; the multipliers and cocycles used here are all ±1-valued
    coboundaries or live on groups where the two notions agree.
    """
    k = c.degree - 1
    if k < 0:
        raise CochainError("degree-0 cochains are never coboundaries")
    G = c.group
    A = coboundary_matrix(G, k)
    x = solve_mod(A, c.table.ravel(), c.modulus)
    if x is None:
        return None
    return TorsionCochain(G, k, table=x.reshape((G.order,) * k), modulus=c.modulus)
