"""Group-theoretical categories C(G, ω, H, 1) with adapted ω.

Simple objects are pairs (HgH, χ) with χ a projective character of the
stabilizer H^g for the multiplier ω_g.  Only the cases where H^g is abelian
and ω_g is a coboundary (degree-one projective characters) are supported.
Frobenius-Schur indicators are evaluated exactly in Z[ζ_N].
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from . import cochains as co
from . import groups as gr
from .cyclotomic import CycInt
from .groups import FiniteGroup, GnData, Subgroup


class CategoryError(ValueError):
    pass


class UnsupportedConfiguration(CategoryError):
    pass


class NotNearGroup(CategoryError):
    pass


@dataclass(eq=False)
class SimpleObject:
    rep: int
    stabilizer: Subgroup
    character: np.ndarray
    fpdim: int
    coset: int
    multiplier: co.TorsionCochain = field(repr=False)
    char_index: int = 0

    def __eq__(self, other):
        return (isinstance(other, SimpleObject) and self.rep == other.rep
                and np.array_equal(self.character, other.character))

    def __hash__(self):
        return hash((self.rep, tuple(self.character.tolist())))

    @property
    def is_invertible(self):
        return self.fpdim == 1

    def label(self, G: FiniteGroup):
        return f"X[{G.labels[self.rep]}, {self.char_index}]"

    def projective_defect(self) -> int:
        """Number of pairs (h, k) violating ``χ(h)χ(k) = ω_g(h, k) χ(hk)``."""
        S = self.stabilizer.as_group()
        c = self.character
        lhs = c[:, None] + c[None, :]
        rhs = self.multiplier.table + c[S.mul]
        return int(np.count_nonzero((lhs - rhs) % self.multiplier.modulus))


@dataclass(frozen=True)
class NearGroupSummary:
    invertible_count: int
    rho: SimpleObject
    d: int
    m: int
    global_dimension: int


@dataclass(eq=False)
class GTCategory:
    G: FiniteGroup
    H: Subgroup
    omega: co.TorsionCochain
    l: Optional[int]
    cosets: gr.DoubleCosetDecomposition

    @property
    def N(self):
        return self.omega.modulus

    @cached_property
    def simples(self) -> list:
        return _simples(self)

    def rho(self) -> SimpleObject:
        return near_group_check(self).rho


def build_category(G: FiniteGroup, H: Subgroup, omega: co.TorsionCochain, l: Optional[int] = None,
                   reps: Optional[Sequence[int]] = None, samples: Optional[int] = None,
                   seed: int = 0) -> GTCategory:
    """Assemble C(G, ω, H, 1); ``l`` is a reporting label only.

    Adaptedness of ω for H is checked exhaustively when feasible, otherwise
    on ``samples`` seeded random triples.
    """
    if omega.group is not G or H.parent is not G:
        raise CategoryError("omega and H must live on G")
    checked, bad = co.adaptedness_check(omega, H, samples, seed)
    if bad:
        raise CategoryError(f"omega is not adapted for H ({bad} of {checked} triples fail)")
    return GTCategory(G, H, omega, l, gr.double_cosets(G, H, preferred=reps))


def simples(cat: GTCategory) -> list:
    return cat.simples


def _simples(cat: GTCategory) -> list:
    G, H = cat.G, cat.H
    out = []
    for i, (g, c) in enumerate(zip(cat.cosets.reps, cat.cosets.cosets)):
        fpdim, rem = divmod(len(c), len(H))
        assert rem == 0
        Hg, wg = co.schur_multiplier(cat.omega, g, H)
        name = G.labels[g]
        if len(Hg) == 1:
            out.append(SimpleObject(g, Hg, np.zeros(1, dtype=np.int64), fpdim, i, wg))
            continue
        if not Hg.as_group().is_abelian():
            raise UnsupportedConfiguration(f"coset of {name}: stabilizer of order {len(Hg)} is non-abelian")
        eta = co.solve_coboundary(wg)
        if eta is None:
            raise UnsupportedConfiguration(f"coset of {name}: Schur multiplier is not a coboundary")
        try:
            chars = gr.dual_group(Hg, cat.N)
        except gr.GroupError as exc:
            raise UnsupportedConfiguration(f"coset of {name}: {exc}") from None
        for j, tau in enumerate(chars):
            out.append(SimpleObject(g, Hg, (tau + eta.table) % cat.N, fpdim, i, wg, j))
    return out


def near_group_check(cat: GTCategory) -> NearGroupSummary:
    ss = cat.simples
    big = [s for s in ss if s.fpdim > 1]
    if len(big) != 1:
        raise NotNearGroup(f"expected one non-invertible simple, found {len(big)}")
    gdim = sum(s.fpdim ** 2 for s in ss)
    if gdim != cat.G.order:
        raise CategoryError(f"global dimension {gdim} differs from |G| = {cat.G.order}")
    rho = big[0]
    count = len(ss) - 1
    m, rem = divmod(rho.fpdim ** 2 - count, rho.fpdim)
    if rem or m < 0:
        raise NotNearGroup(f"d^2 - |Γ| = {rho.fpdim ** 2 - count} is not a non-negative multiple of d")
    return NearGroupSummary(count, rho, rho.fpdim, m, gdim)


def _powers(G: FiniteGroup, x, k: int):
    """``x^k`` elementwise for an index array and any integer ``k``."""
    x = np.asarray(x)
    if k < 0:
        x, k = G.inv[x], -k
    out = np.full(x.shape, G.id, dtype=np.int64)
    for _ in range(k):
        out = G.mul[out, x]
    return out


def pi(x, k: int, omega: co.TorsionCochain):
    """Exponent of π_k(x), from ``π_0 = 1`` and ``π_{k+1}(x) = ω(x, x^k, x) π_k(x)``.

    For negative ``k`` the recursion is run downward:
    ``π_k(x) = π_{k+1}(x) ω(x, x^k, x)^{-1}``.
    """
    G = omega.group
    x = np.asarray(x)
    out = np.zeros(x.shape, dtype=np.int64)
    if k >= 0:
        xj = np.full(x.shape, G.id, dtype=np.int64)
        for _ in range(k):
            out = out + omega(x, xj, x)
            xj = G.mul[xj, x]
    else:
        xj = G.inv[x]
        for _ in range(-k):
            out = out - omega(x, xj, x)
            xj = G.mul[xj, G.inv[x]]
    return out % omega.modulus


def fs_indicator(cat: GTCategory, s: SimpleObject, k: int) -> CycInt:
    """ν_k(X_{g,χ}) = |H^g|⁻¹ Σ_{r ∈ gH, r^k ∈ H^g} π_{-k}(r) χ(r^{-k})."""
    if k < 1:
        raise ValueError("indicator degree must be positive")
    G, Hg = cat.G, s.stabilizer
    r = G.mul[s.rep, cat.H.members]
    rk = _powers(G, r, k)
    mask = np.isin(rk, Hg.members)
    r, rk = r[mask], rk[mask]
    vals = pi(r, -k, cat.omega) + s.character[Hg.local_array(G.inv[rk])]
    total = CycInt.sum_of_roots(vals, cat.N)
    return total.exact_div(len(Hg))


def indicator_table(cat: GTCategory, kmax: int = 3) -> list:
    return [[fs_indicator(cat, s, k) for k in range(1, kmax + 1)] for s in cat.simples]


# -- the categories C_{n,l} ---------------------------------------------------

def standard_reps(data: GnData) -> list:
    """Double-coset representatives ``(0,w) γ1^r`` and ``γ2``."""
    reps = []
    for w in range(data.dim):
        reps.append(data.element(0, w, 0))
        reps.append(data.element(0, w, data.gamma1))
    reps.append(data.element(0, 0, data.gamma2))
    return reps


def near_group_category(n: int, l: int, N: int = co.DEFAULT_N, samples: Optional[int] = None,
                        seed: int = 0, reps: Optional[Sequence[int]] = None) -> GTCategory:
    """``C_{n,l} = C(G_n, ω_n^l, H_n, 1)``."""
    data = gr.build_Gn(n)
    omega = co.power(co.omega_n(data, N), l)
    if reps is None:
        reps = standard_reps(data)
    return build_category(data.group, data.H, omega, l, reps=reps, samples=samples, seed=seed)
