"""The group of invertible objects of C(G, ω, H, 1) and its identification.

The group is realized as Ĥ × K with the twisted law
``(χ, s)(ψ, t) = (ν(s,t) χ ˢψ, s·t)``, where ``ν(s,t) = η_s ˢη_t / η_{s·t}``
and ``dη_k = ω_k``.  Identification against central products of D8 and Q8
uses cheap invariants first and a backtracking isomorphism search second.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import cochains as co
from . import groups as gr
from .category import GTCategory
from .groups import FiniteGroup, Subgroup


class ExtensionError(ValueError):
    pass


@dataclass(eq=False)
class TwistData:
    H: Subgroup
    K: list                 # coset representatives, K[0] is the identity
    law: np.ndarray         # law[a, b] = index of K[a]·K[b]
    eta: list               # eta[a]: exponents on local indices of H
    action: np.ndarray      # action[a, h] = local index of h ◁ K[a]
    nu: np.ndarray          # nu[a, b]: exponents on local indices of H
    modulus: int

    def act(self, a, chi):
        """``ˢχ(h) = χ(h ◁ s)`` for ``s = K[a]``."""
        return chi[..., self.action[a]]

    def character_defect(self) -> int:
        """Number of ν(s,t) that are not homomorphisms H → μ_N."""
        Hg = self.H.as_group()
        nu = self.nu
        bad = (nu[:, :, :, None] + nu[:, :, None, :] - nu[:, :, Hg.mul]) % self.modulus
        return int(np.count_nonzero(np.any(bad, axis=(2, 3))))

    def cocycle_defect(self) -> int:
        """Violations of ``ˢν(t,u) ν(s,t·u) = ν(s,t) ν(s·t,u)`` over K³."""
        nK = len(self.K)
        bad = 0
        for s in range(nK):
            for t in range(nK):
                for u in range(nK):
                    lhs = self.act(s, self.nu[t, u]) + self.nu[s, self.law[t, u]]
                    rhs = self.nu[s, t] + self.nu[self.law[s, t], u]
                    bad += bool(np.any((lhs - rhs) % self.modulus))
        return bad


def compute_K(cat: GTCategory, eta: Optional[dict] = None) -> TwistData:
    """Twist data for the invertible objects.

    ``eta`` optionally maps representatives to explicit 1-cochains on H
    (exponent arrays on local indices); otherwise each η_k comes from the
    coboundary solver.  η_e is always trivial.
    """
    G, H, N = cat.G, cat.H, cat.N
    NG = gr.normalizer(G, H)
    K, etas = [], []
    for g in cat.cosets.reps:
        if g not in NG:
            continue
        if g in H:
            K.insert(0, G.id)
            etas.insert(0, np.zeros(len(H), dtype=np.int64))
            continue
        _, wg = co.schur_multiplier(cat.omega, g, H)
        if eta is not None and g in eta:
            e = np.asarray(eta[g], dtype=np.int64) % N
            if np.any((co.coboundary(co.TorsionCochain(wg.group, 1, table=e, modulus=N)).table
                       - wg.table) % N):
                raise ExtensionError(f"supplied η for {G.labels[g]} does not bound ω_g")
        else:
            sol = co.solve_coboundary(wg)
            if sol is None:
                continue
            e = sol.table
        K.append(g)
        etas.append(e)
    if not K or K[0] != G.id:
        raise ExtensionError("identity coset missing from K")
    nK = len(K)
    hs = H.members
    law = np.empty((nK, nK), dtype=np.int64)
    for a, s in enumerate(K):
        for b, t in enumerate(K):
            st = G.mul[s, t]
            hits = [c for c, k in enumerate(K) if G.mul[G.inv[k], st] in H]
            if len(hits) != 1:
                raise ExtensionError("K is not closed under the coset law")
            law[a, b] = hits[0]
    action = np.array([H.local_array(G.mul[G.mul[G.inv[s], hs], s]) for s in K])
    nu = np.empty((nK, nK, len(H)), dtype=np.int64)
    for a in range(nK):
        for b in range(nK):
            nu[a, b] = (etas[a] + etas[b][action[a]] - etas[law[a, b]]) % N
    return TwistData(H, K, law, etas, action, nu, N)


@dataclass(eq=False)
class ExtensionGroup:
    group: FiniteGroup
    labels: list            # (character index, K index) per element
    characters: list
    twist: TwistData

    def element(self, char_index: int, k_index: int) -> int:
        return k_index * len(self.characters) + char_index

    def character_subgroup(self) -> Subgroup:
        return Subgroup(self.group, [self.element(i, 0) for i in range(len(self.characters))])


def build_extension(t: TwistData, Hdual: Optional[list] = None) -> ExtensionGroup:
    """Ĥ × K with ``(χ, s)(ψ, t) = (ν(s,t) χ ˢψ, s·t)``; associativity is verified."""
    N = t.modulus
    if Hdual is None:
        Hdual = gr.dual_group(t.H, N)
    nC, nK = len(Hdual), len(t.K)
    index = {tuple((np.asarray(c) % N).tolist()): i for i, c in enumerate(Hdual)}
    if len(index) != nC:
        raise ExtensionError("characters are not distinct")
    chars = np.array(Hdual, dtype=np.int64) % N

    def lookup(vec):
        try:
            return index[tuple((vec % N).tolist())]
        except KeyError:
            raise ExtensionError("ν(s,t) χ ˢψ is not a character of H") from None

    order = nC * nK
    mul = np.empty((order, order), dtype=np.int64)
    for a in range(nK):
        acted = chars[:, t.action[a]]
        for b in range(nK):
            c = t.law[a, b]
            for i in range(nC):
                base = t.nu[a, b] + chars[i]
                for j in range(nC):
                    mul[a * nC + i, b * nC + j] = c * nC + lookup(base + acted[j])
    labels = [(i, a) for a in range(nK) for i in range(nC)]
    try:
        G = FiniteGroup(mul, labels=[f"({i},{a})" for i, a in labels], name="Gamma")
    except gr.GroupError as exc:
        raise ExtensionError(f"extension law is not a group: {exc}") from None
    return ExtensionGroup(G, labels, list(chars), t)


# -- reference groups ----------------------------------------------------------

def metacyclic8(l: int) -> FiniteGroup:
    """``⟨x, y | x⁴, y² = x^{2l}, y x = x⁻¹ y⟩``: D8 for even l, Q8 for odd l."""
    lift = 2 * (l % 2)
    elems = [(a, s) for s in range(2) for a in range(4)]
    pos = {e: i for i, e in enumerate(elems)}

    def m(p, q):
        (a, s), (b, t) = p, q
        c = a + (b if s == 0 else -b)
        if s + t == 2:
            c += lift
        return pos[(c % 4, (s + t) % 2)]

    mul = [[m(p, q) for q in elems] for p in elems]
    labels = [("x^%d" % a if a else "e") + ("y" if s else "") for a, s in elems]
    labels = [lab[1:] if lab.startswith("ey") else lab for lab in labels]
    return FiniteGroup(mul, labels=labels, name="Q8" if l % 2 else "D8")


def dihedral8() -> FiniteGroup:
    return metacyclic8(0)


def quaternion8() -> FiniteGroup:
    return metacyclic8(1)


def cyclic_group(m: int) -> FiniteGroup:
    e = np.arange(m)
    return FiniteGroup((e[:, None] + e[None, :]) % m, cyclic_cert=[(1, m)] if m > 1 else [],
                       name=f"Z{m}")


def central_product(A: FiniteGroup, B: FiniteGroup, zA: int, zB: int) -> FiniteGroup:
    """``(A × B) / ⟨(zA, zB)⟩`` for central involutions zA, zB."""
    for G, z in ((A, zA), (B, zB)):
        if G.element_order(z) != 2:
            raise ExtensionError(f"{G.labels[z]} does not have order 2")
        if z not in gr.center(G):
            raise ExtensionError(f"{G.labels[z]} is not central")
    nB = B.order

    def canon(a, b):
        return min(a * nB + b, int(A.mul[a, zA]) * nB + int(B.mul[b, zB]))

    reps = sorted({canon(a, b) for a in range(A.order) for b in range(nB)})
    pos = {r: i for i, r in enumerate(reps)}
    ab = [divmod(r, nB) for r in reps]
    mul = [[pos[canon(int(A.mul[a1, a2]), int(B.mul[b1, b2]))] for a2, b2 in ab] for a1, b1 in ab]
    labels = [f"{A.labels[a]}.{B.labels[b]}" for a, b in ab]
    name = f"{A.name}o{B.name}" if A.name and B.name else None
    return FiniteGroup(mul, labels=labels, name=name)


def central_involution(G: FiniteGroup) -> int:
    Z = [z for z in gr.center(G) if G.element_order(z) == 2]
    if len(Z) != 1:
        raise ExtensionError("center does not contain a unique involution")
    return Z[0]


def extraspecial_model(n: int, odd: bool) -> FiniteGroup:
    """D8^{∘n} (``odd=False``) or Q8 ∘ D8^{∘(n-1)} (``odd=True``)."""
    out = quaternion8() if odd else dihedral8()
    for _ in range(n - 1):
        D = dihedral8()
        out = central_product(out, D, central_involution(out), central_involution(D))
    out.name = ("Q8" if odd else "D8") + "".join("oD8" for _ in range(n - 1))
    return out


def extraspecial_type_name(n: int, odd: bool) -> str:
    if odd:
        return "Q8" if n == 1 else ("Q8∘D8" if n == 2 else f"Q8∘D8^{{∘{n - 1}}}")
    return "D8" if n == 1 else f"D8^{{∘{n}}}"


# -- invariants and isomorphism ------------------------------------------------

def fingerprint(G: FiniteGroup) -> dict:
    Z = gr.center(G)
    D = gr.derived_subgroup(G)
    order = G.order
    k2 = order.bit_length() - 1
    is_2power = order == 1 << k2
    extraspecial = (is_2power and k2 % 2 == 1 and k2 >= 3 and len(Z) == 2 and Z == D)
    return {
        "order": order,
        "center_order": len(Z),
        "derived_order": len(D),
        "exponent": gr.exponent(G),
        "order_statistics": gr.order_statistics(G),
        "is_extraspecial_2group": bool(extraspecial),
    }


def involution_count(G: FiniteGroup) -> int:
    return gr.order_statistics(G).get(2, 0)


def _element_invariants(G: FiniteGroup):
    orders = G.element_orders()
    cent = (G.mul == G.mul.T).sum(axis=1)
    return list(zip(orders.tolist(), cent.tolist()))


def _generators(G: FiniteGroup) -> list:
    orders = G.element_orders()
    gens, members = [], {G.id}
    for x in sorted(range(G.order), key=lambda x: (-orders[x], x)):
        if x not in members:
            gens.append(x)
            members = set(gr.subgroup_generated(G, gens).members.tolist())
            if len(members) == G.order:
                break
    return gens


def _extend(mulA, mulB, idA, idB, gens, imgs, n):
    phi = [-1] * n
    used = [-1] * n
    phi[idA], used[idB] = idB, idA
    stack = [idA]
    while stack:
        x = stack.pop()
        px = phi[x]
        rowA, rowB = mulA[x], mulB[px]
        for g, b in zip(gens, imgs):
            y, z = rowA[g], rowB[b]
            if phi[y] == -1:
                if used[z] != -1:
                    return None
                phi[y], used[z] = z, y
                stack.append(y)
            elif phi[y] != z:
                return None
    return phi


def find_isomorphism(A: FiniteGroup, B: FiniteGroup) -> Optional[list]:
    """An explicit isomorphism A → B as an index list, or ``None``."""
    if A.order != B.order:
        return None
    if max(A.order, B.order) > gr.MAX_ORDER:
        raise ExtensionError(f"isomorphism test limited to order {gr.MAX_ORDER}")
    invA, invB = _element_invariants(A), _element_invariants(B)
    if sorted(invA) != sorted(invB):
        return None
    fa, fb = fingerprint(A), fingerprint(B)
    if fa != fb:
        return None
    gens = _generators(A)
    cands = [[b for b in range(B.order) if invB[b] == invA[g]] for g in gens]
    mulA, mulB = A.mul.tolist(), B.mul.tolist()
    n = A.order

    def search(i, imgs):
        phi = _extend(mulA, mulB, A.id, B.id, gens[:i], imgs, n)
        if phi is None:
            return None
        if i == len(gens):
            return phi if -1 not in phi else None
        for b in cands[i]:
            if b in imgs:
                continue
            found = search(i + 1, imgs + [b])
            if found is not None:
                return found
        return None

    return search(0, [])


def isomorphic(A: FiniteGroup, B: FiniteGroup) -> bool:
    return find_isomorphism(A, B) is not None


def relabel(G: FiniteGroup, perm) -> FiniteGroup:
    """The same group with element ``x`` renamed ``perm[x]``."""
    perm = np.asarray(perm)
    inv = np.argsort(perm)
    mul = perm[G.mul[inv[:, None], inv[None, :]]]
    return FiniteGroup(mul, labels=[G.labels[i] for i in inv])


# -- putting it together -----------------------------------------------------------

def invertible_group(cat: GTCategory, eta: Optional[dict] = None) -> ExtensionGroup:
    return build_extension(compute_K(cat, eta))


def identify(cat: GTCategory, n: int, confirm: bool = True) -> dict:
    """Report the structure of Γ(C_{n,l}) against the two extraspecial models."""
    ext = invertible_group(cat)
    G = ext.group
    fp = fingerprint(G)
    inv = involution_count(G)
    models = {odd: extraspecial_model(n, odd) for odd in (False, True)}
    by_count = [odd for odd, M in models.items() if involution_count(M) == inv]
    kind = by_count[0] if len(by_count) == 1 else None
    row = {
        "order": G.order,
        "extraspecial": fp["is_extraspecial_2group"],
        "involutions": inv,
        "type": None if kind is None else extraspecial_type_name(n, kind),
    }
    if confirm and kind is not None:
        row["isomorphism_confirmed"] = isomorphic(G, models[kind])
        row["other_type_excluded"] = not isomorphic(G, models[not kind])
    return row
