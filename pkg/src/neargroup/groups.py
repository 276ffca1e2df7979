"""Finite groups as dense multiplication tables.

Everything downstream (cochains, categories, extension groups) works on
element indices.  Permutations are only used while building S4; after that
all computation is table driven.

Permutations compose right to left: ``(g*h)(i) = g(h(i))``.  With this
convention ``(1234) = (14)(23)(13)`` and ``(12)(34) = (13)(1234)``.
"""
from __future__ import annotations

import itertools
from collections import Counter
from functools import lru_cache
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

MAX_ORDER = 512


class GroupError(ValueError):
    pass


class FiniteGroup:
    """A finite group given by its Cayley table.

    ``mul[a, b]`` is the index of the product ``a*b``.  ``cyclic_cert`` is an
    optional list of ``(generator, order)`` pairs giving a decomposition of an
    abelian group into independent cyclic factors.
    """

    def __init__(self, mul, labels=None, cyclic_cert=None, name=None, check=True):
        mul = np.asarray(mul, dtype=np.int64)
        if mul.ndim != 2 or mul.shape[0] != mul.shape[1]:
            raise GroupError("multiplication table must be square")
        self.order = int(mul.shape[0])
        if self.order > MAX_ORDER:
            raise GroupError(f"order {self.order} exceeds {MAX_ORDER}")
        self.mul = mul
        self.mul.setflags(write=False)
        self.name = name
        ids = [e for e in range(self.order) if np.array_equal(mul[e], np.arange(self.order))]
        if len(ids) != 1:
            raise GroupError("no unique left identity")
        self.id = ids[0]
        rows, cols = np.nonzero(mul == self.id)
        if len(rows) != self.order:
            raise GroupError("not every element has a unique inverse")
        inv = np.empty(self.order, dtype=np.int64)
        inv[rows] = cols
        self.inv = inv
        self.inv.setflags(write=False)
        self.labels = list(labels) if labels is not None else [str(i) for i in range(self.order)]
        self.cyclic_cert = None
        if check:
            self.check_axioms()
        if cyclic_cert is not None:
            self.cyclic_cert = [(int(g), int(m)) for g, m in cyclic_cert]
            self._cert_exponents = _verify_cert(self, self.cyclic_cert)

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"<FiniteGroup {self.name or ''} order={self.order}>"

    def check_axioms(self):
        m = self.mul
        e = np.arange(self.order)
        if not (np.array_equal(m[self.id], e) and np.array_equal(m[:, self.id], e)):
            raise GroupError("identity is not two-sided")
        if not (np.all(m[e, self.inv] == self.id) and np.all(m[self.inv, e] == self.id)):
            raise GroupError("inverse is not two-sided")
        # (ab)c == a(bc) over all triples, vectorized one row at a time
        for a in range(self.order):
            if not np.array_equal(m[m[a]], m[a][m]):
                raise GroupError("multiplication is not associative")

    # -- element arithmetic -------------------------------------------------
    def prod(self, *xs):
        out = self.id
        for x in xs:
            out = self.mul[out, x]
        return int(out)

    def power(self, x, k):
        if k < 0:
            x, k = self.inv[x], -k
        out = self.id
        for _ in range(k):
            out = self.mul[out, x]
        return int(out)

    def element_order(self, x):
        k, y = 1, x
        while y != self.id:
            y = self.mul[y, x]
            k += 1
        return k

    def element_orders(self):
        return np.array([self.element_order(x) for x in range(self.order)])

    def conj(self, x, g):
        """Right adjoint action ``x ◁ g = g⁻¹ x g``."""
        return int(self.mul[self.mul[self.inv[g], x], g])

    def is_abelian(self):
        return np.array_equal(self.mul, self.mul.T)

    def index(self, label):
        return self.labels.index(label)

    def factor(self, x):
        """Exponents of ``x`` over the cyclic certificate generators."""
        if self.cyclic_cert is None:
            raise GroupError("group carries no cyclic certificate")
        return self._cert_exponents[x]

    # -- serialization -----------------------------------------------------
    def to_dict(self):
        d = {"order": self.order, "mul": self.mul.ravel().tolist(), "labels": list(self.labels)}
        if self.cyclic_cert is not None:
            d["cyclic_cert"] = [list(p) for p in self.cyclic_cert]
        return d

    @classmethod
    def from_dict(cls, d):
        n = d["order"]
        mul = np.asarray(d["mul"], dtype=np.int64).reshape(n, n)
        return cls(mul, labels=d.get("labels"), cyclic_cert=d.get("cyclic_cert"))


def _verify_cert(G, cert):
    if not G.is_abelian():
        raise GroupError("cyclic certificate on a non-abelian group")
    if int(np.prod([m for _, m in cert], dtype=np.int64)) != G.order:
        raise GroupError("certificate orders do not multiply to the group order")
    exps = {}
    for e in itertools.product(*[range(m) for _, m in cert]):
        x = G.prod(*[G.power(g, k) for (g, _), k in zip(cert, e)])
        if x in exps:
            raise GroupError("certificate generators are not independent")
        exps[x] = e
    for g, m in cert:
        if G.element_order(g) != m:
            raise GroupError(f"generator {G.labels[g]} does not have order {m}")
    return [exps[x] for x in range(G.order)]


@dataclass(frozen=True)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    map: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.map, dtype=np.int64)
        object.__setattr__(self, "map", m)
        if m.shape != (self.source.order,):
            raise GroupError("map must be defined on every source element")

    def __call__(self, x):
        return self.map[x]

    def is_homomorphism(self):
        m, S, T = self.map, self.source, self.target
        return bool(np.array_equal(m[S.mul], T.mul[m[:, None], m[None, :]]))

    def kernel(self):
        return Subgroup(self.source, np.nonzero(self.map == self.target.id)[0])


class Subgroup:
    """A subgroup given by a sorted list of member indices of ``parent``."""

    def __init__(self, parent: FiniteGroup, members: Iterable[int], cyclic_cert=None, check=True):
        self.parent = parent
        self.members = np.array(sorted(set(int(x) for x in members)), dtype=np.int64)
        self.cyclic_cert = cyclic_cert
        if check:
            sub = self.members
            if parent.id not in set(sub.tolist()):
                raise GroupError("subgroup must contain the identity")
            if not np.all(np.isin(parent.mul[np.ix_(sub, sub)], sub)):
                raise GroupError("not closed under multiplication")
        self._local = {int(x): i for i, x in enumerate(self.members)}
        self._group = None

    def __len__(self):
        return len(self.members)

    def __contains__(self, x):
        return int(x) in self._local

    def __iter__(self):
        return iter(self.members.tolist())

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and other.parent is self.parent
                and np.array_equal(self.members, other.members))

    def __hash__(self):
        return hash(tuple(self.members.tolist()))

    def __repr__(self):
        return f"<Subgroup of order {len(self)} in {self.parent!r}>"

    def local(self, x):
        """Position of parent element ``x`` in ``members``."""
        return self._local[int(x)]

    def local_array(self, xs):
        lut = np.full(self.parent.order, -1, dtype=np.int64)
        lut[self.members] = np.arange(len(self.members))
        return lut[np.asarray(xs)]

    def as_group(self) -> FiniteGroup:
        """The subgroup as a standalone group on local indices."""
        if self._group is None:
            sub = self.members
            mul = self.local_array(self.parent.mul[np.ix_(sub, sub)])
            cert = None
            if self.cyclic_cert is not None:
                cert = [(self.local(g), m) for g, m in self.cyclic_cert]
            self._group = FiniteGroup(mul, labels=[self.parent.labels[x] for x in sub],
                                      cyclic_cert=cert, check=False)
        return self._group

    def inclusion(self) -> GroupHom:
        return GroupHom(self.as_group(), self.parent, self.members)


@dataclass(frozen=True)
class DoubleCosetDecomposition:
    reps: list
    cosets: list = field(repr=False)

    def coset_of(self, x):
        for i, c in enumerate(self.cosets):
            if x in c:
                return i
        raise KeyError(x)


# -- generic subgroup machinery -------------------------------------------

def subgroup_generated(G: FiniteGroup, gens: Sequence[int]) -> Subgroup:
    members = {G.id}
    frontier = [G.id]
    gens = [int(g) for g in gens]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = int(G.mul[x, g])
                if y not in members:
                    members.add(y)
                    new.append(y)
        frontier = new
    return Subgroup(G, members, check=False)


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    hs = H.members
    keep = [g for g in range(G.order)
            if np.array_equal(np.sort(G.mul[G.mul[G.inv[g], hs], g]), hs)]
    return Subgroup(G, keep, check=False)


def centralizer(G: FiniteGroup, x: int) -> Subgroup:
    return Subgroup(G, np.nonzero(G.mul[x, :] == G.mul[:, x])[0], check=False)


def center(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, [x for x in range(G.order)
                        if np.array_equal(G.mul[x, :], G.mul[:, x])], check=False)


def commutator(G: FiniteGroup, a: int, b: int) -> int:
    """``[a, b] = a b a⁻¹ b⁻¹``."""
    return G.prod(a, b, G.inv[a], G.inv[b])


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    m, inv = G.mul, G.inv
    e = np.arange(G.order)
    comms = m[m[m[e[:, None], e[None, :]], inv[e][:, None]], inv[e][None, :]]
    return subgroup_generated(G, np.unique(comms))


def conjugate_subgroup(G: FiniteGroup, H: Subgroup, g: int) -> Subgroup:
    """``g H g⁻¹``."""
    return Subgroup(G, G.mul[G.mul[g, H.members], G.inv[g]], check=False)


def stabilizer(G: FiniteGroup, H: Subgroup, g: int) -> Subgroup:
    """``H^g = H ∩ g H g⁻¹``."""
    gHg = set(conjugate_subgroup(G, H, g).members.tolist())
    return Subgroup(G, [h for h in H if h in gHg], check=False)


def double_cosets(G: FiniteGroup, H: Subgroup, preferred: Optional[Sequence[int]] = None
                  ) -> DoubleCosetDecomposition:
    """Partition of ``G`` into ``H g H``.

    Representatives are the minimal index of each double coset, except that
    any coset containing an element of ``preferred`` is represented by it.
    """
    hs = H.members
    seen = np.zeros(G.order, dtype=bool)
    reps, cosets = [], []
    for g in range(G.order):
        if seen[g]:
            continue
        c = np.unique(G.mul[G.mul[hs, g][:, None], hs[None, :]])
        seen[c] = True
        reps.append(g)
        cosets.append(frozenset(c.tolist()))
    for p in preferred or ():
        i = next(i for i, c in enumerate(cosets) if int(p) in c)
        reps[i] = int(p)
    return DoubleCosetDecomposition(reps, [np.array(sorted(c)) for c in cosets])


def order_statistics(G: FiniteGroup) -> dict:
    return dict(sorted(Counter(G.element_orders().tolist()).items()))


def exponent(G: FiniteGroup) -> int:
    return int(np.lcm.reduce(G.element_orders()))


def dual_group(H, N: int = 36) -> list:
    """All characters of an abelian group carrying a cyclic certificate.

    ``H`` may be a ``FiniteGroup`` or a ``Subgroup``; characters are exponent
    arrays mod ``N`` over the (local) element indices.  The character with
    exponents ``(j_1, ..., j_r)`` sends certificate generator ``i`` of order
    ``m_i`` to ``ζ_N^{(N/m_i) j_i}``.
    """
    if isinstance(H, Subgroup):
        if H.cyclic_cert is None and len(H) > 1:
            raise GroupError("subgroup carries no cyclic certificate")
        if H.cyclic_cert is None:
            return [np.zeros(1, dtype=np.int64)]
        H = H.as_group()
    if H.cyclic_cert is None:
        if H.order == 1:
            return [np.zeros(1, dtype=np.int64)]
        raise GroupError("group carries no cyclic certificate")
    orders = [m for _, m in H.cyclic_cert]
    for m in orders:
        if N % m:
            raise GroupError(f"certificate order {m} does not divide N={N}")
    steps = np.array([N // m for m in orders], dtype=np.int64)
    exps = np.array([H.factor(x) for x in range(H.order)], dtype=np.int64).reshape(H.order, -1)
    chars = []
    for js in itertools.product(*[range(m) for m in orders]):
        chars.append((exps @ (steps * np.array(js, dtype=np.int64))) % N)
    return chars


# -- permutations ----------------------------------------------------------

def _compose(g, h):
    return tuple(g[h[i]] for i in range(len(h)))


def _perm(cycles, n=4):
    p = list(range(n))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            p[a - 1] = b - 1
    return tuple(p)


def cycle_label(p):
    seen, out = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j + 1)
            j = p[j]
        out.append("(" + "".join(map(str, cyc)) + ")")
    return "".join(out) or "e"


def sign_parity(p):
    """0 for even permutations, 1 for odd ones."""
    seen, parity = set(), 0
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        parity += length - 1
    return parity % 2


C123 = _perm([(1, 2, 3)])
T13 = _perm([(1, 3)])
C1234 = _perm([(1, 2, 3, 4)])


def _s4_perms():
    """S4 in the normal form (123)^x (13)^y (1234)^z, lexicographic in (x, y, z)."""
    ident = tuple(range(4))
    out = []
    for x, y, z in itertools.product(range(3), range(2), range(4)):
        p = ident
        for _ in range(x):
            p = _compose(p, C123)
        for _ in range(y):
            p = _compose(p, T13)
        for _ in range(z):
            p = _compose(p, C1234)
        out.append(p)
    return out


def _table(perms):
    pos = {p: i for i, p in enumerate(perms)}
    return np.array([[pos[_compose(a, b)] for b in perms] for a in perms], dtype=np.int64)


_S4_PERMS = _s4_perms()
_S4_NF = list(itertools.product(range(3), range(2), range(4)))


def s4_index(x, y, z):
    return (x * 2 + y) * 4 + z


@lru_cache(maxsize=None)
def symmetric_group(n: int) -> FiniteGroup:
    """S3 or S4 with elements in the normal forms (123)^x(13)^y and (123)^x(13)^y(1234)^z."""
    if n == 3:
        perms = [_S4_PERMS[s4_index(x, y, 0)] for x in range(3) for y in range(2)]
        return FiniteGroup(_table(perms), labels=[cycle_label(p) for p in perms], name="S3")
    if n == 4:
        return FiniteGroup(_table(_S4_PERMS), labels=[cycle_label(p) for p in _S4_PERMS], name="S4")
    raise GroupError(f"symmetric_group supports n in {{3, 4}}, got {n}")


def s3_index(x, y):
    return x * 2 + y


def s4_element(label: str) -> int:
    """Index in ``symmetric_group(4)`` of a permutation written in cycle notation."""
    cycles = [tuple(int(c) for c in part) for part in label.strip("()").split(")(") if part and part != "e"]
    return _S4_PERMS.index(_perm(cycles))


def s4_normal_form(g: int):
    return _S4_NF[g]


def s4_permutation(g: int):
    return _S4_PERMS[g]


@lru_cache(maxsize=None)
def quotient_pi() -> GroupHom:
    """The quotient S4 → S4/N ≅ S3, ``(x, y, z) ↦ (x, [y+z]_2)``."""
    return GroupHom(symmetric_group(4), symmetric_group(3),
                    np.array([s3_index(x, (y + z) % 2) for x, y, z in _S4_NF]))


@lru_cache(maxsize=None)
def s3_embedding() -> GroupHom:
    return GroupHom(symmetric_group(3), symmetric_group(4),
                    np.array([s4_index(x, y, 0) for x in range(3) for y in range(2)]))


def epsilon(g: int) -> int:
    """Parity of an S4 element, ``sgn(g) = (-1)^ε(g)``."""
    return sign_parity(_S4_PERMS[g])


S4_EPSILON = np.array([sign_parity(p) for p in _S4_PERMS], dtype=np.int64)

# the S3 action on V ⊕ V: generator matrices over F2 acting on (v, w)
_ACT_123 = ((1, 1), (1, 0))  # (v, w) ↦ (v+w, v)
_ACT_13 = ((1, 1), (0, 1))   # (v, w) ↦ (v+w, w)


def _act(mat, v, w):
    (a, b), (c, d) = mat
    return (a * v) ^ (b * w), (c * v) ^ (d * w)


def s3_action(x, y, v, w):
    """``(123)^x (13)^y · (v, w)`` with v, w bitmasks of F2^{n-1}."""
    for _ in range(y):
        v, w = _act(_ACT_13, v, w)
    for _ in range(x):
        v, w = _act(_ACT_123, v, w)
    return v, w


@dataclass
class GnData:
    """``G_n = (V_n ⊕ V_n) ⋊ S4`` with ``V_n = F2^{n-1}`` and its distinguished pieces.

    Element ``((v, w), s)`` has index ``(v * 2^{n-1} + w) * 24 + s`` where
    ``v, w`` are bitmasks and ``s`` an S4 index.
    """
    n: int
    group: FiniteGroup
    p: GroupHom
    H: Subgroup
    K: Subgroup
    gamma1: int
    gamma2: int

    @property
    def dim(self):
        return 1 << (self.n - 1)

    def element(self, v=0, w=0, s=0):
        if isinstance(s, str):
            s = s4_element(s)
        return (v * self.dim + w) * 24 + s

    def split(self, g):
        vw, s = divmod(int(g), 24)
        v, w = divmod(vw, self.dim)
        return v, w, s

    def epsilon(self, g):
        return int(S4_EPSILON[self.p.map[g]])


@lru_cache(maxsize=None)
def build_Gn(n: int) -> GnData:
    if n < 1:
        raise GroupError("n must be at least 1")
    dim = 1 << (n - 1)
    S4 = symmetric_group(4)
    pi = quotient_pi()
    s3_nf = [divmod(int(q), 2) for q in pi.map]
    # s ↦ action table on (v, w) pairs
    act = np.empty((24, dim, dim, 2), dtype=np.int64)
    for s in range(24):
        x, y = s3_nf[s]
        for v in range(dim):
            for w in range(dim):
                act[s, v, w] = s3_action(x, y, v, w)
    order = dim * dim * 24
    idx = np.arange(order)
    vw, s = np.divmod(idx, 24)
    v, w = np.divmod(vw, dim)
    a = act[s[:, None], v[None, :], w[None, :]]  # action of left factor on right vector
    nv = v[:, None] ^ a[..., 0]
    nw = w[:, None] ^ a[..., 1]
    ns = S4.mul[s[:, None], s[None, :]]
    mul = (nv * dim + nw) * 24 + ns

    def label(i):
        vi, wi, si = v[i], w[i], s[i]
        if n == 1:
            return S4.labels[si]
        return f"({vi:0{n-1}b},{wi:0{n-1}b}){S4.labels[si]}"

    h = s4_index(0, 0, 1)
    gamma1 = s4_element("(12)(34)")
    gamma2 = s4_element("(123)")
    basis = [((1 << i) * dim) * 24 for i in range(n - 1)]
    H_members = [(vv * dim) * 24 + s4_index(0, 0, z) for vv in range(dim) for z in range(4)]
    K_members = [ww * 24 + k for ww in range(dim) for k in (0, gamma1)]
    G = FiniteGroup(mul, labels=[label(i) for i in range(order)], name=f"G{n}")
    H = Subgroup(G, H_members, cyclic_cert=[(b, 2) for b in basis] + [(h, 4)])
    H.as_group()  # verifies the certificate
    K = Subgroup(G, K_members)
    p = GroupHom(G, S4, s)
    return GnData(n, G, p, H, K, gamma1, gamma2)
