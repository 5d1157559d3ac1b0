"""Central extensions 0 -> F_p -> G -> V -> 0 given by a 2-cocycle on V = F_p^r.

Elements are pairs (v, c) with v a coordinate tuple and c in F_p, multiplied as
(v, c)(w, d) = (v + w, c + d + gamma(v, w)).  The commutator pairing is
eps(v, w) = gamma(v, w) - gamma(w, v) and the power constant s(v) is defined by
(v, 0)^p = (0, s(v)).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field

import numpy as np

from .linalg import NoSolution, kernel, rank, solve
from .poly import power_table


class GroupError(AssertionError):
    pass


class PresentationError(ValueError):
    """Input group is not a central F_p-extension of an elementary abelian group."""


ENUMERATION_LIMIT = 1 << 16
EXHAUSTIVE_TRIPLES = 1 << 18


def _vadd(v, w, p):
    return tuple((a + b) % p for a, b in zip(v, w))


def _vscale(k, v, p):
    return tuple(k * a % p for a in v)


def _unit(i, r):
    return tuple(1 if j == i else 0 for j in range(r))


class CocycleGroup:
    """Group on V x F_p from a normalized 2-cocycle ``gamma(v, w) -> int mod p``."""

    def __init__(self, p: int, r: int, gamma, cache: bool = True):
        self.p = p
        self.r = r
        self._gamma = gamma
        self._cache = {} if cache else None
        self._eps = None
        self._s_basis = None

    # -- group law --

    @property
    def order(self):
        return self.p ** (self.r + 1)

    @property
    def zero(self):
        return (0,) * self.r

    def gamma(self, v, w) -> int:
        if self._cache is None:
            return self._gamma(v, w) % self.p
        key = (v, w)
        val = self._cache.get(key)
        if val is None:
            val = self._cache[key] = self._gamma(v, w) % self.p
        return val

    def mul(self, x, y):
        (v, c), (w, d) = x, y
        return _vadd(v, w, self.p), (c + d + self.gamma(v, w)) % self.p

    def identity(self):
        return self.zero, 0

    def inverse(self, x):
        v, c = x
        mv = _vscale(-1, v, self.p)
        return mv, (-c - self.gamma(v, mv)) % self.p

    def power(self, x, k: int):
        out = self.identity()
        for _ in range(k):
            out = self.mul(out, x)
        return out

    def vectors(self):
        return itertools.product(range(self.p), repeat=self.r)

    def elements(self):
        for v in self.vectors():
            for c in range(self.p):
                yield v, c

    # -- derived data --

    def epsilon(self, v, w) -> int:
        return (self.gamma(v, w) - self.gamma(w, v)) % self.p

    def epsilon_matrix(self) -> np.ndarray:
        if self._eps is None:
            r = self.r
            E = np.zeros((r, r), dtype=np.int64)
            for i in range(r):
                for j in range(r):
                    if i != j:
                        E[i, j] = self.epsilon(_unit(i, r), _unit(j, r))
            self._eps = E
        return self._eps

    def s(self, v) -> int:
        """(v, 0)^p = (0, s(v))."""
        p = self.p
        acc = 0
        iv = v
        for _ in range(1, p):
            acc += self.gamma(iv, v)
            iv = _vadd(iv, v, p)
        return acc % p

    def s_basis(self) -> list[int]:
        if self._s_basis is None:
            self._s_basis = [self.s(_unit(i, self.r)) for i in range(self.r)]
        return self._s_basis

    def s_formula(self, v) -> int:
        """s from its basis values: linear for odd p, quadratic with polarization eps for p = 2."""
        p = self.p
        sb = self.s_basis()
        val = sum(a * b for a, b in zip(v, sb))
        if p == 2:
            E = self.epsilon_matrix()
            idx = [i for i, a in enumerate(v) if a]
            for a in range(len(idx)):
                for b in range(a + 1, len(idx)):
                    val += E[idx[a], idx[b]]
        return int(val % p)

    def s_values(self) -> dict:
        if self.p ** self.r > ENUMERATION_LIMIT:
            raise GroupError("root space too large to enumerate power constants")
        return {v: self.s_formula(v) for v in self.vectors()}

    def radical(self) -> list[list[int]]:
        if self.r == 0:
            return []
        return kernel(self.epsilon_matrix(), self.p)

    # -- verification --

    def _sample_vectors(self, rng, k):
        return [tuple(rng.randrange(self.p) for _ in range(self.r)) for _ in range(k)]

    def check_cocycle(self, rng: random.Random, limit: int = EXHAUSTIVE_TRIPLES, samples: int = 2000):
        """gamma(y,z) + gamma(y+z,w) = gamma(z,w) + gamma(y,z+w); normalized and central."""
        p = self.p
        z0 = self.zero
        if self.p ** (3 * self.r) <= limit:
            vs = list(self.vectors())
            triples = itertools.product(vs, vs, vs)
        else:
            triples = zip(*(self._sample_vectors(rng, samples) for _ in range(3)))
        for y, z, w in triples:
            lhs = self.gamma(y, z) + self.gamma(_vadd(y, z, p), w)
            rhs = self.gamma(z, w) + self.gamma(y, _vadd(z, w, p))
            if (lhs - rhs) % p:
                raise GroupError("2-cocycle identity fails")
        for v in self._sample_vectors(rng, 20):
            if self.gamma(z0, v) or self.gamma(v, z0):
                raise GroupError("cocycle not normalized")

    def check_bilinear(self, rng: random.Random, samples: int = 200):
        """eps alternating bilinear and s consistent with its basis formula."""
        p = self.p
        if self.r == 0:
            return
        E = self.epsilon_matrix()
        if np.any((E + E.T) % p) or np.any(np.diag(E) % p):
            raise GroupError("epsilon matrix not alternating")
        small = self.p ** (2 * self.r) <= 1 << 12
        if small:
            pairs = [(v, w) for v in self.vectors() for w in self.vectors()]
        else:
            vs = self._sample_vectors(rng, samples)
            ws = self._sample_vectors(rng, samples)
            pairs = list(zip(vs, ws))
        for v, w in pairs:
            want = int(np.array(v) @ E @ np.array(w)) % p
            if self.epsilon(v, w) != want:
                raise GroupError("epsilon is not bilinear")
        vs = list(self.vectors()) if small else self._sample_vectors(rng, samples)
        for v in vs:
            if self.s(v) != self.s_formula(v):
                raise GroupError("power constant disagrees with its polarization formula")

    # -- constructions --

    def restrict(self, basis_vectors) -> "CocycleGroup":
        """Preimage of the span of the given vectors (coordinates in V), as its own group."""
        p = self.p
        B = [tuple(b) for b in basis_vectors]

        def emb(u):
            out = self.zero
            for c, b in zip(u, B):
                if c:
                    out = _vadd(out, _vscale(c, b, p), p)
            return out

        return CocycleGroup(p, len(B), lambda u, w: self.gamma(emb(u), emb(w)))

    def table(self) -> dict:
        return {(v, w): self.gamma(v, w) for v in self.vectors() for w in self.vectors()}


def normal_form_cocycle(p: int, E: np.ndarray, s_basis) -> "callable":
    """F_p-valued cocycle with commutator matrix E and power constants s on the basis.

    p = 2: the bilinear form triu(E) + diag(s).  p odd: the bilinear form triu(E)
    plus sum_k s_k * carry(v_k, w_k), carry being the Z/p^2 addition carry.
    """
    r = E.shape[0]
    U = np.triu(E % p, 1)
    if p == 2:
        B = U + np.diag(np.array(s_basis, dtype=np.int64) % 2) if r else U

        def gamma(v, w):
            return int(np.array(v) @ B @ np.array(w)) % 2

        return gamma
    sb = [int(x) % p for x in s_basis]

    def gamma(v, w):
        val = int(np.array(v) @ U @ np.array(w))
        for k in range(r):
            if sb[k] and v[k] + w[k] >= p:
                val += sb[k]
        return val % p

    return gamma


class WildGroup(CocycleGroup):
    """The wild inertia group from a root space and P_f over the working field.

    P_f gives the field-valued cocycle gamma_k(y, z) = P_f(y, z) as well as the
    F_p-valued commutator pairing and power constants.  A section (y, c_y) with
    c_y^p - c_y = f(y) turns gamma_k into an F_p-valued cocycle whose class is
    fixed by (eps, s); the group law used here is the normal-form cocycle with
    those invariants, so that no extension of the working field is needed.
    """

    def __init__(self, roots, P, delta=None):
        from .cover import epsilon_fast, power_constant_fast

        self.roots = roots
        self.P = P
        self.delta = delta
        self._elem: dict = {}
        self._tables: dict = {}
        self._gk: dict = {}
        p, r = roots.p, roots.r
        E = np.zeros((r, r), dtype=np.int64)
        b = roots.basis
        for i in range(r):
            for j in range(i + 1, r):
                e = epsilon_fast(P, b[i], b[j])
                E[i, j] = e
                E[j, i] = -e % p
        sb = [power_constant_fast(P, y) for y in b]
        self.eps_from_p = E
        super().__init__(p, r, normal_form_cocycle(p, E, sb))
        if r and not np.array_equal(self.epsilon_matrix() % p, E % p):
            raise GroupError("normal form does not reproduce the commutator pairing")
        if self.s_basis() != sb:
            raise GroupError("normal form does not reproduce the power constants")

    def element(self, v):
        y = self._elem.get(v)
        if y is None:
            y = self._elem[v] = self.roots.combine(v)
        return y

    def _powers(self, v):
        t = self._tables.get(v)
        if t is None:
            if len(self._tables) > 1 << 14:
                self._tables.clear()
            t = self._tables[v] = power_table(self.roots.field, self.element(v))
        return t

    def gamma_k(self, v, w):
        """P_f(y, z) for the roots y, z with coordinates v, w."""
        key = (tuple(v), tuple(w))
        acc = self._gk.get(key)
        if acc is not None:
            return acc
        K = self.roots.field
        tv, tw = self._powers(key[0]), self._powers(key[1])
        acc = K.zero
        for (i, j), c in self.P.terms.items():
            acc = K.add(acc, K.mul(c, K.mul(tv(i), tw(j))))
        if len(self._gk) > 1 << 16:
            self._gk.clear()
        self._gk[key] = acc
        return acc

    def epsilon_k(self, v, w) -> int:
        K = self.roots.field
        e = K.sub(self.gamma_k(v, w), self.gamma_k(w, v))
        if e >= self.p:
            raise GroupError("epsilon does not lie in F_p")
        return e

    def s_k(self, v) -> int:
        K = self.roots.field
        acc = K.zero
        for i in range(self.p):
            acc = K.add(acc, self.gamma_k(_vscale(i, v, self.p), v))
        if acc >= self.p:
            raise GroupError("power constant outside F_p")
        return -acc % self.p

    def check_cocycle(self, rng: random.Random, limit: int = EXHAUSTIVE_TRIPLES, samples: int = 2000):
        """Cocycle identity of the field-valued gamma_k, gamma_k - gamma_k^p = Delta f(y, z),
        and the identity for the normal form."""
        super().check_cocycle(rng, limit, samples)
        K = self.roots.field
        p = self.p
        if self.p ** (3 * self.r) <= limit:
            vs = list(self.vectors())
            triples = itertools.product(vs, vs, vs)
        else:
            triples = zip(*(self._sample_vectors(rng, samples) for _ in range(3)))
        g = self.gamma_k
        for y, z, w in triples:
            lhs = K.add(g(y, z), g(_vadd(y, z, p), w))
            rhs = K.add(g(z, w), g(y, _vadd(z, w, p)))
            if lhs != rhs:
                raise GroupError("2-cocycle identity fails for P_f values")
        if self.delta is not None:
            for y, z in zip(self._sample_vectors(rng, 50), self._sample_vectors(rng, 50)):
                c = g(y, z)
                if K.sub(c, K.frob(c, 1)) != self.delta.eval_xy(self.element(y), self.element(z)):
                    raise GroupError("gamma - gamma^p differs from Delta f(y, z)")

    def check_bilinear(self, rng: random.Random, samples: int = 200):
        super().check_bilinear(rng, samples)
        if self.r == 0:
            return
        p = self.p
        E = self.eps_from_p
        small = self.p ** (2 * self.r) <= 1 << 12
        if small:
            pairs = [(v, w) for v in self.vectors() for w in self.vectors()]
            vs = list(self.vectors())
        else:
            pairs = list(zip(self._sample_vectors(rng, samples), self._sample_vectors(rng, samples)))
            vs = self._sample_vectors(rng, samples)
        for v, w in pairs:
            if self.epsilon_k(v, w) != int(np.array(v) @ E @ np.array(w)) % p:
                raise GroupError("epsilon from P_f is not bilinear")
        for v in vs:
            if self.s_k(v) != self.s_formula(v):
                raise GroupError("power constant from P_f is not the polarized form")


def section_cocycle(G: WildGroup, f, degree_cap: int = 32):
    """F_p-valued cocycle of an explicit section c_y (least root of T^p - T = f(y)).

    Returns a CocycleGroup or None when the needed field is beyond the cap.
    Under the action W -> W - P_f(X, y) + c the law is
    (y, c)(z, d) = (y + z, c + d - gamma_k(y, z)).
    """
    from .field import embed_map, field_create
    from .poly import UniPoly, poly_roots

    K = G.roots.field
    p = G.p
    if p ** G.r > 256:
        return None
    emb_f = f.map_coeffs(embed_map(f.ring, K), K)
    vals = {v: emb_f.evaluate(G.element(v)) for v in G.vectors()}
    L = K
    need = any(_no_as_root(K, a) for a in vals.values())
    if need:
        if K.e * p > degree_cap:
            return None
        L = field_create(p, K.e * p)
    e = embed_map(K, L)
    sec = {}
    for v, a in vals.items():
        u = UniPoly(L, {p: 1, 1: L.neg(1), 0: L.neg(e(a))})
        roots = sorted(poly_roots(u))
        if len(roots) != p:
            raise GroupError("Artin-Schreier equation does not split")
        sec[v] = roots[0]

    def gamma(v, w):
        u = _vadd(v, w, p)
        c = L.sub(L.add(sec[v], sec[w]), L.add(sec[u], e(G.gamma_k(v, w))))
        if c >= p:
            raise GroupError("section cocycle leaves F_p")
        return c

    return CocycleGroup(p, G.r, gamma)


def _no_as_root(K, a) -> bool:
    """T^p - T = a has no root in K iff the absolute trace of a is nonzero."""
    t = 0
    x = a
    for _ in range(K.e):
        t = K.add(t, x)
        x = K.frob(x, 1)
    return t != 0


def build_group(report) -> WildGroup:
    return report.group


# ---------------------------------------------------------------------------
# profile and classification
# ---------------------------------------------------------------------------

@dataclass
class GroupProfile:
    p: int
    order: int
    exponent: int
    center_order: int
    derived_order: int
    order_stats: dict
    radical_dim: int
    epsilon_matrix: list
    s_vector: list
    label: "Label | None" = None

    def as_dict(self):
        return {
            "order": self.order,
            "exponent": self.exponent,
            "center_order": self.center_order,
            "derived_order": self.derived_order,
            "order_stats": {str(k): v for k, v in sorted(self.order_stats.items())},
            "label": str(self.label),
        }


def _count_s_zeros(G: CocycleGroup) -> int:
    """Number of nonzero v with s(v) = 0."""
    p, r = G.p, G.r
    if r == 0:
        return 0
    sb = G.s_basis()
    if p != 2:
        return p ** (r - 1) - 1 if any(sb) else p ** r - 1
    if p ** r > ENUMERATION_LIMIT * 16:
        raise GroupError("root space too large for order statistics")
    # Gray-code walk: s(v + e_i) = s(v) + s(e_i) + eps(v, e_i)
    E = G.epsilon_matrix()
    v = [0] * r
    sv = 0
    zeros = 0
    for k in range(1, 2 ** r):
        i = (k & -k).bit_length() - 1
        sv = (sv + sb[i] + int(np.dot(v, E[:, i]))) % 2
        v[i] ^= 1
        if sv == 0:
            zeros += 1
    return zeros


def profile(G: CocycleGroup, max_order_exp: int = 13) -> GroupProfile:
    p, r = G.p, G.r
    if r + 1 > max_order_exp:
        raise GroupError(f"group order p^{r + 1} exceeds cap")
    E = G.epsilon_matrix()
    rad = len(G.radical()) if r else 0
    zeros = _count_s_zeros(G)
    nonzero = p ** r - 1 - zeros
    stats = {1: 1}
    stats[p] = (p - 1) + p * zeros
    if nonzero:
        stats[p * p] = p * nonzero
    stats = {k: v for k, v in stats.items() if v}
    if sum(stats.values()) != G.order:
        raise GroupError("order statistics do not sum to the group order")
    prof = GroupProfile(
        p=p,
        order=G.order,
        exponent=p * p if nonzero else p,
        center_order=p ** (1 + rad),
        derived_order=p if np.any(E % p) else 1,
        order_stats=stats,
        radical_dim=rad,
        epsilon_matrix=E.tolist(),
        s_vector=list(G.s_basis()),
    )
    prof.label = classify(G, prof)
    return prof


@dataclass(frozen=True)
class Label:
    kind: str  # elementary_abelian | abelian_p2 | extraspecial | central_product
    p: int
    order: int
    rank: int = 0
    type: str = ""
    ext: "Label | None" = None
    ab: "Label | None" = None
    ambiguous: bool = False

    def __str__(self):
        p = self.p
        if self.kind == "elementary_abelian":
            if self.rank == 1:
                return f"cyclic({p})"
            return f"elementary_abelian(rank {self.rank}) [(Z/{p})^{self.rank}]"
        if self.kind == "abelian_p2":
            if self.rank == 1:
                return f"cyclic({p * p})"
            parts = " x ".join([f"Z/{p}"] * (self.rank - 1) + [f"Z/{p * p}"])
            return f"abelian_p2(rank {self.rank}) [{parts}]"
        if self.kind == "extraspecial":
            s = f"extraspecial({self.order}, {self.type})"
            nick = _nickname(p, self.order, self.type)
            return f"{s} [{nick}]" if nick else s
        return f"central_product({self.ext}, {self.ab})"

    @property
    def short(self) -> str:
        """Compact name used in tables: D8, Q8, Z/2xZ/4, (Z/2)^3, ..."""
        if self.kind == "extraspecial":
            return _nickname(self.p, self.order, self.type) or str(self)
        if self.kind == "abelian_p2":
            return "x".join([f"Z/{self.p}"] * (self.rank - 1) + [f"Z/{self.p ** 2}"])
        if self.kind == "elementary_abelian":
            return f"Z/{self.p}" if self.rank == 1 else f"(Z/{self.p})^{self.rank}"
        return str(self)


def _nickname(p, order, typ):
    if order != p ** 3:
        return ""
    return {
        "III.a": "D8",
        "III.b": "Q8",
        "I": f"E({order})",
        "II": f"M({order})",
    }.get(typ, "")


AMBIGUOUS_TYPE = {2: "III (product-ambiguous)"}


def _span_complement(rad: list[list[int]], r: int, p: int) -> list[tuple]:
    """Unit vectors completing a basis of the radical, scanned in index order."""
    chosen: list = []
    current = [list(v) for v in rad]
    base_rank = rank(np.array(current, dtype=np.int64), p) if current else 0
    for i in range(r):
        u = list(_unit(i, r))
        trial = current + [u]
        rk = rank(np.array(trial, dtype=np.int64), p)
        if rk > base_rank:
            current = trial
            base_rank = rk
            chosen.append(tuple(u))
    return chosen


def symplectic_basis(G: CocycleGroup, complement: list[tuple]) -> list[tuple[tuple, tuple]]:
    """Greedy hyperbolic pairs (e_i, f_i) with eps(e_i, f_i) = 1 spanning the complement."""
    p = G.p
    E = G.epsilon_matrix()

    def eps(v, w):
        return int(np.array(v) @ E @ np.array(w)) % p

    pool = [tuple(v) for v in complement]
    pairs = []
    while pool:
        e = pool.pop(0)
        j = next((k for k, w in enumerate(pool) if eps(e, w)), None)
        if j is None:
            raise GroupError("pairing degenerate on the chosen complement")
        f = pool.pop(j)
        inv = pow(eps(e, f), p - 2, p)
        f = _vscale(inv, f, p)
        pairs.append((e, f))
        new_pool = []
        for x in pool:
            # x - eps(x, f) e + eps(x, e) f is orthogonal to e and f
            a, b = eps(x, f), eps(x, e)
            y = _vadd(_vadd(x, _vscale(-a, e, p), p), _vscale(b, f, p), p)
            new_pool.append(y)
        pool = new_pool
    return pairs


def classify(G: CocycleGroup, prof: GroupProfile | None = None) -> Label:
    p, r = G.p, G.r
    if prof is None:
        return profile(G).label
    eps_zero = prof.derived_order == 1
    s_zero = prof.exponent == p
    if eps_zero:
        if s_zero:
            return Label("elementary_abelian", p, prof.order, rank=r + 1)
        return Label("abelian_p2", p, prof.order, rank=r)
    rad = G.radical()
    comp = _span_complement(rad, r, p)
    n = len(comp) // 2
    pairs = symplectic_basis(G, comp)
    assert len(pairs) == n
    rad_s = any(G.s_formula(tuple(v)) for v in rad)
    ext_order = p ** (2 * n + 1)
    if rad_s:
        typ = AMBIGUOUS_TYPE.get(p, "I/II (product-ambiguous)")
        ambiguous = True
    else:
        ambiguous = False
        if p == 2:
            sub = G.restrict(comp)
            q4 = 2 * (2 ** (2 * n) - 1 - _count_s_zeros(sub))
            if q4 == 2 ** (2 * n) - 2 ** n:
                typ = "III.a"
            elif q4 == 2 ** (2 * n) + 2 ** n:
                typ = "III.b"
            else:
                raise GroupError(f"extraspecial order-4 count {q4} matches neither type")
        else:
            typ = "II" if any(G.s_formula(v) for v in comp) else "I"
    ext = Label("extraspecial", p, ext_order, rank=2 * n, type=typ, ambiguous=ambiguous)
    if not rad:
        return ext
    if rad_s:
        ab = Label("abelian_p2", p, p ** (len(rad) + 1), rank=len(rad))
    else:
        ab = Label("elementary_abelian", p, p ** (len(rad) + 1), rank=len(rad) + 1)
    return Label("central_product", p, prof.order, rank=r + 1, ext=ext, ab=ab, ambiguous=ambiguous)


# ---------------------------------------------------------------------------
# abstract groups and cocycles of extensions
# ---------------------------------------------------------------------------

@dataclass
class AbstractGroup:
    """A small group given by an ordered element list and a multiplication."""

    elements: list
    mul: object
    identity: object
    name: str = ""
    _index: dict = dc_field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index = {g: i for i, g in enumerate(self.elements)}

    def index(self, g):
        return self._index[g]

    def power(self, g, k):
        out = self.identity
        for _ in range(k):
            out = self.mul(out, g)
        return out

    def order_of(self, g):
        k, x = 1, g
        while x != self.identity:
            x = self.mul(x, g)
            k += 1
        return k


def cyclic_group(n: int) -> AbstractGroup:
    return AbstractGroup(list(range(n)), lambda a, b: (a + b) % n, 0, f"Z/{n}")


def product_group(*gs: AbstractGroup) -> AbstractGroup:
    elems = list(itertools.product(*(g.elements for g in gs)))

    def mul(a, b):
        return tuple(g.mul(x, y) for g, x, y in zip(gs, a, b))

    return AbstractGroup(elems, mul, tuple(g.identity for g in gs), "x".join(g.name for g in gs))


def quaternion_group() -> AbstractGroup:
    """Q8 as signed units (s, u) with u in {1, i, j, k}."""
    table = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    elems = [(s, u) for s in (1, -1) for u in "1ijk"]

    def mul(a, b):
        s, u = table[(a[1], b[1])]
        return (a[0] * b[0] * s, u)

    return AbstractGroup(elems, mul, (1, "1"), "Q8")


def dihedral8() -> AbstractGroup:
    """D8 as pairs (k, f): rotation k mod 4, reflection flag f."""
    elems = [(k, f) for f in (0, 1) for k in range(4)]

    def mul(a, b):
        k1, f1 = a
        k2, f2 = b
        return ((k1 + (-k2 if f1 else k2)) % 4, f1 ^ f2)

    return AbstractGroup(elems, mul, (0, 0), "D8")


def as_abstract(G: CocycleGroup) -> AbstractGroup:
    return AbstractGroup(list(G.elements()), G.mul, G.identity(), "cocycle group")


@dataclass
class ExtensionCocycle:
    p: int
    r: int
    table: dict  # (v, w) -> c
    basis: list  # section representatives of the quotient basis
    section: dict  # v -> element

    def group(self) -> CocycleGroup:
        t = self.table
        return CocycleGroup(self.p, self.r, lambda v, w: t[(v, w)])


def cocycle_of_extension(G: AbstractGroup, N: list, p: int | None = None) -> ExtensionCocycle:
    """Cocycle of G as a central extension of G/N by N (N of prime order p)."""
    mul = G.mul
    e = G.identity
    Nset = set(N)
    n = len(Nset)
    if p is None:
        p = n
    if n != p or e not in Nset:
        raise PresentationError("not a C1 presentation: N must be a subgroup of prime order p")
    for a in N:
        for g in G.elements:
            if mul(a, g) != mul(g, a):
                raise PresentationError("not a C1 presentation: N is not central")
    n0 = min((x for x in N if x != e), key=G.index)
    log = {}
    x = e
    for k in range(p):
        log[x] = k
        x = mul(x, n0)
    if set(log) != Nset:
        raise PresentationError("not a C1 presentation: N is not cyclic of order p")
    # cosets, with the least element as representative
    coset_of: dict = {}
    reps = []
    for g in G.elements:
        if g in coset_of:
            continue
        rep = g
        reps.append(rep)
        for a in N:
            coset_of[mul(g, a)] = rep
    # quotient must be elementary abelian
    for a in reps:
        if coset_of[G.power(a, p)] != e:
            raise PresentationError("not a C1 presentation: quotient has an element of order > p")
        for b in reps:
            if coset_of[mul(a, b)] != coset_of[mul(b, a)]:
                raise PresentationError("not a C1 presentation: quotient is not abelian")
    # greedy basis of the quotient
    vec_of = {coset_of[e]: ()}
    basis = []
    for g in reps:
        if g in vec_of:
            continue
        basis.append(g)
        new = {}
        for rep, v in vec_of.items():
            x = rep
            for c in range(p):
                new[coset_of[x]] = v + (c,)
                x = mul(x, g)
        vec_of = new
        if len(vec_of) != p ** len(basis):
            raise PresentationError("not a C1 presentation: quotient basis is dependent")
    r = len(basis)
    if p ** r != len(reps):
        raise PresentationError("not a C1 presentation: quotient is not spanned")
    section = {v: rep for rep, v in vec_of.items()}
    inv_cache: dict = {}

    def inverse(g):
        if g not in inv_cache:
            inv_cache[g] = next(h for h in G.elements if mul(g, h) == e)
        return inv_cache[g]

    table = {}
    vs = list(itertools.product(range(p), repeat=r))
    for v in vs:
        for w in vs:
            u = tuple((a + b) % p for a, b in zip(v, w))
            c = mul(inverse(section[u]), mul(section[v], section[w]))
            if c not in log:
                raise GroupError("section product leaves the central subgroup")
            table[(v, w)] = log[c]
    ext = ExtensionCocycle(p, r, table, basis, section)
    ext.group().check_cocycle(random.Random(0))
    return ext


# ---------------------------------------------------------------------------
# bilinear representatives and the extraspecial closure
# ---------------------------------------------------------------------------

@dataclass
class Bilinearization:
    A: np.ndarray
    h: dict  # v -> F_2

    def bilinear(self, v, w) -> int:
        return int(np.array(v) @ self.A @ np.array(w)) % 2


def bilinearize_cocycle(G: CocycleGroup, p: int = 2) -> Bilinearization:
    """Solve A(v1,v2) = c(v1,v2) + h(v1) + h(v2) + h(v1+v2) over F_2."""
    if p != 2 or G.p != 2:
        raise ValueError("bilinearization is implemented for p = 2")
    r = G.r
    vs = list(G.vectors())
    vidx = {v: i for i, v in enumerate(vs)}
    nA = r * r
    ncols = nA + len(vs)
    rows, rhs = [], []
    for v in vs:
        for w in vs:
            row = [0] * ncols
            for i in range(r):
                if v[i]:
                    for j in range(r):
                        if w[j]:
                            row[i * r + j] = 1
            for u in (v, w, _vadd(v, w, 2)):
                row[nA + vidx[u]] ^= 1
            rows.append(row)
            rhs.append(G.gamma(v, w))
    try:
        sol = solve(np.array(rows, dtype=np.int64), rhs, 2)
    except NoSolution:
        raise GroupError("bilinearization failed") from None
    A = np.array(sol[:nA], dtype=np.int64).reshape(r, r) if r else np.zeros((0, 0), dtype=np.int64)
    h = {v: int(sol[nA + vidx[v]]) for v in vs}
    out = Bilinearization(A, h)
    for v in vs:
        for w in vs:
            if out.bilinear(v, w) != (G.gamma(v, w) + h[v] + h[w] + h[_vadd(v, w, 2)]) % 2:
                raise GroupError("bilinear representative fails its defining equation")
    rebuilt = CocycleGroup(2, r, out.bilinear)
    if profile(rebuilt).order_stats != profile(G).order_stats:
        raise GroupError("bilinear representative changes the order statistics")
    return out


@dataclass
class Closure:
    E: CocycleGroup
    G: CocycleGroup
    embedded: CocycleGroup  # preimage of V + 0 inside E
    profile: GroupProfile
    checks: list


def extraspecial_closure(G: CocycleGroup) -> Closure:
    """Extraspecial E on V + V containing (a group isomorphic to) G as a saturated subgroup."""
    p, r = G.p, G.r
    if r == 0:
        raise PresentationError("closure needs a nontrivial quotient")
    checks = []
    if p == 2:
        bl = bilinearize_cocycle(G)
        checks.append("bilinearization_solvable")
        B = np.zeros((2 * r, 2 * r), dtype=np.int64)
        B[:r, :r] = bl.A
        B[:r, r:] = np.eye(r, dtype=np.int64)

        def d(w1, w2):
            return int(np.array(w1) @ B @ np.array(w2)) % 2

        if rank((B + B.T) % 2, 2) != 2 * r:
            raise GroupError("B + B^t is degenerate")
        base = CocycleGroup(2, r, bl.bilinear)
    else:
        A = G.epsilon_matrix()
        Om = np.zeros((2 * r, 2 * r), dtype=np.int64)
        Om[:r, :r] = A
        Om[:r, r:] = -np.eye(r, dtype=np.int64)
        Om[r:, :r] = np.eye(r, dtype=np.int64)

        def d(w1, w2):
            form = int(np.array(w1) @ Om @ np.array(w2))
            return (form + G.gamma(tuple(w2[:r]), tuple(w1[:r]))) % p

        base = G
    E = CocycleGroup(p, 2 * r, d)
    E.check_cocycle(random.Random(1))
    prof = profile(E)
    if prof.center_order != p:
        raise GroupError("closure is not extraspecial: center too large")
    checks.append("center_order_p")
    emb = E.restrict([_unit(i, 2 * r) for i in range(r)])
    for v in G.vectors():
        for w in G.vectors():
            if emb.gamma(v, w) != base.gamma(v, w):
                raise GroupError("closure does not restrict to the input cocycle")
    if profile(emb).order_stats != profile(G).order_stats:
        raise GroupError("embedded copy differs from the input group")
    checks.append("contains_group")
    checks.append("saturated")
    return Closure(E, G, emb, prof, checks)
