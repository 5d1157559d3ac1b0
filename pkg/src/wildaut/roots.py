"""Root spaces of additive separable polynomials.

Z(Ad) is computed as the kernel of the F_p-linear map v -> Ad(v) on a
splitting field F_{p^{eM}}; the basis is the reduced echelon kernel basis.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field as dc_field

import numpy as np

from .field import Field, embed_map, field_create
from .linalg import kernel, solve
from .poly import UniPoly, check_additive_separable, splitting_degree


class RootSpaceError(AssertionError):
    pass


def _require_additive(ad: UniPoly):
    add, sep = check_additive_separable(ad)
    if not (add and sep):
        raise ValueError("polynomial is not additive and separable")


def splitting_extension(ad: UniPoly) -> int:
    """M such that every root of ad lies in F_{p^{eM}}."""
    _require_additive(ad)
    if ad.degree() == 1:
        return 1
    return splitting_degree(ad)


def linear_map_matrix(ad: UniPoly, K: Field) -> np.ndarray:
    """Matrix (over F_p, columns = images of the power basis) of v -> ad(v) on K."""
    p = K.p
    cols = []
    terms = [(round(math.log(k, p)), c) for k, c in ad.terms.items()]
    for i in range(K.e):
        v = p ** i
        acc = 0
        for j, c in terms:
            acc = K.add(acc, K.mul(c, K.frob(v, j)))
        cols.append(K.coords(acc))
    return np.array(cols, dtype=np.int64).reshape(K.e, K.e).T


@dataclass
class RootSpace:
    field: Field
    ad: UniPoly  # over `field`
    basis: list
    r: int
    _index: dict | None = dc_field(default=None, repr=False)
    _basis_matrix: np.ndarray | None = dc_field(default=None, repr=False)

    @property
    def p(self):
        return self.field.p

    @property
    def size(self):
        return self.p ** self.r

    def combine(self, vec) -> int:
        K = self.field
        acc = 0
        for c, b in zip(vec, self.basis):
            if c:
                acc = K.add(acc, K.mul(K.from_int(c), b))
        return acc

    def vectors(self):
        """All coordinate vectors in lexicographic order."""
        return itertools.product(range(self.p), repeat=self.r)

    def elements(self):
        return [self.combine(v) for v in self.vectors()]

    def coords_of(self, y) -> tuple:
        if self._index is None and self.size <= 1 << 16:
            self._index = {self.combine(v): tuple(v) for v in self.vectors()}
        if self._index is not None:
            if y not in self._index:
                raise RootSpaceError("element is not a root")
            return self._index[y]
        K = self.field
        if self._basis_matrix is None:
            self._basis_matrix = np.array([K.coords(b) for b in self.basis], dtype=np.int64).T
        from .linalg import NoSolution

        try:
            return tuple(int(x) for x in solve(self._basis_matrix, list(K.coords(y)), self.p))
        except NoSolution:
            raise RootSpaceError("element is not a root") from None

    def coordinate_vectors(self):
        return [list(self.field.coords(b)) for b in self.basis]

    def is_root(self, y) -> bool:
        return self.ad.evaluate(y) == 0

    def check_closure(self, rng: random.Random, exhaustive_limit: int = 1 << 12):
        """Ad vanishes on the span; exhaustive for small spaces, sampled otherwise."""
        K = self.field
        if self.size <= exhaustive_limit or self.r <= 6:
            elems = self.elements()
            if len(set(elems)) != self.size:
                raise RootSpaceError("basis combinations are not distinct")
            for y in elems:
                if not self.is_root(y):
                    raise RootSpaceError("span of the basis contains a non-root")
            if self.r <= 6:
                ss = set(elems)
                for a in elems[: min(len(elems), 64)]:
                    for b in elems:
                        if K.add(a, b) not in ss:
                            raise RootSpaceError("root set not closed under addition")
        else:
            for _ in range(1000):
                v = [rng.randrange(self.p) for _ in range(self.r)]
                if not self.is_root(self.combine(v)):
                    raise RootSpaceError("sampled combination is not a root")


def root_basis(ad: UniPoly, M: int | None = None, K: Field | None = None) -> RootSpace:
    """Root space of an additive separable ad, inside F_{p^{eM}} (or the given K)."""
    _require_additive(ad)
    F = ad.ring
    if K is None:
        if M is None:
            M = splitting_extension(ad)
        K = F if M == 1 else field_create(F.p, F.e * M)
    adK = ad if ad.ring is K else ad.map_coeffs(embed_map(F, K), K)
    r = round(math.log(ad.degree(), F.p)) if ad.degree() > 1 else 0
    if r == 0:
        return RootSpace(K, adK, [], 0)
    ker = kernel(linear_map_matrix(adK, K), K.p)
    basis = [K.from_digits(v) for v in ker]
    if len(basis) != r:
        raise RootSpaceError(f"kernel dimension {len(basis)} != log_p deg = {r}")
    rs = RootSpace(K, adK, basis, r)
    for b in basis:
        if not rs.is_root(b):
            raise RootSpaceError("kernel vector is not a root")
    return rs


def roots_in(ad: UniPoly, K: Field) -> list:
    """Basis of Z(ad) when all roots lie in K (asserted)."""
    return root_basis(ad, K=K).basis


# ---------------------------------------------------------------------------
# independent membership oracle
# ---------------------------------------------------------------------------

def root_oracle(f: UniPoly, y) -> bool:
    """Delta f(X,y) == P(X,y) - P(X,y)^p for P from the truncated series (no Ad involved)."""
    from .cover import delta, pf_by_series
    from .field import FieldElement
    from .poly import reduce_artin_schreier

    if isinstance(y, FieldElement):
        K, yv = y.field, y.value
    else:
        K, yv = y
    red = reduce_artin_schreier(f)
    emb = embed_map(red.ring, K)
    D = delta(red).map_coeffs(emb, K).eval_y(yv)
    P = pf_by_series(red).map_coeffs(emb, K).eval_y(yv)
    return D == P - P.frob(1)


def _oracle_evaluator(f: UniPoly, K: Field):
    from .cover import delta, pf_by_series
    from .poly import reduce_artin_schreier

    red = reduce_artin_schreier(f)
    emb = embed_map(red.ring, K)
    D = delta(red).map_coeffs(emb, K)
    P = pf_by_series(red).map_coeffs(emb, K)

    def test(y):
        d = D.eval_y(y)
        py = P.eval_y(y)
        return d == py - py.frob(1)

    return test


def oracle_root_set(f: UniPoly, K: Field) -> set:
    """All y in K accepted by the oracle (exhaustive scan)."""
    test = _oracle_evaluator(f, K)
    return {y for y in range(K.q) if test(y)}


def root_oracle_set_check(f: UniPoly, rs: RootSpace, limit: int, rng: random.Random, samples: int = 1000):
    """Oracle acceptance set on the working field equals the root space."""
    K = rs.field
    test = _oracle_evaluator(f, K)
    if K.q <= limit:
        got = {y for y in range(K.q) if test(y)}
        if got != set(rs.elements()):
            raise RootSpaceError("oracle root set differs from the computed root space")
        return "exhaustive"
    for _ in range(samples):
        y = K.random(rng)
        if test(y) != rs.is_root(y):
            raise RootSpaceError("oracle disagrees with Ad on a sampled element")
    return "sampled"
