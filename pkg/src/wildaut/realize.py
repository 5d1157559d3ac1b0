"""Constructors of polynomials f whose wild inertia group has a prescribed type."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .field import Field, common_field, embed_map, field_create
from .poly import (
    BiPoly,
    UniPoly,
    check_additive_separable,
    poly_rem,
    reduce_with_witness,
)


class RealizationError(ValueError):
    pass


class ConstructionFailure(AssertionError):
    """A verified identity of a construction failed (internal error)."""


def _xpow(R, k, c=None):
    return UniPoly.monomial(R, k, c)


# ---------------------------------------------------------------------------
# linearized family X * (additive)
# ---------------------------------------------------------------------------

def realize_linearized(p: int, n: int, t=None, ring=None) -> UniPoly:
    """t_0 X^2 + t_1 X^{1+p} + ... + t_{n-1} X^{1+p^{n-1}} + X^{1+p^n}."""
    if n < 1:
        raise RealizationError("n must be at least 1")
    R = ring or field_create(p)
    t = list(t) if t is not None else [R.zero] * n
    if len(t) != n:
        raise RealizationError(f"expected {n} parameters")
    if p == 2 and not R.is_zero(t[0]):
        raise RealizationError("p = 2 requires t_0 = 0")
    terms = {1 + p ** i: c for i, c in enumerate(t)}
    terms[1 + p ** n] = R.one
    return UniPoly(R, terms)


def linearized_ad_closed_form(p: int, n: int, t=None, ring=None) -> UniPoly:
    """sum_i (t_i^{p^{n-i}} Y^{p^{n-i}} + t_i^{p^n} Y^{p^{n+i}}) with t_n = 1."""
    R = ring or field_create(p)
    t = list(t) if t is not None else [R.zero] * n
    t = t + [R.one]
    out = UniPoly(R)
    for i, c in enumerate(t):
        out = out + UniPoly(R, {p ** (n - i): R.frob(c, n - i)}) + UniPoly(R, {p ** (n + i): R.frob(c, n)})
    return out


# ---------------------------------------------------------------------------
# Witt-vector constructions
# ---------------------------------------------------------------------------

def witt_cocycle(p: int) -> BiPoly:
    """((X+Y)^p - X^p - Y^p)/p = sum_{0<i<p} (-1)^{i-1}/i X^i Y^{p-i} over F_p."""
    if p == 2:
        raise RealizationError("the Witt cocycle construction needs p > 2")
    F = field_create(p)
    terms = {}
    for i in range(1, p):
        c = pow(i, p - 2, p)
        if i % 2 == 0:
            c = -c % p
        terms[(i, p - i)] = c
    return BiPoly(F, terms)


def realize_cyclic_p2(p: int, ring=None) -> UniPoly:
    """f_1(X) = c(X^p, -X) = sum_{0<i<p} (1/i) X^{p+(p-1)i}."""
    if p == 2:
        raise RealizationError("the p^2-cyclic construction needs p > 2")
    R = ring or field_create(p)
    return UniPoly(R, {p + (p - 1) * i: R.from_int(pow(i, p - 2, p)) for i in range(1, p)})


def first_theta(p: int, n: int):
    """(K, theta): first theta in F_{q^4} (encoding order) with theta^{q^2-1} = -1."""
    q = p ** n
    K = field_create(p, 4 * n)
    minus_one = K.from_int(-1)
    for th in range(1, K.q):
        if K.pow(th, q * q - 1) == minus_one:
            return K, th
    raise ConstructionFailure("no theta with theta^(q^2-1) = -1")


@dataclass
class TypeIIData:
    f: UniPoly
    theta: int
    A: UniPoly
    S: UniPoly
    f1_of_S: UniPoly
    f2: UniPoly


def realize_type_II_data(p: int, n: int) -> TypeIIData:
    if p == 2:
        raise RealizationError("type II needs p > 2")
    if n < 1:
        raise RealizationError("n must be at least 1")
    q = p ** n
    K, th = first_theta(p, n)
    A = UniPoly(K, {q: th, 1: K.neg(K.frob(th, n))})
    S = UniPoly(K)
    for k in range(n):
        S = S + A.frob(k)
    rhs = UniPoly(K, {q * q: K.frob(th, n), 1: K.frob(th, n)})
    if S.frob(1) - S != rhs:
        raise ConstructionFailure("S^p - S != theta^q (X^{q^2} + X)")
    f1 = realize_cyclic_p2(p, K)
    f1S = f1.compose(S)
    f2 = _xpow(K, 1 + q)
    return TypeIIData(f1S + f2, th, A, S, f1S, f2)


def realize_type_II(p: int, n: int) -> UniPoly:
    """f_1(S(X)) + X^{1+q}; extraspecial of order p^{2n+1} and exponent p^2."""
    return realize_type_II_data(p, n).f


@dataclass
class TypeIIFamilyData:
    f: UniPoly
    theta: int
    S: UniPoly
    f2: UniPoly
    ad_f2: UniPoly
    alpha_relation_holds: bool


def realize_type_II_family(p: int, n: int, t, field: Field) -> TypeIIFamilyData:
    """Specialized multi-parameter type II family: f = f_1(S(X)) + f_2(X).

    f_2 = sum_k t_k^q X^{1+p^k} + X^{1+q}; theta != 0 is chosen with
    red(theta Ad_{f_2}) = 0, and S is the witness theta Ad_{f_2} = S^p - S.
    """
    from .cover import additive_polynomial
    from .roots import root_basis

    if p == 2:
        raise RealizationError("type II needs p > 2")
    t = list(t)
    if len(t) != n:
        raise RealizationError(f"expected {n} parameters")
    q = p ** n
    F = field
    f2 = UniPoly(F, {1 + p ** k: F.frob(c, n) for k, c in enumerate(t)}) + _xpow(F, 1 + q)
    ad = additive_polynomial(f2)
    # theta -> sum_j (theta a_j)^{p^{2n-j}} is F_p-linear; its kernel gives admissible theta
    deg_exp = {_logp(k, p): c for k, c in ad.terms.items()}
    top = max(deg_exp)
    L = UniPoly(F, {p ** (top - j): F.frob(c, top - j) for j, c in deg_exp.items()})
    rs = root_basis(L)
    K = rs.field
    theta = next(iter(sorted(x for x in rs.elements() if x)), None)
    if theta is None:
        raise ConstructionFailure("no nonzero theta")
    adK = ad.map_coeffs(embed_map(F, K), K)
    red, S, const = reduce_with_witness(adK.scale(theta))
    if not red.is_zero() or const != 0:
        raise ConstructionFailure("theta Ad_{f_2} is not of the form S^p - S")
    if S.frob(1) - S != adK.scale(theta):
        raise ConstructionFailure("witness identity S^p - S = theta Ad fails")
    alpha = K.frob(theta, -top)
    tk = [embed_map(F, K)(c) for c in t]
    rel = K.add(K.frob(alpha, 2 * n), alpha)
    # k = 0 contributes 2 alpha^{p^n} t_0^{p^n}; without it the relation only holds for t_0 = 0
    for k in range(n):
        rel = K.add(rel, K.mul(K.frob(alpha, n + k), K.frob(tk[k], n)))
        rel = K.add(rel, K.mul(K.frob(alpha, n - k), K.frob(tk[k], n - k)))
    if rel != 0:
        raise ConstructionFailure("alpha relation fails for theta = alpha^{p^{2n}}")
    f1 = realize_cyclic_p2(p, K)
    f2K = f2.map_coeffs(embed_map(F, K), K)
    return TypeIIFamilyData(f1.compose(S) + f2K, theta, S, f2K, adK, True)


def _logp(k, p):
    j = 0
    while k > 1:
        k //= p
        j += 1
    return j


# ---------------------------------------------------------------------------
# saturated subgroups
# ---------------------------------------------------------------------------

def _base_polynomial(p: int, n: int, base: str):
    q = p ** n
    if base == "IIIb":
        if p != 2:
            raise RealizationError("base IIIb needs p = 2")
        F = field_create(2)
        return _xpow(F, 1 + q)
    if p == 2:
        raise RealizationError(f"base {base} needs p > 2")
    if base == "I":
        return _xpow(field_create(p), 1 + q)
    if base == "II":
        return realize_type_II(p, n)
    raise RealizationError(f"unknown base {base!r}")


def saturated_exponent(p: int) -> int:
    """l + 1 in S_F^{l+1}: 7 for p = 2, 5 for p = 3, 3 for p > 3."""
    if p == 2:
        return 7
    return 5 if p == 3 else 3


def realize_saturated(p: int, n: int, S_F: UniPoly, base: str) -> UniPoly:
    """S_F(X)^{l+1} + (realization of the ambient extraspecial group)."""
    q = p ** n
    add, sep = check_additive_separable(S_F)
    if not (add and sep) or S_F.lc() != S_F.ring.one:
        raise RealizationError("S_F must be monic additive separable")
    if not 0 < S_F.degree() < q * q:
        raise RealizationError("degenerate dimension: need 0 < deg S_F < q^2")
    f0 = _base_polynomial(p, n, base)
    K = common_field(S_F.ring, f0.ring)
    S = S_F if S_F.ring is K else S_F.map_coeffs(embed_map(S_F.ring, K), K)
    f0 = f0 if f0.ring is K else f0.map_coeffs(embed_map(f0.ring, K), K)
    full = UniPoly(K, {q * q: K.one, 1: K.one})
    if not poly_rem(full, S).is_zero():
        raise RealizationError("S_F does not divide Y^{q^2} + Y")
    return S ** saturated_exponent(p) + f0


def subspace_polynomial(K: Field, elems) -> UniPoly:
    """prod_{u in U} (Y - u) for a finite additive subgroup U of K."""
    out = UniPoly.constant(K, K.one)
    for u in elems:
        out = out * UniPoly(K, {1: K.one, 0: K.neg(u)})
    return out


def proper_subspaces(rs):
    """All proper nonzero subspaces of a root space, as bases in reduced echelon form."""
    p, r = rs.p, rs.r
    seen = set()
    out = []
    for k in range(1, r):
        for rows in _rref_matrices(p, r, k):
            key = tuple(map(tuple, rows))
            if key in seen:
                continue
            seen.add(key)
            out.append(rows)
    return out


def _rref_matrices(p, r, k):
    """Reduced row echelon k x r matrices over F_p of rank k."""
    for pivots in itertools.combinations(range(r), k):
        free = [(i, j) for i in range(k) for j in range(r) if j > pivots[i] and j not in pivots]
        for vals in itertools.product(range(p), repeat=len(free)):
            M = [[0] * r for _ in range(k)]
            for i, pc in enumerate(pivots):
                M[i][pc] = 1
            for (i, j), v in zip(free, vals):
                M[i][j] = v
            yield M


def additive_divisors(rs):
    """[(basis rows, S_F)] for every proper nonzero subspace of the root space."""
    K = rs.field
    out = []
    for rows in proper_subspaces(rs):
        span = set()
        for coeffs in itertools.product(range(rs.p), repeat=len(rows)):
            v = [sum(c * row[j] for c, row in zip(coeffs, rows)) % rs.p for j in range(rs.r)]
            span.add(rs.combine(v))
        out.append((rows, subspace_polynomial(K, sorted(span))))
    return out


# ---------------------------------------------------------------------------
# conductor 25 family
# ---------------------------------------------------------------------------

D8_CASES = ("1", "2i", "2ii", "2iii")
D8_EXPECTED = {"1": "Z/2xZ/4", "2i": "(Z/2)^3", "2ii": "D8", "2iii": "Q8"}


@dataclass
class D8Case:
    f: UniPoly
    a: int
    b: int
    S_F: UniPoly
    field: Field


def first_of_order(K: Field, k: int) -> int:
    for x in range(1, K.q):
        if K.mult_order(x) == k:
            return x
    raise ConstructionFailure(f"no element of order {k}")


def d8_parameters(case: str):
    K = field_create(2, 4)
    if case == "1":
        b = first_of_order(K, 5)
        a = 0
    else:
        b = first_of_order(K, 15)
        a = K.pow(b, {"2i": 14, "2ii": 4, "2iii": 9}[case])
    return K, a, b


def realize_D8_family(case: str) -> D8Case:
    """f_{a,b} = (X^4 + a X^2 + b X)^7 + X^5 over F_16."""
    if case not in D8_CASES:
        raise RealizationError(f"case must be one of {D8_CASES}")
    K, a, b = d8_parameters(case)
    pw = K.pow
    c1 = K.add(K.add(1, pw(b, 5)), K.mul(b, pw(a, 6)))
    c2 = K.add(K.add(K.mul(pw(b, 2), pw(a, 4)), K.mul(a, pw(b, 4))), pw(a, 7))
    if c1 or c2:
        raise ConstructionFailure("constraint equations fail for the chosen (a, b)")
    S = UniPoly(K, {4: 1, 2: a, 1: b})
    full = UniPoly(K, {16: 1, 1: 1})
    if not poly_rem(full, S).is_zero():
        raise ConstructionFailure("X^4 + aX^2 + bX does not divide Y^16 + Y")
    return D8Case(S ** 7 + _xpow(K, 5), a, b, S, K)


def printed_red_2ii(K: Field, b: int) -> UniPoly:
    """The closed form of red(f_{a,b}) in case 2ii, as a polynomial in b."""
    pw = K.pow

    def s(*exps):
        acc = 0
        for e in exps:
            acc = K.add(acc, 1 if e == 0 else pw(b, e))
        return acc

    return UniPoly(K, {
        1: s(14, 5), 3: s(1, 8), 5: s(0, 14, 13), 7: s(7, 0), 9: s(13, 10),
        11: s(4, 1, 6), 13: s(2, 0), 17: s(2), 19: s(3), 21: s(9), 25: s(1),
    })


def classic_D8_example() -> UniPoly:
    """X^3 + X^7 + X^19 + X^35 + X^41 over F_2."""
    F = field_create(2)
    return UniPoly(F, {3: 1, 7: 1, 19: 1, 35: 1, 41: 1})
