"""Analysis of one Artin-Schreier cover W^p - W = f(X).

The pipeline: reduce f, form Delta f(X,Y) = f(X+Y) - f(X) - f(Y), split it as
F(X,Y) + P_f - P_f^p, take Ad_f as the monic gcd of the Y-coefficients of F,
and read the group law of the wild inertia group off P_f.

Group law convention used throughout: (y, c)(z, d) = (y + z, c + d + gamma(y, z))
with gamma(y, z) the constant P_f(X,y) + P_f(X+y,z) - P_f(X,y+z).
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field as dc_field

from .field import Field, common_field, embed_map, field_create
from .poly import (
    BiPoly,
    CoverError,
    UniPoly,
    check_additive_separable,
    cover_invariants,
    gcd_many,
    is_p_power,
    is_reduced,
    p_adic_split,
    poly_rem,
    reduce_artin_schreier,
    shift_by,
    shift_x,
)


class AnalysisError(AssertionError):
    """An internal invariant failed; signals a bug or a broken precondition."""


class CapExceeded(RuntimeError):
    """A configured size cap was exceeded (exit code 3)."""


# ---------------------------------------------------------------------------
# Delta and the decomposition
# ---------------------------------------------------------------------------

def delta(f: UniPoly) -> BiPoly:
    """f(X+Y) - f(X) - f(Y)."""
    R = f.ring
    fx = BiPoly(R, {(k, 0): c for k, c in f.terms.items()})
    fy = BiPoly(R, {(0, k): c for k, c in f.terms.items()})
    return shift_x(f) - fx - fy


def n_of(i: int, p: int, m: int) -> int:
    """max{n : i p^n < m}."""
    n = 0
    while i * p ** (n + 1) < m:
        n += 1
    return n


@dataclass(frozen=True)
class Decomposition:
    delta: BiPoly
    big_f: BiPoly
    p_f: BiPoly
    m: int

    def y_coefficients(self) -> dict[int, UniPoly]:
        return self.big_f.x_coefficients()


def _check_input(f: UniPoly, m: int | None):
    p = f.ring.p
    if not is_reduced(f):
        raise CoverError("input not reduced: an exponent is divisible by p")
    deg = f.degree()
    if m is None:
        m = deg
    if deg != m:
        raise CoverError(f"degree {deg} differs from conductor {m}")
    if m % p == 0:
        raise CoverError("degree divisible by p")
    return m


def decompose(f: UniPoly, m: int | None = None) -> Decomposition:
    """Unique split Delta f = F + (Id - F)P_f by monomial-wise Frobenius rewriting."""
    m = _check_input(f, m)
    R = f.ring
    p = R.p
    d = delta(f)
    big: dict = {}
    pf: dict = {}

    def acc(table, key, c):
        if key in table:
            v = R.add(table[key], c)
            if R.is_zero(v):
                del table[key]
            else:
                table[key] = v
        else:
            table[key] = c

    for (a, b), c in d.terms.items():
        i, t = p_adic_split(a, p)
        n = n_of(i, p, m)
        if t > n:
            raise AnalysisError("X-exponent of Delta f beyond the conductor range")
        k = n - t
        acc(big, (a * p ** k, b * p ** k), R.frob(c, k))
        for s in range(k):
            acc(pf, (a * p ** s, b * p ** s), R.frob(c, s))
    dec = Decomposition(d, BiPoly(R, big), BiPoly(R, pf), m)
    check_decomposition(dec, p)
    return dec


def check_decomposition(dec: Decomposition, p: int):
    if dec.big_f + dec.p_f - dec.p_f.frob(1) != dec.delta:
        raise AnalysisError("reconstruction F + P - P^p != Delta f")
    m = dec.m
    for (a, _b) in dec.big_f.terms:
        i, n = p_adic_split(a, p)
        if not (a < m <= i * p ** (n + 1)):
            raise AnalysisError(f"F has X-exponent {a} outside the allowed shape")
    bound = (m - 1) // p
    for (a, _b) in dec.p_f.terms:
        if a == 0 or a > bound:
            raise AnalysisError(f"P_f has X-exponent {a} outside [1, {bound}]")


def pf_by_series(f: UniPoly, m: int | None = None) -> BiPoly:
    """P_f as (Id + F + ... + F^n) Delta f truncated above X^((m-1)//p), p^n > (m-1)//p."""
    m = _check_input(f, m)
    p = f.ring.p
    bound = (m - 1) // p
    n = 0
    while p ** n <= bound:
        n += 1
    term = delta(f).truncate_x(bound)
    total = term
    for _ in range(n):
        term = term.frob(1).truncate_x(bound)
        total = total + term
    return total


# ---------------------------------------------------------------------------
# additive polynomial
# ---------------------------------------------------------------------------

def additive_polynomial(f: UniPoly, dec: Decomposition | None = None) -> UniPoly:
    """Ad_f: monic gcd of the Y-coefficients of F(X,Y) (field coefficients)."""
    if dec is None:
        dec = decompose(f)
    if not isinstance(f.ring, Field):
        raise TypeError("use generic.generic_additive_polynomial over a parameter ring")
    coeffs = list(dec.y_coefficients().values())
    if not coeffs:
        raise CoverError("F(X,Y) vanishes: degenerate cover")
    ad = gcd_many(coeffs)
    check_ad(ad, dec.m)
    return ad


def check_ad(ad: UniPoly, m: int):
    p = ad.ring.p
    add, sep = check_additive_separable(ad)
    if not (add and sep):
        raise AnalysisError(f"Ad_f is not additive and separable: {ad}")
    if ad.degree() > (m - 1) ** 2:
        raise AnalysisError("deg Ad_f exceeds (m-1)^2")
    if math.gcd(m - 1, p) == 1 and ad.degree() != 1:
        raise AnalysisError("Ad_f != Y although gcd(m-1, p) = 1")


def check_leading_coefficient_shape(dec: Decomposition, R, lead=None) -> None:
    """a_{m-1}(Y) - m c Y has only p-th power monomials (coefficient and exponent).

    c is the leading coefficient of f (1 for the universal family).
    """
    p = R.p
    m = dec.m
    lead = R.one if lead is None else lead
    a = dec.y_coefficients().get(m - 1, UniPoly(R))
    rest = a - UniPoly(R, {1: R.mul(R.scalar(m), lead)})
    for k, c in rest.terms.items():
        if k % p:
            raise AnalysisError(f"a_(m-1) has non-p-power exponent {k}")
        if isinstance(R, Field):
            continue
        if not R.is_pth_power(c):
            raise AnalysisError("a_(m-1) has a coefficient that is not a p-th power")
    if a.degree() > (m - 1) ** 2:
        raise AnalysisError("deg a_(m-1) exceeds (m-1)^2")


# ---------------------------------------------------------------------------
# cocycle values on explicit roots (all in one working field K)
# ---------------------------------------------------------------------------

def _prime_value(K: Field, poly: UniPoly, what: str) -> int:
    if poly.degree() > 0:
        raise AnalysisError(f"{what} is not constant in X: a root precondition is broken")
    c = poly.coeff(0)
    if c >= K.p:
        raise AnalysisError(f"{what} does not lie in F_p")
    return c


def gamma_checked(P: BiPoly, y, z):
    """gamma(y, z) from the full X-polynomial, asserting it is constant in X.

    The value lies in the working field and satisfies gamma - gamma^p = Delta f(y, z);
    it is in F_p exactly when Delta f(y, z) = 0.
    """
    K = P.ring
    a = P.eval_y(y)
    b = shift_by(P.eval_y(z), y)
    c = P.eval_y(K.add(y, z))
    d = a + b - c
    if d.degree() > 0:
        raise AnalysisError("gamma is not constant in X: a root precondition is broken")
    return d.coeff(0)


def gamma_fast(P: BiPoly, y, z):
    """gamma(y, z) = P_f(y, z); valid once constancy is known (P_f(0, .) = 0)."""
    return P.eval_xy(y, z)


def epsilon_checked(P: BiPoly, y, z) -> int:
    """P(X,y) + P(X+y,z) - P(X,z) - P(X+z,y), asserted to be an F_p constant."""
    K = P.ring
    v = K.sub(gamma_checked(P, y, z), gamma_checked(P, z, y))
    if v >= K.p:
        raise AnalysisError("epsilon does not lie in F_p")
    return v


def epsilon_fast(P: BiPoly, y, z) -> int:
    K = P.ring
    v = K.sub(P.eval_xy(y, z), P.eval_xy(z, y))
    if v >= K.p:
        raise AnalysisError("epsilon does not lie in F_p")
    return v


def power_constant_checked(P: BiPoly, y) -> int:
    """s(y) with sigma_y^p = rho^s(y).

    sigma_y acts as W -> W - P_f(X, y) + c, so its p-th power shifts W by
    -sum_{i<p} P_f(X + i y, y); that sum is asserted constant in F_p.
    """
    K = P.ring
    py = P.eval_y(y)
    total = UniPoly(K)
    iy = K.zero
    for _ in range(K.p):
        total = total + shift_by(py, iy)
        iy = K.add(iy, y)
    return -_prime_value(K, total, "power constant") % K.p


def power_constant_fast(P: BiPoly, y) -> int:
    K = P.ring
    acc = 0
    iy = K.zero
    for _ in range(K.p):
        v = P.eval_xy(iy, y)
        acc = K.add(acc, v)
        iy = K.add(iy, y)
    if acc >= K.p:
        raise AnalysisError("power constant outside F_p")
    return -acc % K.p


def root_criterion(delta_f: BiPoly, P: BiPoly, y) -> bool:
    """Delta f(X,y) == P(X,y) - P(X,y)^p."""
    d = delta_f.eval_y(y)
    py = P.eval_y(y)
    return d == py - py.frob(1)


# ---------------------------------------------------------------------------
# shapes
# ---------------------------------------------------------------------------

def is_x_times_additive(f: UniPoly):
    """(True, R) if f = X R(X) with R additive, else (False, None)."""
    p = f.ring.p
    if f.is_zero():
        return False, None
    if any(k < 2 or not is_p_power(k - 1, p) for k in f.terms):
        return False, None
    return True, UniPoly(f.ring, {k - 1: c for k, c in f.terms.items()})


# ---------------------------------------------------------------------------
# full analysis
# ---------------------------------------------------------------------------

@dataclass
class CoverReport:
    field: Field
    input: UniPoly
    red_f: UniPoly
    conductor: int
    genus: object
    decomposition: Decomposition
    ad: UniPoly
    roots: object  # roots.RootSpace
    group: object  # group.WildGroup
    profile: object  # group.GroupProfile
    label: object  # group.Label
    checks: list = dc_field(default_factory=list)
    timing: dict = dc_field(default_factory=dict)

    @property
    def p(self):
        return self.field.p

    @property
    def order(self):
        return self.profile.order

    def pf_in(self, K: Field) -> BiPoly:
        emb = embed_map(self.field, K)
        return self.decomposition.p_f.map_coeffs(emb, K)

    def ratio(self):
        """|G| / g as an exact fraction (None when g = 0)."""
        from fractions import Fraction

        g = Fraction((self.conductor - 1) * (self.p - 1), 2)
        return Fraction(self.order) / g if g else None


DEFAULT_EXHAUSTIVE = 1 << 12


def analyze(
    f: UniPoly,
    *,
    seed: int = 0,
    exhaustive_limit: int = DEFAULT_EXHAUSTIVE,
    max_order_exp: int = 13,
    degree_cap: int = 64,
    oracle: bool = False,
    checks: bool = True,
) -> CoverReport:
    """Compute every invariant of the cover W^p - W = f(X) and verify them."""
    from . import group as grp
    from .roots import root_basis, splitting_extension

    F = f.ring
    if not isinstance(F, Field):
        raise TypeError("analyze needs field coefficients; use generic.specialize for families")
    t0 = time.perf_counter()
    timing = {}
    passed = []
    red, m, genus = cover_invariants(f)
    if m < 2:
        raise CoverError("degenerate cover: conductor 1 (genus 0)")
    dec = decompose(red, m)
    passed.append("reconstruction")
    if checks:
        if pf_by_series(red, m) != dec.p_f:
            raise AnalysisError("decompose and truncated series disagree on P_f")
        passed.append("pf_series_agreement")
        check_leading_coefficient_shape(dec, F, red.lc())
        passed.append("leading_coefficient_shape")
    ad = additive_polynomial(red, dec)
    passed += ["ad_additive_separable", "ad_degree_bound"]
    timing["ad"] = time.perf_counter() - t0

    r = round(math.log(ad.degree(), F.p)) if ad.degree() > 1 else 0
    if r + 1 > max_order_exp:
        raise CapExceeded(f"group order p^{r + 1} exceeds cap p^{max_order_exp}")
    M = splitting_extension(ad)
    if F.e * M > degree_cap:
        raise CapExceeded(f"splitting field degree {F.e * M} exceeds cap {degree_cap}")
    rs = root_basis(ad, M=M)
    K = rs.field
    P = dec.p_f.map_coeffs(embed_map(F, K), K)
    timing["roots"] = time.perf_counter() - t0

    rng = random.Random(seed)
    if checks:
        D = dec.delta.map_coeffs(embed_map(F, K), K)
        for y in rs.basis:
            if not root_criterion(D, P, y):
                raise AnalysisError("root criterion fails on a basis root")
        passed.append("root_criterion_basis")
        _check_non_roots(red, dec, ad, F, K, rng, oracle=oracle)
        passed.append("root_criterion_non_roots")
        rs.check_closure(rng, exhaustive_limit)
        passed.append("root_closure")
        for y in rs.basis[:3]:
            for z in rs.basis[:3]:
                if gamma_checked(P, y, z) != gamma_fast(P, y, z):
                    raise AnalysisError("gamma disagreement")
            if power_constant_checked(P, y) != power_constant_fast(P, y):
                raise AnalysisError("power constant disagreement")
        passed.append("cocycle_constant")

    G = grp.WildGroup(rs, P, dec.delta.map_coeffs(embed_map(F, K), K))
    if checks:
        G.check_cocycle(rng, exhaustive_limit)
        passed.append("cocycle_identity")
        G.check_bilinear(rng)
        passed.append("epsilon_bilinear_alternating")
        if oracle:
            _exhaustive_oracle(red, dec, rs, F, exhaustive_limit, rng)
            passed.append("oracle_root_set")
    prof = grp.profile(G)
    label = grp.classify(G, prof)
    if prof.order != F.p * ad.degree():
        raise AnalysisError("group order != p deg Ad")
    timing["total"] = time.perf_counter() - t0
    return CoverReport(F, f, red, m, genus, dec, ad, rs, G, prof, label, passed, timing)


def _check_non_roots(red, dec, ad, F, K, rng, tries=3, oracle=False):
    """The root criterion must fail at non-roots; look for them in K or a quadratic extension of it."""
    target = K
    if ad.degree() >= K.q:
        if 2 * K.e > 64:
            return
        target = field_create(K.p, 2 * K.e)
    emb = embed_map(F, target)
    D = dec.delta.map_coeffs(emb, target)
    P = dec.p_f.map_coeffs(emb, target)
    adT = ad.map_coeffs(emb, target)
    found = 0
    for _ in range(50 * tries):
        y = target.random(rng)
        if adT.evaluate(y) == 0:
            if not root_criterion(D, P, y):
                raise AnalysisError("root criterion fails at a root of Ad_f")
            continue
        if root_criterion(D, P, y):
            raise AnalysisError("root criterion holds at a non-root of Ad_f")
        found += 1
        if found == tries:
            return


ORACLE_EXHAUSTIVE = 1 << 16


def _exhaustive_oracle(red, dec, rs, F, limit, rng):
    from .roots import root_oracle_set_check

    root_oracle_set_check(red, rs, max(limit, ORACLE_EXHAUSTIVE), rng)


# ---------------------------------------------------------------------------
# modifications
# ---------------------------------------------------------------------------

@dataclass
class ModificationResult:
    report: CoverReport
    base: CoverReport | None
    divisor: UniPoly  # Ad_f(S(Y)) resp. Ad_red(g)
    checks: list


def _embed_poly(u: UniPoly, K: Field) -> UniPoly:
    return u.map_coeffs(embed_map(u.ring, K), K)


def _lift(u: UniPoly, K: Field) -> UniPoly:
    return u if u.ring is K else _embed_poly(u, K)


def modify_type1(f: UniPoly, S: UniPoly, **kw) -> ModificationResult:
    """Analyze red(f o S), checking Ad_f(S(Y)) | Ad and epsilon compatibility."""
    from .roots import roots_in

    add, sep = check_additive_separable(S)
    if not (add and sep):
        raise CoverError("S must be additive and separable")
    Fc = common_field(f.ring, S.ring)
    f, S = _lift(f, Fc), _lift(S, Fc)
    base = analyze(f, **kw)
    comp = reduce_artin_schreier(f.compose(S))
    rep = analyze(comp, **kw)
    div = base.ad.compose(S)
    K = rep.roots.field
    if not poly_rem(_lift(rep.ad, K), _lift(div, K)).is_zero() and not poly_rem(
        _lift(rep.ad, Fc), _lift(div, Fc)
    ).is_zero():
        raise AnalysisError("Ad_f(S(Y)) does not divide Ad of the composite")
    basis = roots_in(_lift(div, K), K)
    Pf = base.pf_in(K)
    Pg = rep.group.P
    SK = _lift(S, K)
    for y in basis:
        for z in basis:
            e1 = epsilon_checked(Pf, SK.evaluate(y), SK.evaluate(z))
            e2 = epsilon_checked(Pg, y, z)
            if e1 != e2:
                raise AnalysisError("epsilon compatibility fails for type-1 modification")
    return ModificationResult(rep, base, div, ["type1_divisibility", "type1_epsilon"])


def modify_type2(f: UniPoly, g: UniPoly, **kw) -> ModificationResult:
    """Analyze f + g under Ad_red(g) | Ad_red(f); checks additivity of epsilon."""
    from .roots import roots_in

    Fc = common_field(f.ring, g.ring)
    f, g = _lift(f, Fc), _lift(g, Fc)
    rf, rg, rfg = (reduce_artin_schreier(u) for u in (f, g, f + g))
    if rf.is_zero() or rg.is_zero() or rfg.is_zero():
        raise CoverError("not a type-2 modification: a reduced polynomial vanishes")
    af, ag = additive_polynomial(rf), additive_polynomial(rg)
    if not poly_rem(af, ag).is_zero():
        raise CoverError("not a type-2 modification: Ad_red(g) does not divide Ad_red(f)")
    rep = analyze(f + g, **kw)
    if not poly_rem(rep.ad, ag).is_zero():
        raise AnalysisError("Ad_red(g) does not divide Ad_red(f+g)")
    K = rep.roots.field
    emb = embed_map(Fc, K)
    Pf = decompose(rf).p_f.map_coeffs(emb, K)
    Pg = decompose(rg).p_f.map_coeffs(emb, K)
    basis = roots_in(_lift(ag, K), K)
    for y in basis:
        for z in basis:
            lhs = epsilon_checked(rep.group.P, y, z)
            rhs = (epsilon_checked(Pf, y, z) + epsilon_checked(Pg, y, z)) % K.p
            if lhs != rhs:
                raise AnalysisError("epsilon additivity fails for type-2 modification")
    return ModificationResult(rep, None, ag, ["type2_divisibility", "type2_epsilon"])
