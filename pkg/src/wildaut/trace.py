"""Symbolic views of an analysis reduced modulo Ad: P_f mod Ad, the p-th power
polynomial and its gcd with Ad, and the commutator polynomial in (Y, Z).

These mirror a hand computation in a CAS session and serve as an extra
cross-check of the numeric group data.
"""

from __future__ import annotations

from dataclasses import dataclass

from .poly import BiPoly, UniPoly, binom_mod, field_gcd, poly_rem


class TraceError(AssertionError):
    pass


class _PowerTable:
    """Y^k mod Ad, memoized."""

    def __init__(self, ad: UniPoly):
        self.ad = ad
        self.R = ad.ring
        self.cache = {}

    def __call__(self, k: int) -> dict:
        r = self.cache.get(k)
        if r is None:
            if k < self.ad.degree():
                r = {k: self.R.one}
            else:
                r = dict(poly_rem(UniPoly.monomial(self.R, k), self.ad).terms)
            self.cache[k] = r
        return r


def _acc(d, key, c, R):
    v = R.add(d.get(key, R.zero), c)
    if R.is_zero(v):
        d.pop(key, None)
    else:
        d[key] = v


def reduce_y(P: BiPoly, ad: UniPoly) -> BiPoly:
    """Reduce the Y-exponents of P modulo ad(Y)."""
    R = P.ring
    table = _PowerTable(ad)
    out = {}
    for (a, b), c in P.terms.items():
        for k, d in table(b).items():
            _acc(out, (a, k), R.mul(c, d), R)
    return BiPoly(R, out)


def _shifted_terms(P: BiPoly, i: int):
    """Terms of P(X + iY, Y) as ((x_exp, y_exp), coeff)."""
    R = P.ring
    p = R.p
    for (a, b), c in P.terms.items():
        if i == 0:
            yield (a, b), c
            continue
        for k in range(a + 1):
            bn = binom_mod(a, k, p) * pow(i, a - k, p) % p
            if bn:
                yield (k, b + a - k), R.mul(c, R.from_int(bn))


def power_polynomial(P: BiPoly, ad: UniPoly) -> UniPoly:
    """sum_{i<p} P(X + iY, Y) mod ad(Y); asserted free of X."""
    R = P.ring
    table = _PowerTable(ad)
    out = {}
    for i in range(R.p):
        for (a, b), c in _shifted_terms(P, i):
            for k, d in table(b).items():
                _acc(out, (a, k), R.mul(c, d), R)
    if any(a for a, _ in out):
        raise TraceError("p-th power sum depends on X modulo Ad")
    return UniPoly(R, {k: c for (_, k), c in out.items()})


def commutator_polynomial(P: BiPoly, ad: UniPoly) -> BiPoly:
    """P(X,Y) + P(X+Y,Z) - P(X,Z) - P(X+Z,Y) reduced mod ad(Y), ad(Z).

    Returned as a BiPoly whose first variable is Y and second is Z;
    asserted free of X.
    """
    R = P.ring
    p = R.p
    table = _PowerTable(ad)
    out = {}

    def add(x, y, z, c):
        for ky, dy in table(y).items():
            for kz, dz in table(z).items():
                _acc(out, (x, ky, kz), R.mul(c, R.mul(dy, dz)), R)

    for (a, b), c in P.terms.items():
        nc = R.neg(c)
        add(a, b, 0, c)
        add(a, 0, b, nc)
        for k in range(a + 1):
            bn = binom_mod(a, k, p)
            if not bn:
                continue
            cb = R.mul(c, R.from_int(bn))
            add(k, a - k, b, cb)  # P(X+Y, Z)
            add(k, b, a - k, R.neg(cb))  # -P(X+Z, Y)
    if any(x for x, _, _ in out):
        raise TraceError("commutator polynomial depends on X modulo Ad")
    return BiPoly(R, {(y, z): c for (_, y, z), c in out.items()})


@dataclass
class Trace:
    delta: BiPoly
    big_f: BiPoly
    p_f_reduced: BiPoly
    ad: UniPoly
    power_poly: UniPoly
    power_gcd: UniPoly
    commutator: BiPoly


def build_trace(report) -> Trace:
    dec = report.decomposition
    ad = report.ad
    F = dec.p_f.ring
    if ad.ring is not F:
        raise TraceError("Ad and P_f live over different rings")
    P = reduce_y(dec.p_f, ad)
    s = power_polynomial(P, ad)
    g = field_gcd(ad, s) if not s.is_zero() else ad
    eps = commutator_polynomial(P, ad)
    return Trace(dec.delta, dec.big_f, P, ad, s, g, eps)
