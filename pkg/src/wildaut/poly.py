"""Sparse univariate and bivariate polynomials over a coefficient ring.

A coefficient ring is either a :class:`~wildaut.field.Field` (coefficients are
raw integers) or a :class:`~wildaut.paramring.ParamRing` (multivariate
polynomials over F_p).  Both expose ``p``, ``zero``, ``one``, ``is_zero``,
``add``, ``sub``, ``neg``, ``mul``, ``scalar`` and ``frob`` (the p-power map).

Also here: the Artin-Schreier reduction red(f), cover invariants, gcd,
distinct-degree profiles, root extraction and additivity tests.
"""

from __future__ import annotations

import math
import random

import numpy as np

from .field import Field


class CoverError(ValueError):
    """A polynomial that does not define a usable cover (exit code 2)."""


def binom_mod(n: int, k: int, p: int) -> int:
    """C(n, k) mod p by Lucas' theorem."""
    if k < 0 or k > n:
        return 0
    r = 1
    while n or k:
        a, b = n % p, k % p
        if b > a:
            return 0
        r = r * math.comb(a, b) % p
        n //= p
        k //= p
    return r


def p_adic_split(k: int, p: int) -> tuple[int, int]:
    """Write k = i * p^j with gcd(i, p) = 1; returns (i, j)."""
    j = 0
    while k and k % p == 0:
        k //= p
        j += 1
    return k, j


def is_p_power(k: int, p: int) -> bool:
    i, _ = p_adic_split(k, p)
    return i == 1


class UniPoly:
    """Sparse polynomial in one variable: ``terms`` maps exponent -> nonzero coefficient."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms=None):
        self.ring = ring
        if terms:
            z = ring.is_zero
            self.terms = {k: c for k, c in terms.items() if not z(c)}
        else:
            self.terms = {}

    @classmethod
    def monomial(cls, ring, k: int, c=None):
        return cls(ring, {k: ring.one if c is None else c})

    @classmethod
    def constant(cls, ring, c):
        return cls(ring, {0: c})

    @classmethod
    def from_dense(cls, ring, coeffs):
        return cls(ring, {i: c for i, c in enumerate(coeffs)})

    # -- basic queries --

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max(self.terms) if self.terms else -1

    def lc(self):
        return self.terms[self.degree()] if self.terms else self.ring.zero

    def coeff(self, k: int):
        return self.terms.get(k, self.ring.zero)

    def exponents(self):
        return sorted(self.terms)

    def low_degree(self) -> int:
        return min(self.terms) if self.terms else -1

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.ring is other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"UniPoly({format_poly(self, 'X')})"

    # -- arithmetic --

    def __add__(self, other):
        R = self.ring
        t = dict(self.terms)
        for k, c in other.terms.items():
            if k in t:
                v = R.add(t[k], c)
                if R.is_zero(v):
                    del t[k]
                else:
                    t[k] = v
            else:
                t[k] = c
        return _raw(R, t)

    def __neg__(self):
        R = self.ring
        return _raw(R, {k: R.neg(c) for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return self.scale(other)
        R = self.ring
        t: dict = {}
        add, mul = R.add, R.mul
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                k = i + j
                v = mul(a, b)
                if k in t:
                    t[k] = add(t[k], v)
                else:
                    t[k] = v
        return UniPoly(R, t)

    def scale(self, c):
        R = self.ring
        if R.is_zero(c):
            return UniPoly(R)
        return UniPoly(R, {k: R.mul(v, c) for k, v in self.terms.items()})

    def shift_exponents(self, d: int):
        return _raw(self.ring, {k + d: c for k, c in self.terms.items()})

    def frob(self, j: int = 1):
        """F^j: raise to the p^j-th power (exponents times p^j, coefficients twisted)."""
        if j == 0:
            return self
        R = self.ring
        pj = R.p ** j
        return _raw(R, {k * pj: R.frob(c, j) for k, c in self.terms.items()})

    def map_coeffs(self, fn, ring=None):
        return UniPoly(ring or self.ring, {k: fn(c) for k, c in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        R = self.ring
        result = UniPoly.constant(R, R.one)
        j = 0
        p = R.p
        while k:
            d = k % p
            if d:
                base = self.frob(j)
                for _ in range(d):
                    result = result * base
            k //= p
            j += 1
        return result

    def derivative(self):
        R = self.ring
        return UniPoly(R, {k - 1: R.mul(c, R.scalar(k)) for k, c in self.terms.items() if k % R.p})

    def evaluate(self, x):
        """Value at a ring element x."""
        R = self.ring
        acc = R.zero
        if not self.terms:
            return acc
        if getattr(R, "e", 1) > 1 and not getattr(R, "tables", True):
            px = power_table(R, x)
            for k, c in self.terms.items():
                acc = R.add(acc, R.mul(c, px(k)))
            return acc
        # Horner over sorted exponents
        exps = sorted(self.terms, reverse=True)
        prev = exps[0]
        acc = self.terms[prev]
        for k in exps[1:]:
            acc = R.add(R.mul(acc, R.pow(x, prev - k)), self.terms[k])
            prev = k
        return R.mul(acc, R.pow(x, prev)) if prev else acc

    def compose(self, S: "UniPoly") -> "UniPoly":
        """self(S(X))."""
        R = self.ring
        p = R.p
        cache: dict = {}

        def frob_pow(j, d):
            key = (j, d)
            if key not in cache:
                if d == 1:
                    cache[key] = S.frob(j)
                else:
                    cache[key] = frob_pow(j, d - 1) * frob_pow(j, 1)
            return cache[key]

        out = UniPoly(R)
        for k, c in self.terms.items():
            term = UniPoly.constant(R, c)
            j = 0
            while k:
                d = k % p
                if d:
                    term = term * frob_pow(j, d)
                k //= p
                j += 1
            out = out + term
        return out

    def monic(self):
        R = self.ring
        if not self.terms:
            return self
        return self.scale(R.inv(self.lc()))

    def divmod(self, other: "UniPoly"):
        """Euclidean division over a field."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.ring
        db = other.degree()
        inv = F.inv(other.lc())
        r = dict(self.terms)
        q: dict = {}
        bterms = [(k, c) for k, c in other.terms.items() if k != db]
        while r:
            dr = max(r)
            if dr < db:
                break
            c = F.mul(r.pop(dr), inv)
            q[dr - db] = c
            off = dr - db
            for k, b in bterms:
                kk = k + off
                v = F.sub(r.get(kk, 0), F.mul(c, b))
                if v:
                    r[kk] = v
                else:
                    r.pop(kk, None)
        return UniPoly(F, q), UniPoly(F, r)

    def __mod__(self, other):
        return poly_rem(self, other)

    def __floordiv__(self, other):
        return self.divmod(other)[0]


def _raw(ring, t):
    u = UniPoly.__new__(UniPoly)
    u.ring = ring
    u.terms = t
    return u


def X(ring) -> UniPoly:
    return UniPoly.monomial(ring, 1)


# ---------------------------------------------------------------------------
# dense kernels over fields
# ---------------------------------------------------------------------------

def _is_prime_field(R) -> bool:
    return isinstance(R, Field) and R.e == 1


def _np_dense(u: UniPoly) -> np.ndarray:
    a = np.zeros(u.degree() + 1, dtype=np.int64)
    for k, c in u.terms.items():
        a[k] = c
    return a


def _np_trim(a):
    nz = np.nonzero(a)[0]
    return a[: nz[-1] + 1] if nz.size else a[:0]


def _np_to_poly(R, a) -> UniPoly:
    nz = np.nonzero(a)[0]
    return _raw(R, {int(k): int(a[k]) for k in nz})


def _np_rem(a, b, p):
    """a mod b over F_p, dense low-first arrays; b trimmed, nonzero."""
    a = a.copy() % p
    db = len(b) - 1
    if len(a) - 1 < db:
        return _np_trim(a)
    inv = pow(int(b[-1]), p - 2, p)
    bm = b * inv % p
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            a[i - db:i + 1] = (a[i - db:i + 1] - c * bm) % p
    return _np_trim(a[:db])


def _np_mulmod(a, b, m, p):
    if len(a) == 0 or len(b) == 0:
        return a[:0]
    return _np_rem(np.convolve(a, b) % p, m, p)


def _np_gcd(a, b, p):
    a, b = _np_trim(a % p), _np_trim(b % p)
    while len(b):
        a, b = b, _np_rem(a, b, p)
    if len(a):
        a = a * pow(int(a[-1]), p - 2, p) % p
    return a


def _np_xpow_mod(k, m, p):
    """X^k mod m."""
    result = np.array([1], dtype=np.int64)
    base = _np_rem(np.array([0, 1], dtype=np.int64), m, p)
    while k:
        if k & 1:
            result = _np_mulmod(result, base, m, p)
        k >>= 1
        if k:
            base = _np_mulmod(base, base, m, p)
    return _np_rem(result, m, p)


def _sparse_rem_np(u: UniPoly, g: UniPoly):
    """u mod g for u with huge sparse exponents and small g, over F_p."""
    p = u.ring.p
    m = _np_trim(_np_dense(g))
    dg = len(m) - 1
    acc = np.zeros(max(dg, 1), dtype=np.int64)
    # monomials via powers reused along sorted exponents
    prev_k, prev_val = 0, np.array([1], dtype=np.int64)
    for k in sorted(u.terms):
        step = _np_xpow_mod(k - prev_k, m, p)
        val = _np_mulmod(prev_val, step, m, p)
        prev_k, prev_val = k, val
        c = u.terms[k]
        acc[: len(val)] = (acc[: len(val)] + c * val) % p
    return _np_trim(acc[:dg] if dg else acc[:0])


def poly_rem(u: UniPoly, g: UniPoly) -> UniPoly:
    """Remainder of u modulo g over a field."""
    R = u.ring
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if u.degree() < g.degree():
        return u
    if _is_prime_field(R):
        du, dg = u.degree(), g.degree()
        if du > 8 * dg + 64 and len(u.terms) * max(1, du.bit_length()) < du:
            return _np_to_poly(R, _sparse_rem_np(u, g))
        return _np_to_poly(R, _np_rem(_np_dense(u), _np_trim(_np_dense(g)), R.p))
    return u.divmod(g)[1]


def field_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over a field (Euclid)."""
    R = a.ring
    if b.ring is not R:
        raise ValueError("domain mismatch")
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if _is_prime_field(R):
        if a.degree() < b.degree():
            a, b = b, a
        a = poly_rem(a, b)
        return _np_to_poly(R, _np_gcd(_np_dense(b), _np_dense(a), R.p))
    while not b.is_zero():
        a, b = b, poly_rem(a, b)
    return a.monic()


def gcd_many(polys) -> UniPoly:
    """Monic gcd of several polynomials over a field, smallest degrees first."""
    polys = sorted((u for u in polys if not u.is_zero()), key=lambda u: (u.degree(), len(u.terms)))
    if not polys:
        raise ValueError("gcd of no nonzero polynomials")
    g = polys[0].monic()
    for u in polys[1:]:
        if g.degree() == 0:
            break
        g = field_gcd(g, poly_rem(u, g))
    return g


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """gcd over a field (monic) or over a parameter ring (primitive, via subresultant PRS)."""
    if a.ring is not b.ring:
        raise ValueError("domain mismatch")
    if isinstance(a.ring, Field):
        return field_gcd(a, b)
    from .paramring import primitive_gcd

    return primitive_gcd(a, b)


# ---------------------------------------------------------------------------
# Frobenius powers modulo u; distinct-degree profile; roots
# ---------------------------------------------------------------------------

class FrobeniusMod:
    """Iterates h -> h^p mod u for a fixed modulus u over a field."""

    def __init__(self, u: UniPoly):
        self.u = u
        self.R = u.ring
        self.D = u.degree()
        if _is_prime_field(self.R):
            p, D = self.R.p, self.D
            m = _np_trim(_np_dense(u))
            Q = np.zeros((D, D), dtype=np.int64)
            col = np.array([1], dtype=np.int64)
            shift = np.zeros(p, dtype=np.int64)
            for k in range(D):
                Q[: len(col), k] = col
                if k + 1 < D:
                    col = _np_rem(np.concatenate([shift, col]), m, p)
            self.Q = Q

    def power_p(self, h: UniPoly) -> UniPoly:
        if _is_prime_field(self.R):
            p = self.R.p
            v = np.zeros(self.D, dtype=np.int64)
            for k, c in h.terms.items():
                v[k] = c
            return _np_to_poly(self.R, self.Q.dot(v) % p)
        return poly_rem(h.frob(1), self.u)

    def power_q(self, h: UniPoly, e: int) -> UniPoly:
        for _ in range(e):
            h = self.power_p(h)
        return h


def _y_minus(h: UniPoly) -> UniPoly:
    return h - X(h.ring)


def distinct_degree_profile(u: UniPoly) -> list[tuple[int, int]]:
    """[(d, total degree of the irreducible factors of degree d)] for squarefree u over F_q."""
    R = u.ring
    if u.degree() <= 0:
        return []
    if field_gcd(u, u.derivative()).degree() > 0:
        raise ValueError("polynomial is not squarefree")
    e = R.e
    out = []
    rest = u.monic()
    fm = FrobeniusMod(rest)
    h = poly_rem(X(R), rest)
    d = 0
    while rest.degree() > 0:
        d += 1
        if 2 * d > rest.degree():
            out.append((rest.degree(), rest.degree()))
            break
        h = fm.power_q(h, e)
        g = field_gcd(rest, _y_minus(h))
        if g.degree() > 0:
            out.append((d, g.degree()))
            rest = rest // g
            fm = FrobeniusMod(rest)
            h = poly_rem(h, rest)
    return out


def splitting_degree(u: UniPoly) -> int:
    """lcm of the irreducible factor degrees of squarefree u."""
    M = 1
    for d, _ in distinct_degree_profile(u):
        M = M * d // math.gcd(M, d)
    return M


def _edf_linear(g: UniPoly, rng: random.Random) -> list:
    """Roots of g, a product of distinct linear factors over F_q."""
    R = g.ring
    if g.degree() == 0:
        return []
    if g.degree() == 1:
        g = g.monic()
        return [R.neg(g.coeff(0))]
    q = R.q
    while True:
        delta = UniPoly(R, {1: R.random(rng) or 1, 0: R.random(rng)})
        if R.p == 2:
            # trace map sum_{i < e} delta^(2^i) mod g
            t = poly_rem(delta, g)
            acc = t
            for _ in range(R.e - 1):
                t = poly_rem(t * t, g)
                acc = acc + t
            cand = acc
        else:
            cand = _powmod(delta, (q - 1) // 2, g) - UniPoly.constant(R, R.one)
        h = field_gcd(g, cand)
        if 0 < h.degree() < g.degree():
            return _edf_linear(h, rng) + _edf_linear(g // h, rng)


def _powmod(base: UniPoly, k: int, m: UniPoly) -> UniPoly:
    R = base.ring
    result = UniPoly.constant(R, R.one)
    base = poly_rem(base, m)
    while k:
        if k & 1:
            result = poly_rem(result * base, m)
        k >>= 1
        if k:
            base = poly_rem(base * base, m)
    return result


def poly_roots(u: UniPoly, seed: int = 0) -> list:
    """Sorted list of the distinct roots of u lying in its coefficient field."""
    R = u.ring
    if u.is_zero():
        raise ValueError("zero polynomial has every element as a root")
    if R.q <= 4096:
        return [a for a in range(R.q) if R.is_zero(u.evaluate(a))]
    fm = FrobeniusMod(u.monic())
    h = fm.power_q(poly_rem(X(R), u), R.e)
    g = field_gcd(u, _y_minus(h))
    return sorted(_edf_linear(g, random.Random(seed)))


# ---------------------------------------------------------------------------
# additivity, Artin-Schreier reduction, invariants
# ---------------------------------------------------------------------------

def is_additive(u: UniPoly) -> bool:
    p = u.ring.p
    return bool(u.terms) and all(k >= 1 and is_p_power(k, p) for k in u.terms)


def check_additive_separable(u: UniPoly) -> tuple[bool, bool]:
    if u.is_zero():
        raise ValueError("zero polynomial")
    add = is_additive(u)
    if add:
        return True, 1 in u.terms
    if isinstance(u.ring, Field):
        return False, field_gcd(u, u.derivative()).degree() == 0
    return False, False


def reduce_with_witness(f: UniPoly):
    """(red(f), Q, constant) with f = red(f) + Q^p - Q + constant.

    Every monomial a X^(i p^j) is replaced by a^(p^-j) X^i; the constant term is
    split off.  Over a parameter ring the p-th roots must exist.
    """
    R = f.ring
    p = R.p
    red: dict = {}
    Q = UniPoly(R)
    const = f.coeff(0)
    for k, a in f.terms.items():
        if k == 0:
            continue
        i, j = p_adic_split(k, p)
        if j == 0:
            b = a
        else:
            b = a
            for _ in range(j):
                b = R.pth_root(b)
            wit = {}
            for t in range(j):
                wit[i * p ** t] = R.frob(b, t)
            Q = Q + UniPoly(R, wit)
        red[i] = R.add(red[i], b) if i in red else b
    return UniPoly(R, red), Q, const


def reduce_artin_schreier(f: UniPoly) -> UniPoly:
    return reduce_with_witness(f)[0]


def is_reduced(f: UniPoly) -> bool:
    p = f.ring.p
    return all(k % p for k in f.terms)


def cover_invariants(f: UniPoly) -> tuple[UniPoly, int, object]:
    """(red(f), conductor m, genus g) with g = (m-1)(p-1)/2."""
    red = reduce_artin_schreier(f)
    if red.is_zero():
        raise CoverError("reducible cover: red(f) = 0")
    m = red.degree()
    if m <= 0:
        raise CoverError("degenerate cover")
    p = f.ring.p
    g2 = (m - 1) * (p - 1)
    genus = g2 // 2 if g2 % 2 == 0 else g2 / 2
    return red, m, genus


# ---------------------------------------------------------------------------
# bivariate polynomials
# ---------------------------------------------------------------------------

def power_table(R, x):
    """k -> x^k, memoized.

    In large fields without log tables the power is assembled from cached
    x^(d p^t) over the base-p digits of k; exponents met here are usually
    sparse in base p, so this needs far fewer products than square-and-multiply.
    """
    cache = {}
    if not getattr(R, "e", 1) > 1 or getattr(R, "tables", True):
        def direct(k):
            v = cache.get(k)
            if v is None:
                v = cache[k] = R.pow(x, k)
            return v
        return direct
    p = R.p
    n = R.q - 1
    digit_pows = []  # digit_pows[t][d] = x^(d p^t)

    def level(t):
        while len(digit_pows) <= t:
            base = R.frob(digit_pows[-1][1], 1) if digit_pows else x
            row = [R.one, base]
            for _ in range(2, p):
                row.append(R.mul(row[-1], base))
            digit_pows.append(row)
        return digit_pows[t]

    def get(k):
        v = cache.get(k)
        if v is not None:
            return v
        if x == 0:
            v = R.zero if k else R.one
        else:
            v = None
            m, t = k % n, 0
            while m:
                m, d = divmod(m, p)
                if d:
                    term = level(t)[d]
                    v = term if v is None else R.mul(v, term)
                t += 1
            if v is None:
                v = R.one
        cache[k] = v
        return v

    return get


class BiPoly:
    """Sparse polynomial in X and Y: ``terms`` maps (x_exp, y_exp) -> coefficient.

    Conceptually a polynomial in X with coefficients in R[Y]; use
    :meth:`x_coefficients` for that view.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms=None):
        self.ring = ring
        if terms:
            z = ring.is_zero
            self.terms = {k: c for k, c in terms.items() if not z(c)}
        else:
            self.terms = {}

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.ring is other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"BiPoly({format_bipoly(self)})"

    def _combine(self, other, sign):
        R = self.ring
        t = dict(self.terms)
        for k, c in other.terms.items():
            c = c if sign > 0 else R.neg(c)
            if k in t:
                v = R.add(t[k], c)
                if R.is_zero(v):
                    del t[k]
                else:
                    t[k] = v
            else:
                t[k] = c
        out = BiPoly.__new__(BiPoly)
        out.ring = R
        out.terms = t
        return out

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        R = self.ring
        return BiPoly(R, {k: R.neg(c) for k, c in self.terms.items()})

    def __mul__(self, other):
        R = self.ring
        t: dict = {}
        for (i, j), a in self.terms.items():
            for (k, l), b in other.terms.items():
                key = (i + k, j + l)
                v = R.mul(a, b)
                t[key] = R.add(t[key], v) if key in t else v
        return BiPoly(R, t)

    def frob(self, n: int = 1):
        if n == 0:
            return self
        R = self.ring
        pn = R.p ** n
        return BiPoly(R, {(i * pn, j * pn): R.frob(c, n) for (i, j), c in self.terms.items()})

    def x_degree(self):
        return max((i for i, _ in self.terms), default=-1)

    def y_degree(self):
        return max((j for _, j in self.terms), default=-1)

    def truncate_x(self, bound: int):
        """Keep only terms with X-exponent <= bound."""
        return BiPoly(self.ring, {k: c for k, c in self.terms.items() if k[0] <= bound})

    def swap(self):
        return BiPoly(self.ring, {(j, i): c for (i, j), c in self.terms.items()})

    def x_coefficients(self) -> dict[int, UniPoly]:
        """{i: a_i(Y)} with self = sum a_i(Y) X^i."""
        out: dict[int, dict] = {}
        for (i, j), c in self.terms.items():
            out.setdefault(i, {})[j] = c
        return {i: UniPoly(self.ring, t) for i, t in out.items()}

    def map_y_coefficients(self, fn):
        """Apply fn to each X-coefficient a_i(Y) (fn returns a UniPoly in Y)."""
        t = {}
        for i, a in self.x_coefficients().items():
            for j, c in fn(a).terms.items():
                t[(i, j)] = c
        return BiPoly(self.ring, t)

    def eval_y(self, y) -> UniPoly:
        """Specialize Y = y; result in R[X]."""
        R = self.ring
        t: dict = {}
        pw: dict = {}
        for (i, j), c in self.terms.items():
            yj = pw.get(j)
            if yj is None:
                yj = pw[j] = R.pow(y, j)
            v = R.mul(c, yj)
            t[i] = R.add(t[i], v) if i in t else v
        return UniPoly(R, t)

    def eval_xy(self, x, y):
        R = self.ring
        acc = R.zero
        if getattr(R, "e", 1) > 1 and not getattr(R, "tables", True):
            tx, ty = power_table(R, x), power_table(R, y)
            for (i, j), c in self.terms.items():
                acc = R.add(acc, R.mul(c, R.mul(tx(i), ty(j))))
            return acc
        px: dict = {}
        py: dict = {}
        for (i, j), c in self.terms.items():
            xi = px.get(i)
            if xi is None:
                xi = px[i] = R.pow(x, i)
            yj = py.get(j)
            if yj is None:
                yj = py[j] = R.pow(y, j)
            acc = R.add(acc, R.mul(c, R.mul(xi, yj)))
        return acc

    def map_coeffs(self, fn, ring=None):
        return BiPoly(ring or self.ring, {k: fn(c) for k, c in self.terms.items()})


def shift_x(u: UniPoly) -> BiPoly:
    """u(X + Y) as a bivariate polynomial (binomials mod p)."""
    R = u.ring
    p = R.p
    t: dict = {}
    for k, c in u.terms.items():
        for i in range(k + 1):
            b = binom_mod(k, i, p)
            if b:
                key = (i, k - i)
                v = R.mul(c, R.scalar(b))
                t[key] = R.add(t[key], v) if key in t else v
    return BiPoly(R, t)


def shift_by(u: UniPoly, a) -> UniPoly:
    """u(X + a) for a ring element a."""
    R = u.ring
    p = R.p
    t: dict = {}
    pw: dict = {}
    for k, c in u.terms.items():
        for i in range(k + 1):
            b = binom_mod(k, i, p)
            if b:
                e = k - i
                ae = pw.get(e)
                if ae is None:
                    ae = pw[e] = R.pow(a, e)
                v = R.mul(c, R.mul(R.scalar(b), ae))
                t[i] = R.add(t[i], v) if i in t else v
    return UniPoly(R, t)


def substitute(P, which: str, by):
    """Exact substitution.

    ``substitute(f, 'X', 'X+Y')`` gives the BiPoly f(X+Y); ``substitute(f, 'X', S)``
    composes with a UniPoly S; for a BiPoly, ``which`` in {'X', 'Y'} with a ring
    element specializes that variable.
    """
    if isinstance(P, UniPoly):
        if by == "X+Y":
            return shift_x(P)
        if isinstance(by, UniPoly):
            return P.compose(by)
        return P.evaluate(by)
    if isinstance(P, BiPoly):
        if which == "Y":
            return P.eval_y(by)
        if which == "X":
            return P.swap().eval_y(by)
    raise TypeError("unsupported substitution")


# ---------------------------------------------------------------------------
# canonical text
# ---------------------------------------------------------------------------

def _fmt_coeff(R, c) -> tuple[str, bool]:
    """(text, needs_parens)."""
    s = R.fmt(c)
    simple = s.isdigit()
    return s, not simple


def format_poly(u: UniPoly, var: str = "X") -> str:
    R = u.ring
    if not u.terms:
        return "0"
    parts = []
    for k in sorted(u.terms, reverse=True):
        c = u.terms[k]
        s, paren = _fmt_coeff(R, c)
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if not mono:
            parts.append(f"({s})" if paren else s)
        elif s == "1":
            parts.append(mono)
        else:
            parts.append(f"({s})*{mono}" if paren else f"{s}*{mono}")
    return "+".join(parts)


def format_bipoly(P: BiPoly, xvar: str = "X", yvar: str = "Y") -> str:
    """Terms grouped by decreasing X-exponent: (a(Y))*X^i + ..."""
    if not P.terms:
        return "0"
    parts = []
    coeffs = P.x_coefficients()
    for i in sorted(coeffs, reverse=True):
        a = coeffs[i]
        s = format_poly(a, yvar)
        if i == 0:
            parts.append(s)
            continue
        mono = xvar if i == 1 else f"{xvar}^{i}"
        if s == "1":
            parts.append(mono)
        elif len(a.terms) == 1 and "+" not in s:
            parts.append(f"{s}*{mono}")
        else:
            parts.append(f"({s})*{mono}")
    return "+".join(parts)
