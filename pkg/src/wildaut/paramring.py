"""The parameter ring A = F_p[t_1, ..., t_k] and gcds over A and A[Y].

Elements are sparse monomial tables {exponent tuple: coefficient mod p}.
Monomial order is lexicographic on the exponent tuples.
"""

from __future__ import annotations

from .poly import UniPoly


class ParamRingElem:
    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = terms

    def __eq__(self, other):
        return isinstance(other, ParamRingElem) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"ParamRingElem({self.terms})"


class ParamRing:
    """F_p[t_*] with named variables; exposes the coefficient-ring interface."""

    def __init__(self, p: int, names):
        self.p = p
        self.names = tuple(names)
        self.k = len(self.names)
        self._zero_exp = (0,) * self.k
        self.zero = ParamRingElem({})
        self.one = ParamRingElem({self._zero_exp: 1})

    def __repr__(self):
        return f"ParamRing(p={self.p}, names={list(self.names)})"

    # -- constructors --

    def var(self, name_or_index) -> ParamRingElem:
        i = self.names.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        e = [0] * self.k
        e[i] = 1
        return ParamRingElem({tuple(e): 1})

    def scalar(self, c: int) -> ParamRingElem:
        c %= self.p
        return ParamRingElem({self._zero_exp: c}) if c else self.zero

    from_int = scalar

    # -- ring interface --

    def is_zero(self, a):
        return not a.terms

    def is_constant(self, a):
        return all(m == self._zero_exp for m in a.terms)

    def constant_value(self, a) -> int:
        return a.terms.get(self._zero_exp, 0)

    def add(self, a, b):
        p = self.p
        t = dict(a.terms)
        for m, c in b.terms.items():
            v = (t.get(m, 0) + c) % p
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return ParamRingElem(t)

    def neg(self, a):
        p = self.p
        return ParamRingElem({m: -c % p for m, c in a.terms.items()})

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a.terms or not b.terms:
            return self.zero
        p = self.p
        t: dict = {}
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                t[m] = (t.get(m, 0) + c1 * c2) % p
        return ParamRingElem({m: c for m, c in t.items() if c})

    def pow(self, a, k: int):
        if k == 0:
            return self.one
        result = self.one
        j = 0
        p = self.p
        while k:
            d = k % p
            if d:
                base = self.frob(a, j)
                for _ in range(d):
                    result = self.mul(result, base)
            k //= p
            j += 1
        return result

    def frob(self, a, j: int = 1):
        if j == 0:
            return a
        if j < 0:
            for _ in range(-j):
                a = self.pth_root(a)
            return a
        pj = self.p ** j
        return ParamRingElem({tuple(x * pj for x in m): c for m, c in a.terms.items()})

    def pth_root(self, a):
        p = self.p
        t = {}
        for m, c in a.terms.items():
            if any(x % p for x in m):
                raise ValueError("not reducible over parameter ring: coefficient is not a p-th power")
            t[tuple(x // p for x in m)] = c
        return ParamRingElem(t)

    def is_pth_power(self, a) -> bool:
        return all(x % self.p == 0 for m in a.terms for x in m)

    def inv(self, a):
        if not self.is_constant(a) or not a.terms:
            raise ZeroDivisionError("element is not a unit of the parameter ring")
        c = self.constant_value(a)
        return self.scalar(pow(c, self.p - 2, self.p))

    def degree_in(self, a, i: int) -> int:
        return max((m[i] for m in a.terms), default=-1)

    def fmt(self, a) -> str:
        if not a.terms:
            return "0"
        parts = []
        for m in sorted(a.terms, reverse=True):
            c = a.terms[m]
            mono = "*".join(
                (n if e == 1 else f"{n}^{e}") for n, e in zip(self.names, m) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return "+".join(parts)

    def evaluate(self, a, field, values):
        """Image under t_i -> values[i] (raw elements of `field`)."""
        acc = field.zero
        for m, c in a.terms.items():
            v = field.from_int(c)
            for x, e in zip(values, m):
                if e:
                    v = field.mul(v, field.pow(x, e))
            acc = field.add(acc, v)
        return acc

    # -- division and gcd --

    def lead(self, a):
        m = max(a.terms)
        return m, a.terms[m]

    def exact_div(self, a, b):
        """a / b; raises ValueError if b does not divide a."""
        if not b.terms:
            raise ZeroDivisionError("division by zero in parameter ring")
        if not a.terms:
            return self.zero
        p = self.p
        mb, cb = self.lead(b)
        inv = pow(cb, p - 2, p)
        r = dict(a.terms)
        q: dict = {}
        while r:
            mr = max(r)
            if any(x < y for x, y in zip(mr, mb)):
                raise ValueError("inexact division in parameter ring")
            mq = tuple(x - y for x, y in zip(mr, mb))
            cq = r[mr] * inv % p
            q[mq] = cq
            for m, c in b.terms.items():
                mm = tuple(x + y for x, y in zip(m, mq))
                v = (r.get(mm, 0) - cq * c) % p
                if v:
                    r[mm] = v
                else:
                    r.pop(mm, None)
        return ParamRingElem(q)

    def normalize(self, a):
        """Unit multiple with lex-leading coefficient 1."""
        if not a.terms:
            return a
        _, c = self.lead(a)
        inv = pow(c, self.p - 2, self.p)
        return ParamRingElem({m: x * inv % self.p for m, x in a.terms.items()})

    def _main_var(self, *elems):
        for i in range(self.k - 1, -1, -1):
            if any(self.degree_in(a, i) > 0 for a in elems):
                return i
        return None

    def _to_uni(self, a, i) -> UniPoly:
        t: dict = {}
        for m, c in a.terms.items():
            d = m[i]
            mm = m[:i] + (0,) + m[i + 1:]
            t.setdefault(d, {})[mm] = c
        return UniPoly(self, {d: ParamRingElem(v) for d, v in t.items()})

    def _from_uni(self, u: UniPoly, i):
        t = {}
        for d, c in u.terms.items():
            for m, x in c.terms.items():
                t[m[:i] + (d,) + m[i + 1:]] = x
        return ParamRingElem(t)

    def gcd(self, a, b):
        """Normalized gcd in F_p[t_*] (recursive on the last variable present)."""
        if not a.terms:
            return self.normalize(b)
        if not b.terms:
            return self.normalize(a)
        i = self._main_var(a, b)
        if i is None:
            return self.one
        ua, ub = self._to_uni(a, i), self._to_uni(b, i)
        g = subresultant_gcd(ua, ub)
        return self.normalize(self._from_uni(g, i))


# ---------------------------------------------------------------------------
# univariate polynomials over a gcd domain
# ---------------------------------------------------------------------------

def content(u: UniPoly):
    R = u.ring
    g = R.zero
    for c in sorted(u.terms.values(), key=lambda c: len(c.terms)):
        g = R.gcd(g, c)
        if R.is_constant(g) and g.terms:
            return R.one
    return g


def primitive_part(u: UniPoly) -> UniPoly:
    if u.is_zero():
        return u
    R = u.ring
    c = content(u)
    if c == R.one:
        return u
    return UniPoly(R, {k: R.exact_div(v, c) for k, v in u.terms.items()})


def prem(a: UniPoly, b: UniPoly) -> UniPoly:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b."""
    R = a.ring
    db = b.degree()
    da = a.degree()
    if da < db:
        return a
    lb = b.lc()
    r = a
    steps = 0
    while not r.is_zero() and r.degree() >= db:
        dr = r.degree()
        lr = r.lc()
        r = r.scale(lb) - b.shift_exponents(dr - db).scale(lr)
        steps += 1
    k = da - db + 1 - steps
    if k > 0 and not r.is_zero():
        r = r.scale(R.pow(lb, k))
    return r


def _exact_div_poly(u: UniPoly, c) -> UniPoly:
    R = u.ring
    return UniPoly(R, {k: R.exact_div(v, c) for k, v in u.terms.items()})


def subresultant_gcd(A: UniPoly, B: UniPoly) -> UniPoly:
    """gcd in R[Y] for a gcd domain R (subresultant PRS with content extraction).

    The result is content(gcd) times the primitive part of the last nonzero
    subresultant, up to a unit.
    """
    R = A.ring
    if A.is_zero():
        return B
    if B.is_zero():
        return A
    if A.degree() < B.degree():
        A, B = B, A
    ca, cb = content(A), content(B)
    d = R.gcd(ca, cb)
    A = _exact_div_poly(A, ca)
    B = _exact_div_poly(B, cb)
    g = R.one
    h = R.one
    while True:
        delta = A.degree() - B.degree()
        r = prem(A, B)
        if r.is_zero():
            break
        if r.degree() == 0:
            B = UniPoly.constant(R, R.one)
            break
        A = B
        B = _exact_div_poly(r, R.mul(g, R.pow(h, delta)))
        g = A.lc()
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = R.exact_div(R.pow(g, delta), R.pow(h, delta - 1))
    return primitive_part(B).scale(d)


def primitive_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Primitive gcd in A[Y]; made monic when its leading coefficient is a unit."""
    g = primitive_part(subresultant_gcd(a, b))
    R = g.ring
    if not g.is_zero() and R.is_constant(g.lc()):
        g = g.scale(R.inv(g.lc()))
    return g


def primitive_gcd_many(polys) -> UniPoly:
    polys = sorted((u for u in polys if not u.is_zero()), key=lambda u: (u.degree(), len(u.terms)))
    if not polys:
        raise ValueError("gcd of no nonzero polynomials")
    g = primitive_part(polys[0])
    for u in polys[1:]:
        if g.degree() == 0:
            break
        g = primitive_part(subresultant_gcd(g, u))
    R = g.ring
    if R.is_constant(g.lc()):
        g = g.scale(R.inv(g.lc()))
    return g


def specialize_poly(u: UniPoly, field, values) -> UniPoly:
    R = u.ring
    return UniPoly(field, {k: R.evaluate(c, field, values) for k, c in u.terms.items()})
