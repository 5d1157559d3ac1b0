"""Finite fields F_{p^e} with deterministic moduli.

Elements are stored as plain integers: the coordinate vector
(c_0, ..., c_{e-1}) in the power basis of the modulus root is packed as
c_0 + c_1 p + ... + c_{e-1} p^{e-1}.  Polynomial code works on these raw
integers through the :class:`Field` methods; :class:`FieldElement` is the
public wrapper with operator overloading.

Small fields (q <= TABLE_LIMIT) use log/exp tables plus a Zech table for
addition when p is odd; larger fields fall back to polynomial arithmetic
modulo the modulus.
"""

from __future__ import annotations

import functools
import math
import random
from dataclasses import dataclass

DEFAULT_DEGREE_CAP = 64
TABLE_LIMIT = 1 << 16


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % d == 0:
            return n == d
    # deterministic Miller-Rabin for 64-bit range and beyond in practice
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


# -- dense polynomials over F_p as coefficient lists (low degree first) --

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmulmod(a, b, m, p):
    """a*b mod m over F_p; m monic."""
    if not a or not b:
        return []
    res = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                res[i + j] += x * y
    return _pmod(res, m, p)


def _pmod(a, m, p):
    a = [x % p for x in a]
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            off = i - dm
            for j in range(dm):
                a[off + j] = (a[off + j] - c * m[j]) % p
            a[i] = 0
    return _trim(a[:dm] if len(a) > dm else a)


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        inv = pow(b[-1], p - 2, p)
        bm = [x * inv % p for x in b]
        a, b = b, _pmod(a, bm, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [x * inv % p for x in a]
    return a


def _ppowmod(base, k, m, p):
    result = [1]
    while k:
        if k & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        k >>= 1
    return result


def _is_irreducible(m, p):
    """Rabin's test for monic m over F_p."""
    e = len(m) - 1
    if e == 1:
        return True
    x = [0, 1]

    def frob_iter(k):
        h = x
        for _ in range(k):
            h = _ppowmod(h, p, m, p)
        return h

    if _trim(list(frob_iter(e))) != x:
        return False
    for r in prime_factors(e):
        h = frob_iter(e // r)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(m, _trim(diff), p)
        if len(g) > 1:
            return False
    return True


def first_irreducible(p: int, e: int) -> tuple[int, ...]:
    """First monic irreducible of degree e over F_p in the canonical scan.

    Candidates X^e + sum c_i X^i are scanned by increasing sum c_i p^i.
    Returned as the full coefficient tuple, constant term first.
    """
    if e == 1:
        return (0, 1)
    for code in range(p ** e):
        coeffs = []
        c = code
        for _ in range(e):
            coeffs.append(c % p)
            c //= p
        if coeffs[0] == 0:
            continue
        m = coeffs + [1]
        if _is_irreducible(m, p):
            return tuple(m)
    raise FieldError(f"no irreducible polynomial of degree {e} over F_{p}")


class Field:
    """The finite field F_p[w]/(modulus).

    Use :func:`field_create` rather than the constructor: fields are cached
    so that equal (p, e, modulus) give the same object.
    """

    def __init__(self, p: int, e: int, modulus: tuple[int, ...]):
        self.p = p
        self.e = e
        self.modulus = tuple(modulus)
        self.q = p ** e
        self.order = self.q
        self._mod_list = list(self.modulus)
        self._mbits = self.from_digits(self.modulus) if p == 2 else 0
        self._half = (self.q - 1) // 2
        self.tables = e > 1 and self.q <= TABLE_LIMIT
        if self.tables:
            self._build_tables()

    # -- construction helpers --

    def __repr__(self):
        return f"Field(p={self.p}, e={self.e}, modulus={list(self.modulus)})"

    def __reduce__(self):
        return (field_create, (self.p, self.e, self.modulus))

    def _find_primitive(self):
        n = self.q - 1
        primes = prime_factors(n)
        for g in range(2, self.q):
            if all(self._pow_slow(g, n // r) != 1 for r in primes):
                return g
        raise FieldError("no primitive element")  # pragma: no cover

    def _build_tables(self):
        n = self.q - 1
        g = self._find_primitive()
        self.generator_primitive = g
        exp = [0] * (2 * n)
        log = [0] * self.q
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self._mul_slow(x, g)
        for i in range(n, 2 * n):
            exp[i] = exp[i - n]
        self._exp = exp
        self._log = log
        if self.p != 2:
            p = self.p
            zech = [0] * n
            for k in range(n):
                v = exp[k]
                v1 = v + 1 if v % p != p - 1 else v - (p - 1)
                zech[k] = -1 if v1 == 0 else log[v1]
            self._zech = zech

    # -- coordinate conversions --

    def digits(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.e):
            out.append(a % p)
            a //= p
        return out

    def from_digits(self, ds) -> int:
        p = self.p
        v = 0
        for d in reversed(list(ds)):
            v = v * p + (d % p)
        return v

    def coords(self, a: int) -> tuple[int, ...]:
        return tuple(self.digits(a))

    # -- slow polynomial-modulus arithmetic (large fields, table building) --

    def _mul_slow(self, a, b):
        if self.e == 1:
            return a * b % self.p
        if self.p == 2:
            return self._clmul_mod(a, b)
        return self._kron_mul(a, b)

    def _kron_setup(self):
        """Kronecker packing: digit i sits in bits [k i, k i + k)."""
        p, e = self.p, self.e
        k = (e * (p - 1) ** 2).bit_length() + 1
        red = []
        for j in range(e - 1):
            ds = _pmod([0] * (e + j) + [1], self._mod_list, p)
            red.append(sum(d << (k * i) for i, d in enumerate(ds)))
        self._kron = (k, (1 << k) - 1, red)

    def _kron_mul(self, a, b):
        if not hasattr(self, "_kron"):
            self._kron_setup()
        k, mask, red = self._kron
        p, e = self.p, self.e
        pa = pb = 0
        s = 0
        while a:
            a, d = divmod(a, p)
            pa |= d << s
            s += k
        s = 0
        while b:
            b, d = divmod(b, p)
            pb |= d << s
            s += k
        prod = pa * pb
        low = []
        for _ in range(e):
            low.append(prod & mask)
            prod >>= k
        acc = 0
        j = 0
        while prod:
            c = (prod & mask) % p
            if c:
                acc += c * red[j]
            prod >>= k
            j += 1
        v = 0
        shift = k * (e - 1)
        for i in range(e - 1, -1, -1):
            v = v * p + (low[i] + (acc >> shift & mask)) % p
            shift -= k
        return v

    def _clmul_mod(self, a, b):
        e = self.e
        mbits = self._mbits
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a >> e & 1:
                a ^= mbits
        return r

    def _pow_slow(self, a, k):
        r = 1
        while k:
            if k & 1:
                r = self._mul_slow(r, a)
            a = self._mul_slow(a, a)
            k >>= 1
        return r

    # -- ring interface on raw integers --

    zero = 0
    one = 1

    def is_zero(self, a):
        return a == 0

    def add(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self.tables:
            if a == 0:
                return b
            if b == 0:
                return a
            la = self._log[a]
            z = self._zech[(self._log[b] - la) % (self.q - 1)]
            if z < 0:
                return 0
            return self._exp[la + z]
        p = self.p
        return self.from_digits([(x + y) % p for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a):
        if self.e == 1:
            return -a % self.p
        if self.p == 2 or a == 0:
            return a
        if self.tables:
            return self._exp[self._log[a] + self._half]
        p = self.p
        return self.from_digits([-x % p for x in self.digits(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.e == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        if self.tables:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_slow(a, b)

    def scalar(self, k: int):
        """Image of the integer k."""
        return k % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in finite field")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        if self.tables:
            return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]
        return self._pow_slow(a, self.q - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k: int):
        if k < 0:
            return self.pow(self.inv(a), -k)
        if k == 0:
            return 1
        if a == 0:
            return 0
        if self.e == 1:
            return pow(a, k, self.p)
        if self.tables:
            return self._exp[self._log[a] * k % (self.q - 1)]
        return self._pow_slow(a, k % (self.q - 1) or (self.q - 1))

    def frob(self, a, j: int = 1):
        """a^(p^j); j may be negative."""
        if self.e == 1 or a == 0:
            return a
        j %= self.e
        if j == 0:
            return a
        if self.tables:
            return self._exp[self._log[a] * pow(self.p, j, self.q - 1) % (self.q - 1)]
        for _ in range(j):
            a = self._pow_slow(a, self.p)
        return a

    def pth_root(self, a):
        return self.frob(a, -1)

    def from_int(self, k: int):
        return k % self.p

    def elements(self):
        return range(self.q)

    def generator(self):
        """The class of w (the modulus root)."""
        if self.e == 1:
            return 0
        return self.p

    def mult_order(self, a) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        n = self.q - 1
        order = n
        for r in prime_factors(n):
            while order % r == 0 and self.pow(a, order // r) == 1:
                order //= r
        return order

    def element(self, v) -> "FieldElement":
        if isinstance(v, FieldElement):
            return v
        if isinstance(v, (list, tuple)):
            if len(v) != self.e:
                raise FieldError("coordinate vector length differs from degree")
            v = self.from_digits(v)
        return FieldElement(self, int(v))

    def random(self, rng: random.Random):
        return rng.randrange(self.q)

    def fmt(self, a) -> str:
        """Literal in the generator symbol w, e.g. 'w^2+1'."""
        if self.e == 1:
            return str(a)
        ds = self.digits(a)
        terms = []
        for i in range(self.e - 1, -1, -1):
            c = ds[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "w" if i == 1 else f"w^{i}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(terms) if terms else "0"

    def describe(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}


@functools.lru_cache(maxsize=None)
def _cached_field(p, e, modulus):
    return Field(p, e, modulus)


def field_create(p: int, e: int = 1, modulus=None, degree_cap: int = DEFAULT_DEGREE_CAP) -> Field:
    """Build F_{p^e}; the modulus defaults to the first irreducible in the canonical scan."""
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if not 1 <= e <= degree_cap:
        raise FieldError(f"extension degree {e} outside [1, {degree_cap}]")
    if modulus is None:
        modulus = _first_irreducible_cached(p, e)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree e")
        if e > 1 and not _is_irreducible(list(modulus), p):
            raise FieldError("modulus is not irreducible")
    return _cached_field(p, e, tuple(modulus))


@functools.lru_cache(maxsize=None)
def _first_irreducible_cached(p, e):
    return first_irreducible(p, e)


@dataclass(frozen=True)
class FieldElement:
    field: Field
    value: int

    def _check(self, other):
        if isinstance(other, int):
            return self.field.from_int(other)
        if other.field is not self.field:
            raise FieldError("elements of different fields")
        return other.value

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._check(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._check(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._check(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._check(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._check(other)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, k: int):
        return FieldElement(self.field, self.field.pow(self.value, k))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def frobenius(self, j: int = 1):
        return FieldElement(self.field, self.field.frob(self.value, j))

    def is_zero(self):
        return self.value == 0

    @property
    def coords(self):
        return self.field.coords(self.value)

    def __lt__(self, other):
        return self.value < other.value

    def __repr__(self):
        return self.field.fmt(self.value)


def arith(a: FieldElement, b: FieldElement | None, op: str) -> FieldElement:
    """Dispatch one of add|sub|mul|div|neg|inv|pow (b is the exponent for pow)."""
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a ** int(b)
    if isinstance(b, FieldElement) and b.field is not a.field:
        raise FieldError("mismatched parents")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def frobenius(a: FieldElement, j: int = 1) -> FieldElement:
    return a.frobenius(j)


# -- embeddings --

def _poly_roots_in(field: Field, coeffs, rng_seed: int = 0) -> list[int]:
    """All roots in `field` of the polynomial with raw coefficients (low first)."""
    from .poly import UniPoly, poly_roots

    u = UniPoly(field, {i: c for i, c in enumerate(coeffs) if c})
    return poly_roots(u, seed=rng_seed)


@functools.lru_cache(maxsize=None)
def _embedding_image(src: Field, dst: Field) -> int:
    if dst.e % src.e:
        raise FieldError(f"F_{src.p}^{src.e} does not embed in F_{dst.p}^{dst.e}")
    if src.e == 1:
        return 0
    roots = _poly_roots_in(dst, src.modulus)
    if not roots:
        raise FieldError("source modulus has no root in target (internal)")
    return min(roots)


def embed_map(src: Field, dst: Field):
    """Return a function mapping raw elements of src to raw elements of dst."""
    if src is dst:
        return lambda a: a
    if src.p != dst.p:
        raise FieldError("characteristics differ")
    if src.e == 1:
        return lambda a: a % dst.p
    r = _embedding_image(src, dst)
    powers = [1]
    for _ in range(src.e - 1):
        powers.append(dst.mul(powers[-1], r))
    # integers times dst elements
    scaled = [[dst.mul(dst.from_int(c), pw) for c in range(src.p)] for pw in powers]
    cache: dict[int, int] = {}

    def f(a):
        v = cache.get(a)
        if v is None:
            ds = src.digits(a)
            v = 0
            for i, d in enumerate(ds):
                if d:
                    v = dst.add(v, scaled[i][d])
            cache[a] = v
        return v

    return f


def embed(a: FieldElement, target: Field) -> FieldElement:
    return FieldElement(target, embed_map(a.field, target)(a.value))


def common_field(*fields: Field) -> Field:
    p = fields[0].p
    e = 1
    for k in fields:
        e = e * k.e // math.gcd(e, k.e)
    return field_create(p, e)
