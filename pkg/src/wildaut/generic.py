"""The universal family sum t_i X^i + X^m over F_p[t_*] and its additive polynomial."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .cover import (
    Decomposition,
    analyze,
    check_leading_coefficient_shape,
    decompose,
)
from .field import Field, field_create
from .paramring import ParamRing, primitive_gcd_many, specialize_poly
from .poly import CoverError, UniPoly, format_poly, poly_rem


class GenericFinding(AssertionError):
    """The generic computation produced something outside what the theory predicts."""


@dataclass
class UniversalFamily:
    p: int
    m: int
    ring: ParamRing
    f: UniPoly
    decomposition: Decomposition
    ad_generic: UniPoly | None = None
    findings: list = dc_field(default_factory=list)

    @property
    def names(self):
        return self.ring.names


def parameter_exponents(p: int, m: int) -> list[int]:
    return [i for i in range(1, m) if i % p]


def universal_family(p: int, m: int) -> UniversalFamily:
    if m < 2:
        raise CoverError("need m >= 2")
    if m % p == 0:
        raise CoverError("m divisible by p")
    exps = parameter_exponents(p, m)
    A = ParamRing(p, [f"t{i}" for i in exps])
    terms = {i: A.var(k) for k, i in enumerate(exps)}
    terms[m] = A.one
    f = UniPoly(A, terms)
    dec = decompose(f, m)
    check_leading_coefficient_shape(dec, A)
    U = UniversalFamily(p, m, A, f, dec)
    _check_j0(U)
    return U


def j0_data(p: int, m: int):
    """(l, s, j_0) when m - 1 = l p^s with l > 1 prime to p, else None."""
    k = m - 1
    s = 0
    while k % p == 0:
        k //= p
        s += 1
    if k <= 1:
        return None
    return k, s, 1 + (k - 1) * p ** s


def _check_j0(U: UniversalFamily):
    """Leading term of a_{j_0}(Y) is l Y^{p^s}."""
    data = j0_data(U.p, U.m)
    if data is None:
        return
    l, s, j0 = data
    A = U.ring
    a = U.decomposition.y_coefficients().get(j0)
    if a is None or a.degree() != U.p ** s or a.lc() != A.scalar(l):
        raise GenericFinding(f"a_(j0) does not have leading term {l}*Y^{U.p ** s}")


def generic_additive_polynomial(U: UniversalFamily) -> UniPoly:
    coeffs = list(U.decomposition.y_coefficients().values())
    g = primitive_gcd_many(coeffs)
    A = U.ring
    if g.lc() != A.one:
        finding = f"primitive gcd is not monic: leading coefficient {A.fmt(g.lc())}"
        U.findings.append(finding)
        raise GenericFinding(finding)
    U.ad_generic = g
    return g


@dataclass
class Specialization:
    report: object
    image: UniPoly  # phi(ad_generic), monic
    degenerate: bool


def specialize_family_poly(U: UniversalFamily, field: Field, values: dict) -> UniPoly:
    order = []
    for n in U.names:
        if n not in values:
            raise ValueError(f"unassigned parameter {n}")
        order.append(values[n])
    return specialize_poly(U.f, field, order)


def specialize(U: UniversalFamily, field: Field, values: dict, **kw) -> Specialization:
    """Analyze phi(f); phi(Ad_generic) must equal, or strictly divide (flagged), Ad_phi(f)."""
    if U.ad_generic is None:
        generic_additive_polynomial(U)
    order = [values[n] if n in values else _missing(n) for n in U.names]
    f = specialize_poly(U.f, field, order)
    image = specialize_poly(U.ad_generic, field, order)
    if image.is_zero() or image.degree() != U.ad_generic.degree():
        raise GenericFinding("specialization drops the degree of the generic Ad")
    image = image.monic()
    rep = analyze(f, **kw)
    if rep.ad == image:
        return Specialization(rep, image, False)
    if not poly_rem(rep.ad, image).is_zero():
        raise GenericFinding("phi(Ad_generic) does not divide Ad of the specialization")
    return Specialization(rep, image, True)


def _missing(n):
    raise ValueError(f"unassigned parameter {n}")


# ---------------------------------------------------------------------------
# oracle arbitration of a disputed coefficient
# ---------------------------------------------------------------------------

@dataclass
class Arbitration:
    value: str
    field: str
    accepted: dict  # candidate name -> bool


def arbitrate_candidates(U: UniversalFamily, candidates: dict, points: list) -> list[Arbitration]:
    """Which candidate Ad polynomials (over the parameter ring) have all their roots
    accepted by the brute-force root oracle, at each specialization point.

    ``points`` holds (label, field, values) triples.
    """
    from .roots import _oracle_evaluator, root_basis

    out = []
    for label, F, values in points:
        order = [values[n] for n in U.names]
        f = specialize_poly(U.f, F, order)
        verdict = {}
        for name, cand in candidates.items():
            c = specialize_poly(cand, F, order)
            rs = root_basis(c)
            test = _oracle_evaluator(f, rs.field)
            verdict[name] = all(test(y) for y in rs.elements())
        out.append(Arbitration(label, repr(F), verdict))
    return out


def disputed_coefficient_candidates(U: UniversalFamily) -> dict:
    """Y^16 + t3^4 Y^8 + c Y^2 + Y with c = t3 (as printed) or c = t3^2."""
    A = U.ring
    t3 = A.var("t3")
    base = {16: A.one, 8: A.pow(t3, 4), 1: A.one}
    return {
        "t3": UniPoly(A, {**base, 2: t3}),
        "t3^2": UniPoly(A, {**base, 2: A.pow(t3, 2)}),
    }


def disputed_coefficient_points(U: UniversalFamily) -> list:
    """t3 in {1, w in F_4, primitive element of F_16}; other parameters 0."""
    pts = []
    for label, e in (("t3=1", 1), ("t3=w in F_4", 2), ("t3=primitive element of F_16", 4)):
        F = field_create(2, e)
        values = {n: F.zero for n in U.names}
        values["t3"] = F.one if e == 1 else F.generator()
        if e == 4 and F.mult_order(values["t3"]) != 15:
            values["t3"] = next(a for a in range(2, F.q) if F.mult_order(a) == 15)
        pts.append((label, F, values))
    return pts


def format_generic(u: UniPoly) -> str:
    return format_poly(u, "Y")
