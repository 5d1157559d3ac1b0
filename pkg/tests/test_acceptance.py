"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary under "acceptance criteria".
"""

import random
import time
from contextlib import contextmanager
from fractions import Fraction
from math import gcd

import pytest

from wildaut.cover import (
    CapExceeded, additive_polynomial, analyze, is_x_times_additive, modify_type1, modify_type2, pf_by_series,
)
from wildaut.field import embed_map, field_create
from wildaut.generic import (
    arbitrate_candidates, disputed_coefficient_candidates, disputed_coefficient_points,
    format_generic, generic_additive_polynomial, universal_family,
)
from wildaut.group import extraspecial_closure, profile
from wildaut.poly import BiPoly, UniPoly, check_additive_separable, poly_rem, reduce_artin_schreier
from wildaut.realize import (
    additive_divisors, classic_D8_example, realize_cyclic_p2, realize_D8_family,
    realize_saturated, realize_type_II_data,
)
from wildaut.roots import _oracle_evaluator
from wildaut.trace import build_trace

F2, F3, F5 = field_create(2), field_create(3), field_create(5)

# groups from criteria 1-7, reused by criterion 10
PRODUCED = {}


@contextmanager
def criterion(verdicts, key, desc):
    notes = []
    try:
        yield notes
    except (AssertionError, Exception) as exc:
        verdicts.record(key, False, f"{desc}: {type(exc).__name__}: {exc}".splitlines()[0])
        raise
    verdicts.record(key, True, desc + (f" ({'; '.join(notes)})" if notes else ""))


def X(F, terms):
    return UniPoly(F, terms)


# ---------------------------------------------------------------------------

def test_criterion_1_reference_trace(verdicts, classic_report):
    with criterion(verdicts, 1, "reference trace of X^3+X^7+X^19+X^35+X^41, exact"):
        rep = classic_report
        tr = build_trace(rep)
        assert rep.ad == X(F2, {4: 1, 1: 1})
        printed = {(20, 2): 1, (17, 2): 1, (10, 1): 1, (9, 2): 1, (8, 3): 1,
                   (5, 2): 1, (3, 2): 1, (2, 3): 1, (1, 2): 1}
        assert tr.p_f_reduced == BiPoly(F2, printed)
        assert tr.power_gcd == X(F2, {3: 1, 2: 1, 1: 1})
        assert tr.commutator == BiPoly(F2, {(2, 1): 1, (1, 2): 1})
        assert rep.profile.order_stats == {1: 1, 2: 5, 4: 2}
        assert rep.label.short == "D8"
        PRODUCED["classic D8"] = rep.group


def test_criterion_2_generic_formulas(verdicts):
    with criterion(verdicts, 2, "generic Ad for (2,3), (3,4), (2,5) with oracle arbitration") as notes:
        assert format_generic(generic_additive_polynomial(universal_family(2, 3))) == "Y^4+Y"
        assert format_generic(generic_additive_polynomial(universal_family(3, 4))) == "Y^9+(2*t2^3)*Y^3+Y"
        U = universal_family(2, 5)
        ad = generic_additive_polynomial(U)
        cands = disputed_coefficient_candidates(U)
        assert ad == cands["t3^2"]
        res = arbitrate_candidates(U, cands, disputed_coefficient_points(U))
        # the oracle must accept the computed polynomial at every point
        assert all(r.accepted["t3^2"] for r in res)
        rejected = [r.value for r in res if not r.accepted["t3"]]
        assert rejected, "no specialization separates the two candidates"
        notes.append("oracle accepts t3^2 everywhere; the printed t3 coefficient is rejected at "
                     + ", ".join(rejected))


@pytest.mark.parametrize("p,m", [(2, 7), (2, 9), (3, 7), (5, 6)])
def test_criterion_3_generic_ad_is_y(verdicts, p, m):
    with criterion(verdicts, f"3.{p}{m}", f"generic Ad = Y for (p,m)=({p},{m})"):
        assert format_generic(generic_additive_polynomial(universal_family(p, m))) == "Y"


@pytest.mark.parametrize("p,n", [(3, 1), (3, 2), (5, 1), (2, 2), (2, 3)])
def test_criterion_4_linearized(verdicts, p, n):
    desc = f"X^(1+{p}^{n}): order, Ad, type" + (", order<=2 count" if p == 2 else "")
    with criterion(verdicts, f"4.{p}{n}", desc) as notes:
        F = field_create(p)
        t0 = time.perf_counter()
        rep = analyze(X(F, {1 + p ** n: 1}))
        dt = time.perf_counter() - t0
        assert rep.order == p ** (2 * n + 1)
        assert rep.ad == X(F, {1: 1, p ** (2 * n): 1})
        assert rep.label.kind == "extraspecial"
        assert rep.label.type == ("III.b" if p == 2 else "I")
        if p == 2:
            low = rep.profile.order_stats[1] + rep.profile.order_stats[2]
            assert low == 2 ** (2 * n) - 2 ** n
        if (p, n) == (2, 3):
            assert dt < 10.0, f"took {dt:.1f}s"
            notes.append(f"{dt:.2f}s, limit 10s")
        PRODUCED[f"X^(1+{p}^{n})"] = rep.group


def test_criterion_5_witt_constructions(verdicts):
    with criterion(verdicts, 5, "cyclic p^2 for p=3,5 and extraspecial(27, II) with S^p-S identity"):
        for p in (3, 5):
            rep = analyze(realize_cyclic_p2(p))
            assert str(rep.label) == f"cyclic({p * p})"
            PRODUCED[f"f_1 p={p}"] = rep.group
        d = realize_type_II_data(3, 1)
        K = d.S.ring
        th_q = K.frob(d.theta, 1)
        assert d.S.frob(1) - d.S == X(K, {9: th_q, 1: th_q})
        rep = analyze(d.f)
        assert str(rep.label) == "extraspecial(27, II) [M(27)]"
        PRODUCED["type II (3,1)"] = rep.group


def _constraints(K, a, b):
    pw = K.pow
    c1 = K.add(K.add(1, pw(b, 5)), K.mul(b, pw(a, 6)))
    c2 = K.add(K.add(K.mul(pw(b, 2), pw(a, 4)), K.mul(a, pw(b, 4))), pw(a, 7))
    return c1, c2


D8_TARGETS = {"1": "Z/2xZ/4", "2i": "(Z/2)^3", "2ii": "D8", "2iii": "Q8"}


@pytest.mark.xfail(strict=True, reason="case 2i (a = b^14) gives Z/2 x Z/4, not (Z/2)^3; "
                                       "no member of the family is elementary abelian")
def test_criterion_6_conductor25_family(verdicts):
    with criterion(verdicts, 6, "conductor-25 family cases 1, 2i, 2ii, 2iii"):
        got = {}
        for case, want in D8_TARGETS.items():
            c = realize_D8_family(case)
            assert _constraints(c.field, c.a, c.b) == (0, 0)
            rep = analyze(c.f)
            assert rep.ad == X(c.field, {4: 1, 2: c.a, 1: c.b})
            got[case] = rep.label.short
            PRODUCED[f"conductor 25 case {case}"] = rep.group
        wrong = {k: v for k, v in got.items() if D8_TARGETS[k] != v}
        assert not wrong, "; ".join(f"case {k} gives {v}, expected {D8_TARGETS[k]}" for k, v in wrong.items())


def test_criterion_6_cases_other_than_2i(verdicts):
    """The part of criterion 6 that holds: cases 1, 2ii, 2iii and every constraint check."""
    for case in ("1", "2ii", "2iii"):
        c = realize_D8_family(case)
        rep = analyze(c.f)
        assert rep.label.short == D8_TARGETS[case]
        PRODUCED[f"conductor 25 case {case}"] = rep.group


def test_criterion_7_optimal_examples(verdicts):
    with criterion(verdicts, 7, "red((X+X^4)^7) order 8 ratio 2/3; X^7+2X^5 order 9"):
        f = reduce_artin_schreier(X(F2, {1: 1, 4: 1}) ** 7)
        rep = analyze(f)
        assert rep.order == 8 and rep.ratio() == Fraction(2, 3)
        PRODUCED["red((X+X^4)^7)"] = rep.group
        rep = analyze(X(F3, {7: 1, 5: 2}))
        assert rep.order == 9
        PRODUCED["X^7+2X^5"] = rep.group


# ---------------------------------------------------------------------------
# criterion 8: bound suite
# ---------------------------------------------------------------------------

def random_reduced(F, m, rng):
    p = F.p
    terms = {i: rng.randrange(p) for i in range(1, m) if i % p}
    terms[m] = rng.randrange(1, p)
    return X(F, terms)


def without_linear_term(f):
    """c X has Delta = 0, so it changes neither the group nor the genus."""
    return X(f.ring, {k: c for k, c in f.terms.items() if k != 1})


def _non_root_checks(rep, rng, count=10):
    """The oracle must reject `count` random non-roots (from a quadratic extension
    of the working field when the roots fill it)."""
    K = rep.roots.field
    F = K if rep.roots.r < K.e else field_create(K.p, 2 * K.e)
    test = _oracle_evaluator(rep.red_f, F)
    emb = embed_map(K, F)
    ad = rep.roots.ad.map_coeffs(emb, F)
    seen = 0
    while seen < count:
        y = F.random(rng)
        if ad.evaluate(y) == 0:
            continue
        seen += 1
        assert not test(y), "oracle accepts a non-root"


def _bound_checks(rep, rng):
    p, m = rep.p, rep.conductor
    ad = rep.ad
    assert ad.degree() <= (m - 1) ** 2
    if gcd(m - 1, p) == 1:
        assert ad.degree() == 1
    assert check_additive_separable(ad) == (True, True)
    # closure, cocycle identity, bilinearity and decompose == series run inside analyze
    for name in ("root_closure", "cocycle_identity", "epsilon_bilinear_alternating", "pf_series_agreement"):
        assert name in rep.checks
    assert pf_by_series(rep.red_f) == rep.decomposition.p_f
    test = _oracle_evaluator(rep.red_f, rep.roots.field)
    assert all(test(y) for y in rep.roots.basis)
    _non_root_checks(rep, rng)
    s, ell = 0, m - 1
    while ell % p == 0:
        ell //= p
        s += 1
    if ell > 1:
        assert rep.order <= (2 ** s if p == 2 else p ** (s + 1)), "order above the l p^s bound"
    g = rep.genus
    tripped = False
    if g > 1:
        thr = Fraction(2, 3) if p == 2 else Fraction(p, p - 1)
        if Fraction(rep.order, 1) / g > thr:
            tripped = True
            assert is_x_times_additive(without_linear_term(rep.red_f))[0], \
                "ratio above threshold but f is not X R(X)"
    return tripped


GRID = [(p, m) for p in (2, 3, 5) for m in range(2, 41) if m % p]
PER_CELL = 200


def test_criterion_8_bound_suite(verdicts):
    with criterion(verdicts, 8, f"bound suite, {PER_CELL} random f per cell, {len(GRID)} cells") as notes:
        done = capped = tripped = 0
        for p, m in GRID:
            F = field_create(p)
            rng = random.Random(1000 * p + m)
            for k in range(PER_CELL):
                f = random_reduced(F, m, rng)
                try:
                    rep = analyze(f, seed=k)
                except CapExceeded:
                    capped += 1
                    continue
                try:
                    tripped += _bound_checks(rep, rng)
                except AssertionError as exc:
                    raise AssertionError(f"p={p} m={m} f={f}: {exc}") from None
                done += 1
        notes.append(f"{done} analyzed, {capped} over the size cap, threshold tripped {tripped} times, 0 failures")


# ---------------------------------------------------------------------------
# criterion 9: modifications
# ---------------------------------------------------------------------------

def _random_additive(F, top, rng):
    p = F.p
    terms = {1: rng.randrange(1, p)}
    for j in range(1, top + 1):
        terms[p ** j] = rng.randrange(p)
    terms[p ** top] = rng.randrange(1, p)
    return X(F, terms)


def test_criterion_9_modifications(verdicts):
    with criterion(verdicts, 9, "type-1 divisibility/epsilon on 50 pairs, strict example, type-2 on 50 pairs") as notes:
        rng = random.Random(9)
        n1 = skipped = 0
        while n1 < 50:
            p = rng.choice((2, 3, 5))
            F = field_create(p)
            m = rng.choice([k for k in range(2, 12) if k % p])
            f = random_reduced(F, m, rng)
            S = _random_additive(F, 1 if p > 2 or m > 6 else rng.choice((1, 2)), rng)
            try:
                res = modify_type1(f, S, max_order_exp=11)
            except CapExceeded:
                skipped += 1
                continue
            assert res.checks == ["type1_divisibility", "type1_epsilon"]
            n1 += 1
        res = modify_type1(X(F3, {10: 1}), X(F3, {1: 1, 3: 1}))
        assert res.report.red_f == X(F3, {4: 1, 10: 2, 28: 1})
        assert res.divisor.degree() < res.report.ad.degree()
        pairs = _type2_pairs(rng, 50)
        for f, g in pairs:
            res = modify_type2(f, g, max_order_exp=11)
            assert res.checks == ["type2_divisibility", "type2_epsilon"]
            assert poly_rem(res.report.ad, res.divisor).is_zero()
        nontrivial = sum(res_deg > 1 for res_deg in (additive_polynomial(reduce_artin_schreier(g)).degree()
                                                     for _, g in pairs))
        notes.append(f"{skipped} type-1 draws over the size cap redrawn; {nontrivial}/50 type-2 pairs with deg Ad_g > 1")


def _type2_pairs(rng, count):
    """Pairs (f, g) with Ad(red g) | Ad(red f), drawn from a pool of random small covers.

    Pairs with deg Ad(red g) > 1 are preferred so that the epsilon check is not vacuous."""
    pool = []
    for p, ms in ((2, (3, 5, 9)), (3, (4, 7, 10))):
        F = field_create(p)
        for _ in range(120):
            f = random_reduced(F, rng.choice(ms), rng)
            pool.append((f, additive_polynomial(f)))
    candidates = []
    for f, af in pool:
        for g, ag in pool:
            if f is g or f.ring is not g.ring or ag.degree() == 1:
                continue
            if poly_rem(af, ag).is_zero() and reduce_artin_schreier(f + g).degree() >= 2:
                candidates.append((f, g))
    assert len(candidates) >= count, "pool too small"
    return rng.sample(candidates, count)


# ---------------------------------------------------------------------------
# criterion 10 and 11
# ---------------------------------------------------------------------------

def test_criterion_10_closure(verdicts):
    with criterion(verdicts, 10, "extraspecial closure of every group from criteria 1-7") as notes:
        if len(PRODUCED) < 10:
            _rebuild_groups()
        for name, G in PRODUCED.items():
            cl = extraspecial_closure(G)
            assert cl.profile.center_order == G.p, name
            assert "saturated" in cl.checks and "contains_group" in cl.checks
            if G.p == 2:
                assert "bilinearization_solvable" in cl.checks
        notes.append(f"{len(PRODUCED)} groups")


def _rebuild_groups():
    PRODUCED["classic D8"] = analyze(classic_D8_example()).group
    for p, n in [(3, 1), (3, 2), (5, 1), (2, 2), (2, 3)]:
        PRODUCED[f"X^(1+{p}^{n})"] = analyze(X(field_create(p), {1 + p ** n: 1})).group
    for p in (3, 5):
        PRODUCED[f"f_1 p={p}"] = analyze(realize_cyclic_p2(p)).group
    PRODUCED["type II (3,1)"] = analyze(realize_type_II_data(3, 1).f).group
    for case in D8_TARGETS:
        PRODUCED[f"conductor 25 case {case}"] = analyze(realize_D8_family(case).f).group
    PRODUCED["red((X+X^4)^7)"] = analyze(reduce_artin_schreier(X(F2, {1: 1, 4: 1}) ** 7)).group
    PRODUCED["X^7+2X^5"] = analyze(X(F3, {7: 1, 5: 2})).group


def test_criterion_11_saturated_round_trip(verdicts):
    with criterion(verdicts, 11, "all proper additive divisors of Y^16+Y realized with Ad = S_F") as notes:
        t0 = time.perf_counter()
        base = analyze(X(F2, {5: 1}))
        E = base.group
        cl = extraspecial_closure(E)
        assert cl.profile.center_order == 2
        divs = additive_divisors(base.roots)
        assert len(divs) == 65
        shapes = {}
        for rows, S in divs:
            rep = analyze(realize_saturated(2, 2, S, "IIIb"))
            assert rep.ad == S
            H = E.restrict([tuple(r) for r in rows])
            ph = profile(H)
            assert ph.order_stats == rep.profile.order_stats
            assert str(ph.label) == str(rep.label)
            shapes[rep.label.short] = shapes.get(rep.label.short, 0) + 1
        dt = time.perf_counter() - t0
        assert dt < 120, f"took {dt:.0f}s"
        notes.append(f"{dt:.1f}s; " + ", ".join(f"{k} x{v}" for k, v in sorted(shapes.items())))
