import random

import pytest
from hypothesis import given, strategies as st

from wildaut.field import field_create
from wildaut.paramring import ParamRing, specialize_poly
from wildaut.poly import (
    BiPoly, CoverError, UniPoly, check_additive_separable, cover_invariants, distinct_degree_profile,
    format_poly, poly_gcd, reduce_artin_schreier, reduce_with_witness, shift_x, substitute,
)

F2, F3 = field_create(2), field_create(3)


def poly(F, terms):
    return UniPoly(F, terms)


def test_reduce_examples():
    assert reduce_artin_schreier(poly(F2, {2: 1})) == poly(F2, {1: 1})
    for n in (1, 2):
        p = 3
        f = poly(F3, {1 + p**n: 1, 1 + p ** (n + 1): 1, p + p**n: 1, p + p ** (n + 1): 1})
        want = poly(F3, {1 + p ** (n - 1): 1, 1 + p**n: 2, 1 + p ** (n + 1): 1})
        assert reduce_artin_schreier(f) == want
    f = poly(F3, {5: 1, 7: 2})
    assert reduce_artin_schreier(f) == f


def _random_poly(F, rng, deg):
    return UniPoly(F, {k: F.random(rng) for k in range(deg + 1)})


@given(st.sampled_from([(2, 1), (2, 3), (3, 1), (3, 2), (5, 1)]), st.integers(0, 2**32), st.integers(1, 60))
def test_reduction_witness_and_idempotence(pe, seed, deg):
    K = field_create(*pe)
    f = _random_poly(K, random.Random(seed), deg)
    red, Q, const = reduce_with_witness(f)
    # f = red + Q^p - Q + const, with Q^p the p-th power of the polynomial
    assert red + Q ** K.p - Q + UniPoly.constant(K, const) == f
    assert reduce_artin_schreier(red) == red
    assert all(k % K.p for k in red.terms)


def test_cover_invariants():
    assert cover_invariants(poly(F2, {3: 1}))[1:] == (3, 1)
    assert cover_invariants(poly(F3, {2: 1}))[1:] == (2, 1)
    with pytest.raises(CoverError):
        cover_invariants(poly(F2, {2: 1, 1: 1}))


def test_gcd_examples():
    Y = lambda t: poly(F2, t)
    assert poly_gcd(Y({4: 1, 1: 1}), Y({3: 1, 2: 1, 1: 1})) == Y({3: 1, 2: 1, 1: 1})
    K = field_create(5)
    assert poly_gcd(poly(K, {2: 3, 0: 1}), UniPoly(K)) == poly(K, {2: 1, 0: 2})


def test_param_gcd_specializes():
    A = ParamRing(3, ["t"])
    t = A.var("t")
    a = UniPoly(A, {2: t, 1: A.one})
    b = UniPoly(A, {3: A.pow(t, 2)})
    g = poly_gcd(a, b)
    assert g == UniPoly(A, {1: A.one})
    for v in (1, 2):
        ga = poly_gcd(specialize_poly(a, F3, [v]), specialize_poly(b, F3, [v]))
        assert ga == specialize_poly(g, F3, [v]).monic()


def test_distinct_degree_profile():
    assert distinct_degree_profile(poly(F2, {4: 1, 1: 1})) == [(1, 2), (2, 2)]
    assert distinct_degree_profile(poly(F2, {2: 1, 1: 1, 0: 1})) == [(2, 2)]
    prof = distinct_degree_profile(poly(field_create(2), {10: 1, 5: 1, 0: 1}))
    assert all(4 % d == 0 for d, _ in prof)
    assert sum(tot for _, tot in prof) == 10


def test_additive_separable():
    assert check_additive_separable(poly(F2, {4: 1, 1: 1})) == (True, True)
    assert check_additive_separable(poly(F2, {2: 1, 3: 1}))[0] is False
    assert check_additive_separable(poly(F3, {3: 1})) == (True, False)


def test_substitution_examples():
    assert shift_x(poly(F2, {3: 1})) == BiPoly(F2, {(3, 0): 1, (2, 1): 1, (1, 2): 1, (0, 3): 1})
    assert shift_x(poly(F2, {5: 1})) == BiPoly(F2, {(5, 0): 1, (4, 1): 1, (1, 4): 1, (0, 5): 1})
    S = poly(F2, {1: 1, 2: 1})
    assert substitute(poly(F2, {3: 1}), "X", S) == S ** 3


@given(st.sampled_from([(2, 2), (3, 2), (5, 1)]), st.integers(0, 2**32))
def test_format_is_canonical(pe, seed):
    from wildaut.parse import parse_poly

    K = field_create(*pe)
    f = _random_poly(K, random.Random(seed), 12)
    assert parse_poly(format_poly(f), K) == f
