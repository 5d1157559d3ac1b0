import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from wildaut.field import (
    FieldElement, FieldError, arith, embed, embed_map, field_create, first_irreducible, frobenius,
)
from wildaut.linalg import fp_linear_solve, kernel
from wildaut.roots import linear_map_matrix
from wildaut.poly import UniPoly

FIELDS = [(2, 1), (2, 2), (2, 4), (3, 1), (3, 2), (3, 3), (5, 2), (2, 20), (3, 12), (7, 7)]


def test_prime_field():
    F = field_create(2, 1)
    assert F.q == 2 and len(F.modulus) == 2


def test_f4_modulus_is_unique_quadratic():
    assert field_create(2, 2).modulus == (1, 1, 1)


def test_f9_modulus_is_first_irreducible():
    # enumerate monic quadratics c0 + c1 Y + Y^2 in numeric order, keep the first without roots in F_3
    cands = [(c0, c1, 1) for c1 in range(3) for c0 in range(3)]
    first = next(m for m in cands if all((m[0] + m[1] * x + x * x) % 3 for x in range(3)))
    assert field_create(3, 2).modulus == first


def test_create_errors():
    with pytest.raises(FieldError):
        field_create(4, 1)
    with pytest.raises(FieldError):
        field_create(2, 0)
    with pytest.raises(FieldError):
        field_create(2, 65)


def test_create_deterministic():
    assert field_create(5, 3) is field_create(5, 3)
    assert first_irreducible(5, 3) == field_create(5, 3).modulus


def test_arith_examples():
    K = field_create(2, 2)
    w = K.element(K.generator())
    assert (w * w).value == K.add(K.generator(), 1)
    assert (w ** 3).value == 1
    F3 = field_create(3, 1)
    assert arith(F3.element(2), None, "inv").value == 2
    with pytest.raises(ZeroDivisionError):
        arith(F3.element(0), None, "inv")
    with pytest.raises(FieldError):
        arith(F3.element(1), K.element(1), "add")


def test_frobenius_examples():
    K = field_create(2, 2)
    w = K.element(K.generator())
    assert frobenius(w, 1).value == K.add(K.generator(), 1)
    F = field_create(7, 1)
    assert frobenius(F.element(3), 5).value == 3


def test_embed_examples():
    K4, K16, K256 = field_create(2, 2), field_create(2, 4), field_create(2, 8)
    r = embed(K4.element(K4.generator()), K16)
    assert (r * r + r + 1).value == 0
    assert embed(K4.element(1), K16).value == 1
    rng = random.Random(3)
    f1, f2, direct = embed_map(K4, K16), embed_map(K16, K256), embed_map(K4, K256)
    for _ in range(10):
        a = K4.random(rng)
        assert f2(f1(a)) == direct(a)
    with pytest.raises(FieldError):
        embed_map(field_create(2, 3), K16)


def test_linear_solve_examples():
    assert len(fp_linear_solve(np.zeros((3, 3), dtype=np.int64), 5)) == 3
    assert fp_linear_solve(np.eye(4, dtype=np.int64), 3) == []
    K = field_create(2, 4)
    M = linear_map_matrix(UniPoly(K, {4: 1, 1: 1}), K)
    assert len(kernel(M, 2)) == 2
    assert fp_linear_solve(np.array([[1, 1], [1, 1]]), 2, "solve", [0, 1]) is None


@pytest.mark.parametrize("p,e", FIELDS)
def test_field_axioms_sampled(p, e):
    K = field_create(p, e)
    rng = random.Random(p * 100 + e)
    for _ in range(200):
        a, b, c = (K.random(rng) for _ in range(3))
        assert K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c))
        assert K.mul(K.mul(a, b), c) == K.mul(a, K.mul(b, c))
        assert K.frob(K.mul(a, b)) == K.mul(K.frob(a), K.frob(b))
        assert K.frob(K.add(a, b)) == K.add(K.frob(a), K.frob(b))
        assert K.frob(K.frob(a, 1), e - 1) == a
        if a:
            assert K.mul(a, K.inv(a)) == 1
            assert K.pow(a, K.q - 1) == 1


@given(st.sampled_from([(2, 3), (3, 2), (5, 2), (3, 5)]), st.integers(0, 10**9), st.integers(0, 10**9))
def test_embedding_is_homomorphism(pe, x, y):
    p, e = pe
    src, dst = field_create(p, e), field_create(p, 2 * e)
    f = embed_map(src, dst)
    a, b = x % src.q, y % src.q
    assert f(src.add(a, b)) == dst.add(f(a), f(b))
    assert f(src.mul(a, b)) == dst.mul(f(a), f(b))


@given(st.integers(0, 3**12 - 1), st.integers(0, 3**12 - 1))
def test_large_field_mul_matches_schoolbook(a, b):
    from wildaut.field import _pmulmod

    K = field_create(3, 12)
    assert not K.tables
    ref = K.from_digits(_pmulmod(K.digits(a), K.digits(b), K._mod_list, 3))
    assert K.mul(a, b) == ref


def test_element_wrapper_ops():
    K = field_create(5, 2)
    a = K.element(7)
    assert isinstance(a + 1, FieldElement)
    assert ((a / a) - 1).is_zero()
    assert len(a.coords) == 2
