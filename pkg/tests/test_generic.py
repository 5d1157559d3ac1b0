import random

import pytest

from wildaut.field import field_create
from wildaut.generic import (
    arbitrate_candidates, disputed_coefficient_candidates, disputed_coefficient_points,
    format_generic, generic_additive_polynomial, j0_data, parameter_exponents, specialize,
    universal_family,
)
from wildaut.poly import CoverError, UniPoly


def test_universal_family_shape():
    U = universal_family(2, 3)
    assert tuple(U.names) == ("t1",)
    a = U.decomposition.y_coefficients()
    assert set(a) == {2}
    assert format_generic(a[2]) == "Y^4+Y"
    U = universal_family(3, 4)
    assert format_generic(U.decomposition.y_coefficients()[3]) == "Y^9+(2*t2^3)*Y^3+Y"
    assert parameter_exponents(3, 7) == [1, 2, 4, 5]


def test_j0_leading_term():
    assert j0_data(3, 7) == (2, 1, 4)
    U = universal_family(3, 7)
    a = U.decomposition.y_coefficients()[4]
    assert a.degree() == 3 and U.ring.fmt(a.lc()) == "2"
    assert j0_data(2, 9) is None


def test_universal_family_errors():
    with pytest.raises(CoverError):
        universal_family(3, 6)
    with pytest.raises(CoverError):
        universal_family(2, 1)


@pytest.mark.parametrize("p,m,expected", [
    (2, 3, "Y^4+Y"),
    (3, 4, "Y^9+(2*t2^3)*Y^3+Y"),
    (2, 5, "Y^16+(t3^4)*Y^8+(t3^2)*Y^2+Y"),
    (2, 7, "Y"), (2, 9, "Y"), (3, 7, "Y"), (5, 6, "Y"),
])
def test_generic_ad(p, m, expected):
    U = universal_family(p, m)
    assert format_generic(generic_additive_polynomial(U)) == expected


def test_leading_y_coefficient_shape():
    """a_{m-1}(Y) - mY has only p-th power monomials, and deg a_{m-1} <= (m-1)^2."""
    for p, m in [(2, 5), (3, 4), (3, 7), (2, 7), (5, 6)]:
        U = universal_family(p, m)
        A = U.ring
        a = U.decomposition.y_coefficients()[m - 1]
        assert a.degree() <= (m - 1) ** 2
        rest = a - UniPoly(A, {1: A.scalar(m)})
        for k, c in rest.terms.items():
            assert k % p == 0 and A.is_pth_power(c)


def test_disputed_coefficient_arbitration():
    U = universal_family(2, 5)
    res = arbitrate_candidates(U, disputed_coefficient_candidates(U), disputed_coefficient_points(U))
    assert [r.accepted for r in res] == [
        {"t3": True, "t3^2": True},
        {"t3": False, "t3^2": True},
        {"t3": False, "t3^2": True},
    ]


def _zero(U, F):
    return {n: F.zero for n in U.names}


def test_specialize_examples():
    F3, F2 = field_create(3), field_create(2)
    U = universal_family(3, 4)
    sp = specialize(U, F3, _zero(U, F3))
    assert sp.report.ad == UniPoly(F3, {9: 1, 1: 1}) and not sp.degenerate
    U = universal_family(2, 5)
    sp = specialize(U, F2, _zero(U, F2))
    assert sp.report.ad == UniPoly(F2, {16: 1, 1: 1})
    U = universal_family(2, 3)
    F8 = field_create(2, 3)
    for v in range(8):
        assert specialize(U, F8, {"t1": v}).report.ad == UniPoly(F8, {4: 1, 1: 1})


def test_specialize_requires_all_parameters():
    U = universal_family(3, 4)
    with pytest.raises(ValueError):
        specialize(U, field_create(3), {"t1": 0})


def test_specialization_can_degenerate_at_special_points():
    """Generic Ad = Y but X^9 (all t = 0) has Ad = Y^64 + Y: strict divisibility, flagged."""
    F2 = field_create(2)
    U = universal_family(2, 9)
    sp = specialize(U, F2, _zero(U, F2))
    assert sp.degenerate and sp.report.ad.degree() == 64


@pytest.mark.parametrize("p,m,e", [(2, 3, 3), (2, 5, 2), (3, 4, 2), (2, 7, 2), (2, 9, 2), (3, 7, 1), (5, 6, 1)])
def test_specialization_compatibility(p, m, e):
    rng = random.Random(100 * p + m)
    U = universal_family(p, m)
    F = field_create(p, e)
    for _ in range(5):
        sp = specialize(U, F, {n: F.random(rng) for n in U.names})
        if sp.degenerate:
            assert sp.report.ad.degree() > sp.image.degree()
        else:
            assert sp.report.ad == sp.image
