import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wildaut.cover import analyze
from wildaut.field import field_create
from wildaut.group import (
    CocycleGroup, PresentationError, as_abstract, bilinearize_cocycle, classify,
    cocycle_of_extension, cyclic_group, dihedral8, extraspecial_closure, normal_form_cocycle,
    product_group, profile, quaternion_group,
)
from wildaut.poly import UniPoly
from wildaut.realize import realize_cyclic_p2, realize_linearized


def mono(p, k):
    return UniPoly(field_create(p), {k: 1})


def q4_counts(n):
    return {2 ** (2 * n) - 2 ** n, 2 ** (2 * n) + 2 ** n}


# -- building groups from covers --------------------------------------------

def test_group_orders():
    assert analyze(mono(3, 2)).order == 3
    assert analyze(mono(2, 3)).order == 8
    for p, n in [(2, 1), (2, 2), (3, 1), (5, 1)]:
        assert analyze(mono(p, 1 + p ** n)).order == p ** (2 * n + 1)


def test_profiles(classic_report):
    assert analyze(mono(2, 3)).profile.order_stats == {1: 1, 2: 1, 4: 6}
    assert classic_report.profile.order_stats == {1: 1, 2: 5, 4: 2}


def test_profile_zero_data_is_elementary_abelian():
    G = CocycleGroup(3, 2, lambda v, w: 0)
    prof = profile(G)
    assert prof.exponent == 3 and prof.derived_order == 1 and prof.center_order == 27


def test_classify_examples(classic_report):
    rep = analyze(mono(2, 3))
    assert str(rep.label) == "extraspecial(8, III.b) [Q8]"
    assert classic_report.label.short == "D8"
    assert str(analyze(realize_cyclic_p2(3)).label) == "cyclic(9)"
    assert str(analyze(mono(3, 4)).label) == "extraspecial(27, I) [E(27)]"


def test_central_product_is_flagged_ambiguous():
    # extraspecial core of order 8 times a Z/4 factor through the radical
    E = np.array([[0, 1, 0], [1, 0, 0], [0, 0, 0]])
    G = CocycleGroup(2, 3, normal_form_cocycle(2, E, [0, 0, 1]))
    lab = profile(G).label
    assert lab.kind == "central_product" and lab.ambiguous
    assert "product-ambiguous" in str(lab)
    G = CocycleGroup(2, 3, normal_form_cocycle(2, E, [0, 0, 0]))
    lab = profile(G).label
    assert lab.kind == "central_product" and not lab.ambiguous and lab.ext.type == "III.a"


# -- cocycles of abstract extensions ----------------------------------------

def test_cocycle_of_split_extension_is_zero():
    for p in (2, 3):
        Z = cyclic_group(p)
        G = product_group(Z, Z)
        ext = cocycle_of_extension(G, [(i, 0) for i in range(p)])
        assert set(ext.table.values()) == {0}


def test_cocycle_of_z4():
    ext = cocycle_of_extension(cyclic_group(4), [0, 2])
    assert ext.table[((1,), (1,))] == 1


def test_cocycle_of_q8_matches_epsilon():
    rep = analyze(mono(2, 3))
    G = rep.group
    ext = cocycle_of_extension(as_abstract(G), [((0, 0), 0), ((0, 0), 1)])
    H = ext.group()
    for u in H.vectors():
        for v in H.vectors():
            gu, gv = ext.section[u][0], ext.section[v][0]
            assert H.epsilon(u, v) == G.epsilon(gu, gv)


def test_cocycle_of_extension_rejects_non_central():
    with pytest.raises(PresentationError):
        cocycle_of_extension(dihedral8(), [(0, 0), (0, 1)])
    with pytest.raises(PresentationError):
        cocycle_of_extension(cyclic_group(8), [0, 4])


def test_abstract_q8_d8_profiles():
    for grp, z, q4 in ((quaternion_group(), (-1, "1"), 6), (dihedral8(), (2, 0), 2)):
        ext = cocycle_of_extension(grp, [grp.identity, z])
        assert profile(ext.group()).order_stats.get(4, 0) == q4


# -- bilinearization and closure ---------------------------------------------

def test_bilinearize_examples():
    bl = bilinearize_cocycle(CocycleGroup(2, 2, lambda v, w: 0))
    assert not np.any((bl.A + bl.A.T) % 2)
    z4 = cocycle_of_extension(cyclic_group(4), [0, 2]).group()
    assert bilinearize_cocycle(z4).A.tolist() == [[1]]
    G = analyze(mono(2, 3)).group
    bl = bilinearize_cocycle(G)
    assert ((bl.A + bl.A.T) % 2).tolist() == (G.epsilon_matrix() % 2).tolist()


def test_closure_examples():
    cl = extraspecial_closure(CocycleGroup(3, 1, lambda v, w: 0))
    assert cl.profile.order == 27 and cl.profile.exponent == 3 and str(cl.profile.label).endswith("[E(27)]")
    z4 = cocycle_of_extension(cyclic_group(4), [0, 2]).group()
    cl = extraspecial_closure(z4)
    assert cl.profile.order == 8 and cl.profile.center_order == 2
    assert cl.profile.order_stats[4] in (2, 6)
    for rep in (analyze(mono(3, 4)), analyze(mono(2, 3))):
        cl = extraspecial_closure(rep.group)
        assert cl.profile.order == rep.order * rep.p ** 2 and cl.profile.center_order == rep.p


# -- properties over random cocycle data --------------------------------------

@st.composite
def normal_forms(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    r = draw(st.integers(1, 4 if p == 2 else 3))
    E = np.zeros((r, r), dtype=np.int64)
    for i in range(r):
        for j in range(i + 1, r):
            E[i, j] = draw(st.integers(0, p - 1))
            E[j, i] = -E[i, j] % p
    s = [draw(st.integers(0, p - 1)) for _ in range(r)]
    return CocycleGroup(p, r, normal_form_cocycle(p, E, s)), E, s


@settings(max_examples=40)
@given(normal_forms())
def test_normal_form_group_properties(data):
    G, E, s = data
    p = G.p
    G.check_cocycle(random.Random(0))
    G.check_bilinear(random.Random(0))
    assert (G.epsilon_matrix() % p).tolist() == (E % p).tolist()
    assert G.s_basis() == [x % p for x in s]
    prof = profile(G)
    assert prof.center_order == p ** (1 + prof.radical_dim)
    assert sum(prof.order_stats.values()) == G.order
    # order stats agree with direct powering
    direct = {}
    for x in G.elements():
        k, y = 1, x
        while y != G.identity():
            y = G.mul(y, x)
            k += 1
        direct[k] = direct.get(k, 0) + 1
    assert direct == prof.order_stats
    lab = prof.label
    if lab.kind == "extraspecial" and p == 2:
        assert prof.order_stats.get(4, 0) in q4_counts(lab.rank // 2)
    cl = extraspecial_closure(G)
    assert cl.profile.center_order == p


@settings(max_examples=20)
@given(st.integers(1, 2), st.data())
def test_linearized_family_order4_counts(n, data):
    K = field_create(2, 2)
    t = [0] + [data.draw(st.integers(0, 3)) for _ in range(n - 1)]
    rep = analyze(realize_linearized(2, n, t, K))
    assert rep.order == 2 ** (2 * n + 1)
    assert rep.profile.order_stats.get(4, 0) == 2 ** (2 * n) + 2 ** n
