import pytest

from reflexhom.algebra import group_algebra, loday_module
from reflexhom.delta_r import validate_delta_r_map, validate_delta_r_module
from reflexhom.engine import hr
from reflexhom.errors import NotAGroup, OrbitNotInversionClosed
from reflexhom.finitegroup import FiniteGroup
from reflexhom.groups import (bar_reflexive_set, conjugacy_data, decomposition_check, em_reflexive_module,
                              gamma_reflexive_set, hr_group, linearize, mac_lane_isomorphism, projection_check,
                              validate_reflexive_set)
from reflexhom.linalg import GF, QQ, ZZ, HomologyGroup, Matrix

F2 = GF(2)


def test_finite_group_checks():
    with pytest.raises(NotAGroup, match="associativity|inverses|identity"):
        FiniteGroup(["a", "b", "c"], [[0, 1, 2], [1, 1, 0], [2, 0, 1]])
    s3 = FiniteGroup.symmetric(3)
    assert s3.order == 6 and not s3.is_abelian
    assert FiniteGroup.klein_four().is_abelian


def test_gamma_sets():
    t = gamma_reflexive_set(FiniteGroup.trivial(), 3)
    assert t.sizes == [1, 1, 1, 1]
    assert validate_reflexive_set(t) == []
    c2 = gamma_reflexive_set(FiniteGroup.cyclic(2), 2)
    assert c2.involutions[1] == list(range(4))
    g = FiniteGroup.cyclic(3)
    c3 = gamma_reflexive_set(g, 2)
    # r_1(g, h) = (g^2, h^2)
    for i, (a, b) in enumerate(c3.labels[1]):
        assert c3.labels[1][c3.involutions[1][i]] == (g.mul(a, a), g.mul(b, b))
    assert validate_reflexive_set(c3) == []


def test_bar_sets():
    for g in (FiniteGroup.cyclic(2), FiniteGroup.cyclic(3), FiniteGroup.symmetric(3)):
        b = bar_reflexive_set(g, 3)
        assert b.sizes[0] == 1
        assert validate_reflexive_set(b) == []
        assert projection_check(g, ZZ, 3) == []
    b = bar_reflexive_set(FiniteGroup.cyclic(2), 2)
    for i, (x, y) in enumerate(b.labels[2]):
        assert b.labels[2][b.involutions[2][i]] == (y, x)


def test_validate_reflexive_set_catches_bad_involution():
    b = bar_reflexive_set(FiniteGroup.cyclic(3), 2)
    b.involutions[1] = [0, 1, 2]  # identity instead of inversion
    assert any("r_" in v for v in validate_reflexive_set(b))


def test_linearize():
    f = linearize(gamma_reflexive_set(FiniteGroup.trivial(), 4), ZZ)
    assert f.ranks == (1,) * 5
    assert linearize(bar_reflexive_set(FiniteGroup.cyclic(2), 2), F2).ranks[1] == 2


def test_hr_group():
    z2 = HomologyGroup(ZZ, 0, (2,))
    assert hr_group(FiniteGroup.trivial(), ZZ, 3) == [HomologyGroup(ZZ, 1), z2, HomologyGroup(ZZ, 0), z2]
    # regression pin, matches the decomposition check below
    assert hr_group(FiniteGroup.cyclic(2), F2, 2) == [HomologyGroup(F2, k) for k in (1, 2, 3)]
    for g in (FiniteGroup.cyclic(3), FiniteGroup.symmetric(3)):
        assert hr_group(g, QQ, 0) == [HomologyGroup(QQ, 1)]


def test_em_modules():
    t = em_reflexive_module(FiniteGroup.trivial(), "trivial", ZZ, 4)
    assert validate_delta_r_module(t) == []
    assert all(t.c2_action(n) == Matrix.scalar(ZZ, 1, (-1) ** (n * (n + 1) // 2)) for n in range(5))
    c2 = em_reflexive_module(FiniteGroup.cyclic(2), "conjugation", ZZ, 3)
    assert validate_delta_r_module(c2) == []
    g = FiniteGroup.cyclic(3)
    d = conjugacy_data(g)
    with pytest.raises(OrbitNotInversionClosed):
        em_reflexive_module(g, [d.class_of[1]], QQ, 2)
    ok = em_reflexive_module(g, [d.class_of[1], d.class_of[2]], QQ, 3)
    assert validate_delta_r_module(ok) == []


def test_conjugacy_data():
    d = conjugacy_data(FiniteGroup.cyclic(4))
    assert len(d.classes) == 4 and all(len(c) == 4 for c in d.centralizers)
    s3 = conjugacy_data(FiniteGroup.symmetric(3))
    assert sorted(len(c) for c in s3.classes) == [1, 2, 3]
    sizes = {len(c): len(z) for c, z in zip(s3.classes, s3.centralizers)}
    assert sizes == {1: 6, 3: 2, 2: 3}
    c3 = conjugacy_data(FiniteGroup.cyclic(3))
    assert c3.inversion_orbits == ((0,), (1, 2))


def test_mac_lane_map():
    g = FiniteGroup.symmetric(3)
    src = loday_module(group_algebra(g, F2), None, 1, 2)
    tgt = em_reflexive_module(g, "conjugation", F2, 2)
    assert validate_delta_r_map(src, tgt, mac_lane_isomorphism(g, F2, 2)) == []


def _by_name(rep):
    return {c["name"]: c["ok"] for c in rep["checks"]}


def test_decomposition_c2():
    rep = decomposition_check(FiniteGroup.cyclic(2), F2, 3)
    assert rep["ok"]
    assert _by_name(rep)["abelian group: |G| copies of HR+(G, k)"]


def test_decomposition_c3_orbits():
    rep = decomposition_check(FiniteGroup.cyclic(3), QQ, 3)
    checks = _by_name(rep)
    assert checks["HR+(k[G]) = sum over inversion orbits"]
    assert checks["<1>-component = HR+(G, k)"]
    assert checks["abelian group: HR+(G, k) per self-inverse element, H(G, k) per inverse pair"]
    # |G| copies overcounts: the pair {z, z^2} is swapped by the involution
    assert not checks["abelian group: |G| copies of HR+(G, k)"]


def test_decomposition_s3_and_v4():
    rep = decomposition_check(FiniteGroup.symmetric(3), F2, 2)
    assert rep["ok"] and _by_name(rep)["<1>-component = HR+(G, k)"]
    assert decomposition_check(FiniteGroup.klein_four(), QQ, 2)["ok"]
