import pytest
from hypothesis import given, settings, strategies as st

from reflexhom.acceptance import random_modules, uct_violations
from reflexhom.algebra import (gaussian_integers, ground_ring, group_algebra, loday_module, regular_bimodule,
                               truncated_polynomial)
from reflexhom.complexes import total_complex
from reflexhom.delta_r import DeltaRModule, ReflexiveChainComplex, validate_delta_r_module, \
    validate_reflexive_chain_complex
from reflexhom.engine import (c2_homology, epsilon, hochschild_homology, hr, hr_quotient_method, hyper_hr,
                              reflexive_bicomplex, row_homology_check)
from reflexhom.errors import NotInvolution, TwoNotInvertible
from reflexhom.finitegroup import FiniteGroup
from reflexhom.groups import bar_reflexive_set, linearize
from reflexhom.linalg import GF, QQ, ZZ, HomologyGroup, Matrix

F2, F3 = GF(2), GF(3)


def z(free=0, *tors):
    return HomologyGroup(ZZ, free, tors)


def test_epsilon_table():
    # -1 exactly for q = 0, 3 mod 4 with p odd, and q = 1, 2 mod 4 with p even
    assert [epsilon(p, 0) for p in range(4)] == [1, -1, 1, -1]
    assert [epsilon(p, 1) for p in range(4)] == [-1, 1, -1, 1]
    assert [epsilon(p, 2) for p in range(4)] == [-1, 1, -1, 1]
    assert [epsilon(p, 3) for p in range(4)] == [1, -1, 1, -1]
    assert epsilon(1, 4) == -1


def test_validator_on_negated_single_level():
    f = loday_module(truncated_polynomial(ZZ, 2), None, 1, 3)
    assert validate_delta_r_module(f) == []
    invs = dict(f.involutions)
    invs[1] = -invs[1]
    bad = validate_delta_r_module(DeltaRModule(ZZ, f.ranks, f.faces, f.degeneracies, invs))
    assert any("∂" in v and "R" in v for v in bad)


def test_bar_set_validates():
    assert validate_delta_r_module(linearize(bar_reflexive_set(FiniteGroup.cyclic(2), 4), ZZ)) == []


def test_bicomplex_ground_ring():
    f = loday_module(ground_ring(ZZ), None, 1, 3)
    b = reflexive_bicomplex(f, 3, 3)
    assert b.commutes
    for q in range(4):
        row = [b.d_h(p, q)[0, 0] for p in range(1, 4)]
        assert sorted(set(row)) == [0, 2]
        assert all(x != y for x, y in zip(row, row[1:]))
    # q = 1, p = 1: 1 + R_1
    g = loday_module(gaussian_integers(ZZ), None, 1, 2)
    bg = reflexive_bicomplex(g, 2, 2)
    assert bg.d_h(1, 1) == Matrix.identity(ZZ, 4) + g.involutions[1]


def test_single_column_is_hochschild():
    f = loday_module(truncated_polynomial(ZZ, 2), None, 1, 4)
    b = reflexive_bicomplex(f, 0, 4)
    from reflexhom.complexes import homology_range
    assert homology_range(total_complex(b), 0, 3) == hochschild_homology(f, 3)


def test_hr_ground_rings():
    assert hr(loday_module(ground_ring(ZZ), None, 1, 4), 3) == [z(1), z(0, 2), z(), z(0, 2)]
    assert hr(loday_module(ground_ring(F2), None, 1, 5), 4) == [HomologyGroup(F2, 1)] * 5
    assert all(h.is_zero for h in hr(loday_module(ground_ring(QQ), None, -1, 5), 4))


def test_hr_needs_enough_levels():
    with pytest.raises(ValueError):
        hr(loday_module(ground_ring(ZZ), None, 1, 3), 3)


def test_truncation_independence():
    for a in (ground_ring(ZZ), truncated_polynomial(ZZ, 2), gaussian_integers(ZZ)):
        for sign in (1, -1):
            small = hr(loday_module(a, None, sign, 3), 2)
            big = hr(loday_module(a, None, sign, 5), 4)
            assert big[:3] == small


def test_quotient_method_examples():
    assert hr_quotient_method(ground_ring(QQ), None, 1, 3, QQ) == [HomologyGroup(QQ, 1)] + [HomologyGroup(QQ, 0)] * 3
    assert hr_quotient_method(gaussian_integers(QQ), None, 1, 0, QQ) == [HomologyGroup(QQ, 1)]
    assert all(h.is_zero for h in hr_quotient_method(ground_ring(QQ), None, -1, 3, QQ))
    with pytest.raises(TwoNotInvertible):
        hr_quotient_method(ground_ring(ZZ), None, 1, 2, ZZ)
    with pytest.raises(TwoNotInvertible):
        hr_quotient_method(ground_ring(F2), None, 1, 2, F2)
    # over F_3 as well
    a = truncated_polynomial(F3, 2)
    for sign in (1, -1):
        assert hr_quotient_method(a, None, sign, 3, F3) == hr(loday_module(a, None, sign, 4), 3)


def test_hochschild_examples():
    assert hochschild_homology(loday_module(ground_ring(ZZ), None, 1, 4), 3) == [z(1), z(), z(), z()]
    assert hochschild_homology(loday_module(truncated_polynomial(ZZ, 2), None, 1, 2), 1)[0] == z(2)
    assert hochschild_homology(loday_module(group_algebra(FiniteGroup.cyclic(2), QQ), None, 1, 2), 1)[0] == \
        HomologyGroup(QQ, 2)


def test_c2_homology_examples():
    one = Matrix.identity(ZZ, 1)
    assert c2_homology(one, 3) == [z(1), z(0, 2), z(), z(0, 2)]
    assert c2_homology(-one, 2) == [z(0, 2), z(), z(0, 2)]
    swap = Matrix.permutation(ZZ, 2, [1, 0])
    assert c2_homology(swap, 2) == [z(1), z(), z()]
    with pytest.raises(NotInvolution):
        c2_homology(Matrix.dense(ZZ, [[2]]), 2)


def test_row_homology_check():
    f = loday_module(ground_ring(ZZ), None, 1, 5)
    r0, r1, r4 = (row_homology_check(f, q, 3) for q in (0, 1, 4))
    assert r0["ok"] and r0["twist"] == 1
    assert r1["ok"] and r1["twist"] == -1
    assert r4["ok"] and r4["twist"] == 1
    g = loday_module(gaussian_integers(ZZ), None, -1, 4)
    assert all(row_homology_check(g, q, 3)["ok"] for q in range(5))


def test_hyper_examples():
    f = loday_module(truncated_polynomial(ZZ, 2), None, 1, 4)
    direct = hr(f, 3)
    assert hyper_hr(ReflexiveChainComplex.concentrated(f), 3) == direct
    ident = {(1, n): Matrix.identity(ZZ, f.ranks[n]) for n in range(5)}
    acyclic = ReflexiveChainComplex([f, f], ident)
    assert validate_reflexive_chain_complex(acyclic) == []
    assert all(h.is_zero for h in hyper_hr(acyclic, 3))
    split = hyper_hr(ReflexiveChainComplex([f, f], {}), 3)
    assert split == [direct[0]] + [direct[n] + direct[n - 1] for n in range(1, 4)]


def test_reflexive_complex_validator_rejects_non_map():
    f = loday_module(gaussian_integers(ZZ), None, 1, 2)
    bad = {(1, n): f.involutions[n] for n in range(3)}  # R does not commute with the faces
    assert validate_reflexive_chain_complex(ReflexiveChainComplex([f, f], bad))


def test_consistency_rank_identity():
    for a in (ground_ring(QQ), truncated_polynomial(QQ, 2), gaussian_integers(QQ)):
        plus = hr(loday_module(a, None, 1, 4), 3)
        minus = hr(loday_module(a, None, -1, 4), 3)
        hh = hochschild_homology(loday_module(a, None, 1, 4), 3)
        assert [p.free_rank + m.free_rank for p, m in zip(plus, minus)] == [h.free_rank for h in hh]


MODULES = random_modules(24, seed=11)


@settings(max_examples=24, deadline=None)
@given(st.sampled_from(MODULES))
def test_random_modules_square_zero(named):
    name, f = named
    assert validate_delta_r_module(f) == [], name
    tot = total_complex(reflexive_bicomplex(f, f.max_level, f.max_level))
    for n in range(2, tot.top + 1):
        assert (tot.differential(n - 1) @ tot.differential(n)).is_zero()


@pytest.mark.parametrize("build", [
    lambda r: loday_module(ground_ring(r), None, -1, 4),
    lambda r: loday_module(truncated_polynomial(r, 3), None, 1, 3),
    lambda r: loday_module(gaussian_integers(r, False), None, -1, 3),
    lambda r: linearize(bar_reflexive_set(FiniteGroup.cyclic(3), 4), r),
])
def test_universal_coefficients(build):
    over_z = hr(build(ZZ), 2)
    assert [h.free_rank for h in hr(build(QQ), 2)] == [h.free_rank for h in over_z]
    for ring, p in ((F2, 2), (F3, 3)):
        assert uct_violations(over_z, hr(build(ring), 2), p) == []
