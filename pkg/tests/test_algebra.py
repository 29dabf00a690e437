import pytest

from reflexhom.algebra import (Bimodule, InvolutiveBimodule, gaussian_integers, ground_ring, group_algebra,
                               loday_module, matrix_algebra, regular_bimodule, tensor_over_algebra,
                               tensor_weight_basis, tensor_weight_module, trace_check, trace_map,
                               truncated_polynomial, truncated_tensor_algebra, validate_algebra, validate_bimodule,
                               InvolutiveAlgebra)
from reflexhom.delta_r import validate_delta_r_module
from reflexhom.finitegroup import FiniteGroup
from reflexhom.linalg import GF, QQ, ZZ, Matrix

F2 = GF(2)


def test_small_algebras_validate():
    for a in (ground_ring(ZZ), truncated_polynomial(ZZ, 2), truncated_polynomial(QQ, 4, -1),
              gaussian_integers(ZZ), gaussian_integers(F2, False), truncated_tensor_algebra(2, None, 2, ZZ),
              truncated_tensor_algebra(2, Matrix.permutation(ZZ, 2, [1, 0]), 2, ZZ)):
        assert validate_algebra(a) == [], a.name


def test_perturbed_structure_constant_breaks_associativity():
    a = truncated_polynomial(ZZ, 3)
    mul = [[dict(c) for c in row] for row in a.mul]
    mul[1][2] = {0: 1}  # x * x^2 = 1
    bad = validate_algebra(InvolutiveAlgebra(ZZ, mul, a.unit, a.sigma, a.labels))
    assert any(v.startswith("associativity") for v in bad)


def test_group_algebras():
    c2 = group_algebra(FiniteGroup.cyclic(2), ZZ)
    assert c2.rank == 2 and c2.sigma == Matrix.identity(ZZ, 2)
    c3 = group_algebra(FiniteGroup.cyclic(3), ZZ)
    assert c3.sigma == Matrix.permutation(ZZ, 3, [0, 2, 1])
    g = FiniteGroup.symmetric(3)
    s3 = group_algebra(g.table, ZZ)
    assert validate_algebra(s3) == []
    assert s3.sigma == Matrix.permutation(ZZ, 6, g.inverse)


def test_matrix_algebras():
    z = ground_ring(ZZ)
    m1 = matrix_algebra(z, 1)
    assert m1.mul == z.mul and m1.sigma == z.sigma
    m2 = matrix_algebra(z, 2)
    assert m2.rank == 4
    # e11, e12, e21, e22: transpose swaps e12 and e21
    assert m2.sigma == Matrix.permutation(ZZ, 4, [0, 2, 1, 3])
    mi = matrix_algebra(gaussian_integers(ZZ), 2)
    assert validate_algebra(mi) == []
    # conjugate transpose: i*e12 -> -i*e21
    idx = lambda i, j, k: (i * 2 + j) * 2 + k
    assert mi.sigma.column(idx(0, 1, 1)) == {idx(1, 0, 1): -1}
    with pytest.raises(ValueError):
        matrix_algebra(z, 0)


def test_loday_ground_ring_is_constant():
    f = loday_module(ground_ring(ZZ), None, 1, 4)
    assert f.ranks == (1,) * 5
    one = Matrix.identity(ZZ, 1)
    assert all(m == one for m in list(f.faces.values()) + list(f.degeneracies.values()) +
               list(f.involutions.values()))


def test_loday_group_algebra_level_one():
    g = FiniteGroup.cyclic(3)
    a = group_algebra(g, ZZ)
    f = loday_module(a, None, 1, 2)
    assert f.ranks[1] == 9
    # d_0(g ⊗ h) = gh, R_1(g ⊗ h) = g^{-1} ⊗ h^{-1}
    for x in range(3):
        for y in range(3):
            col = x * 3 + y
            assert f.faces[1, 0].column(col) == {g.mul(x, y): 1}
            assert f.involutions[1].column(col) == {g.inv(x) * 3 + g.inv(y): 1}
    assert validate_delta_r_module(f) == []


def test_loday_minus_is_negated_plus():
    a = gaussian_integers(ZZ)
    plus, minus = loday_module(a, None, 1, 3), loday_module(a, None, -1, 3)
    for n in range(4):
        assert minus.involutions[n] == -plus.involutions[n]
        assert minus.involutions[n] @ minus.involutions[n] == Matrix.identity(ZZ, plus.ranks[n])
    assert validate_delta_r_module(minus) == []


def test_loday_modules_validate():
    for a in (truncated_polynomial(ZZ, 3), gaussian_integers(QQ), group_algebra(FiniteGroup.symmetric(3), F2),
              matrix_algebra(ground_ring(ZZ), 2)):
        assert validate_delta_r_module(loday_module(a, None, 1, 2 if a.rank > 3 else 3)) == [], a.name


def test_tensor_weight_module_examples():
    w0 = tensor_weight_module(1, None, 0, 4, ZZ)
    assert w0.ranks == (1,) * 5
    assert validate_delta_r_module(w0) == []
    w1 = tensor_weight_module(1, None, 1, 3, ZZ)
    assert w1.ranks[1] == 2
    assert sorted(tensor_weight_basis(1, 1, 1)) == [((), (0,)), ((0,), ())]
    # R(a_0 ⊗ a_1) = ā_0 ⊗ ā_1 fixes both x⊗1 and 1⊗x
    assert w1.involutions[1] == Matrix.identity(ZZ, 2)
    assert tensor_weight_module(1, None, 2, 2, ZZ).ranks[1] == 3
    swap = Matrix.permutation(ZZ, 2, [1, 0])
    for w in range(4):
        assert validate_delta_r_module(tensor_weight_module(2, swap, w, 3, ZZ)) == []


def test_trace_map():
    z = ground_ring(ZZ)
    assert all(m == Matrix.identity(ZZ, 1) for m in trace_map(z, 1, 3).values())
    t = trace_map(z, 2, 1)
    # level 0: x11 + x22 (basis e11, e12, e21, e22)
    assert t[0] == Matrix.dense(ZZ, [[1, 0, 0, 1]])
    # level 1: sum of x_{ij} ⊗ y_{ji}
    assert t[1].shape == (1, 16)
    cols = sorted(c for (_, c) in t[1].entries)
    assert cols == sorted((i * 2 + j) * 4 + (j * 2 + i) for i in range(2) for j in range(2))
    assert trace_check(gaussian_integers(ZZ), 2, 2) == []


def test_tensor_over_algebra():
    a = group_algebra(FiniteGroup.cyclic(2), ZZ)
    reg = regular_bimodule(a)
    t = tensor_over_algebra(reg, reg)
    assert t.rank == 2
    z = ground_ring(ZZ)
    v = Bimodule(z, z, 3, [Matrix.identity(ZZ, 3)], [Matrix.identity(ZZ, 3)])
    zz = Bimodule(z, z, 1, [Matrix.identity(ZZ, 1)], [Matrix.identity(ZZ, 1)])
    assert tensor_over_algebra(zz, v).rank == 3
    trivial = Bimodule(a, z, 1, [Matrix.identity(ZZ, 1)] * 2, [Matrix.identity(ZZ, 1)])
    assert validate_bimodule(trivial) == []
    out = tensor_over_algebra(reg, trivial)
    assert out.rank == 1 and validate_bimodule(out.bimodule) == []


def test_bimodule_validator_catches_bad_involution():
    a = gaussian_integers(ZZ)
    reg = regular_bimodule(a)
    assert validate_bimodule(reg) == []
    bad = InvolutiveBimodule(a, 2, reg.left, reg.right, Matrix.identity(ZZ, 2))
    assert validate_bimodule(bad)
