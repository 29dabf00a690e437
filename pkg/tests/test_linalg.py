from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from reflexhom.errors import NotInSpan, TorsionInQuotient
from reflexhom.linalg import (GF, QQ, ZZ, HomologyGroup, Matrix, Ring, express_in_basis, homology_of_pair,
                              invariant_factors, inverse, kernel_basis, normalize_torsion, quotient_presentation,
                              rank, snf)


def M(rows, ring=ZZ):
    return Matrix.dense(ring, rows)


small_int_matrices = st.integers(0, 4).flatmap(
    lambda r: st.integers(0, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)
        .map(lambda rows, c=c, r=r: Matrix.dense(ZZ, rows, ncols=c) if r else Matrix.zero(ZZ, 0, c))))


def test_ring_basics():
    assert ZZ.is_field is False and QQ.is_field
    assert GF(5)(7) == 2
    assert GF(3).inv(2) == 2
    with pytest.raises(ValueError):
        Ring("prime_field", 4)
    assert QQ(Fraction(4, 2)) == 2


def test_snf_identity():
    U, D, V = snf(Matrix.identity(ZZ, 2))
    assert D == Matrix.identity(ZZ, 2)
    assert U == Matrix.identity(ZZ, 2) and V == Matrix.identity(ZZ, 2)


def test_snf_2468():
    m = M([[2, 4], [6, 8]])
    U, D, V = snf(m)
    assert D == M([[2, 0], [0, 4]])
    assert U @ m @ V == D


def test_snf_zero_and_empty():
    U, D, V = snf(Matrix.zero(ZZ, 1, 1))
    assert D.is_zero() and D.shape == (1, 1)
    U, D, V = snf(Matrix.zero(ZZ, 0, 3))
    assert D.shape == (0, 3)


@settings(max_examples=60, deadline=None)
@given(small_int_matrices)
def test_snf_property(m):
    U, D, V = snf(m)
    assert U @ m @ V == D
    assert abs(_det(U)) == 1 and abs(_det(V)) == 1
    diag = [D[i, i] for i in range(min(D.shape))]
    assert all(D[i, j] == 0 for (i, j) in D.entries if i != j)
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert diag[:len(nz)] == nz  # zeros last
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert [d for d in nz] == invariant_factors(m)


def _det(m):
    rows = m.to_dense()
    n = len(rows)
    a = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for i in range(n):
        p = next((r for r in range(i, n) if a[r][i]), None)
        if p is None:
            return 0
        if p != i:
            a[i], a[p] = a[p], a[i]
            det = -det
        det *= a[i][i]
        for r in range(i + 1, n):
            f = a[r][i] / a[i][i]
            a[r] = [x - f * y for x, y in zip(a[r], a[i])]
    return det


def test_kernel_examples():
    assert kernel_basis(Matrix.identity(ZZ, 2)).ncols == 0
    k = kernel_basis(M([[1, -1]]))
    assert k.ncols == 1 and abs(k[0, 0]) == 1 and k[0, 0] == k[1, 0]
    assert kernel_basis(Matrix.zero(ZZ, 1, 1)) == Matrix.identity(ZZ, 1)


@settings(max_examples=60, deadline=None)
@given(small_int_matrices)
def test_kernel_is_saturated_lattice(m):
    k = kernel_basis(m)
    assert (m @ k).is_zero()
    assert k.ncols == m.ncols - rank(m, QQ)
    # saturated: the kernel basis extends to a unimodular matrix, i.e. its
    # invariant factors are all 1
    assert all(d == 1 for d in invariant_factors(k))


def test_express_in_basis():
    b = M([[1, 0], [1, 1], [0, 2]])
    assert express_in_basis(b, b) == Matrix.identity(ZZ, 2)
    assert express_in_basis(M([[4]]), M([[2]])) == M([[2]])
    with pytest.raises(NotInSpan):
        express_in_basis(M([[3]]), M([[2]]))
    assert express_in_basis(M([[3]], QQ), M([[2]], QQ)) == Matrix(QQ, 1, 1, {(0, 0): Fraction(3, 2)})


def test_rank_examples():
    assert rank(Matrix.identity(ZZ, 3)) == 3
    assert rank(M([[2]]), GF(2)) == 0
    assert rank(M([[1, 2], [2, 4]], QQ)) == 1


def test_homology_of_pair_examples():
    h = homology_of_pair(Matrix.zero(ZZ, 1, 1), M([[2]]), ZZ)
    assert h == HomologyGroup(ZZ, 0, (2,))
    h = homology_of_pair(Matrix.zero(QQ, 0, 3), Matrix.zero(QQ, 3, 0), QQ)
    assert h.free_rank == 3


@settings(max_examples=40, deadline=None)
@given(small_int_matrices, st.integers(0, 3))
def test_homology_methods_agree(a, extra):
    # d_in = a, d_out = anything killing im(a): a basis of the left kernel
    left = kernel_basis(a.transpose()).transpose() if a.nrows else Matrix.zero(ZZ, 0, 0)
    for ring in (ZZ, QQ, GF(2), GF(3)):
        x, y = left.change_ring(ring), a.change_ring(ring)
        assert homology_of_pair(x, y, ring) == homology_of_pair(x, y, ring, method="kernel")


def test_homology_group_rules():
    g = HomologyGroup(ZZ, 1, (2,)) + HomologyGroup(ZZ, 0, (3,))
    assert g.torsion == (6,)
    assert str(g) == "Z + Z/6"
    assert normalize_torsion([2, 4, 1, 3]) == (2, 12)
    with pytest.raises(ValueError):
        HomologyGroup(QQ, 0, (2,))
    assert HomologyGroup.from_dict(ZZ, g.to_dict()) == g


def test_quotient_presentation_and_inverse():
    proj, sect = quotient_presentation(M([[1], [1]]))
    assert proj.nrows == 1 and (proj @ M([[1], [1]])).is_zero()
    assert proj @ sect == Matrix.identity(ZZ, 1)
    with pytest.raises(TorsionInQuotient):
        quotient_presentation(M([[2]]))
    m = M([[2, 1], [1, 1]])
    assert inverse(m) @ m == Matrix.identity(ZZ, 2)


def test_matrix_ops():
    a = M([[1, 2], [3, 4]])
    assert a.kron(Matrix.identity(ZZ, 1)) == a
    assert a.hstack(a).shape == (2, 4) and a.vstack(a).shape == (4, 2)
    assert (a - a).is_zero() and a.entries.get((0, 0)) == 1
    assert a.apply({0: 1, 1: 1}) == {0: 3, 1: 7}
    assert 0 not in Matrix(GF(2), 1, 1, {(0, 0): 2}).entries.values()
