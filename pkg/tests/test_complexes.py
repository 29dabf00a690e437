import random

import pytest

from reflexhom.complexes import (Bicomplex, ChainComplex, Tricomplex, homology_range, quotient_by_involution,
                                 total_complex, total_complex_3)
from reflexhom.engine import reflexive_bicomplex
from reflexhom.algebra import ground_ring, loday_module
from reflexhom.errors import SquareZeroViolation, TwoNotInvertible
from reflexhom.linalg import QQ, ZZ, HomologyGroup, Matrix


def z(free=0, *tors):
    return HomologyGroup(ZZ, free, tors)


def rp2():
    # cellular chain complex of RP^2: Z <-0- Z <-2- Z
    return ChainComplex(ZZ, [1, 1, 1], {1: Matrix.zero(ZZ, 1, 1), 2: Matrix.dense(ZZ, [[2]])})


def test_circle_and_rp2():
    circle = ChainComplex(ZZ, [1, 1], {1: Matrix.zero(ZZ, 1, 1)})
    assert homology_range(circle, 0, 1) == [z(1), z(1)]
    assert homology_range(rp2(), 0, 2) == [z(1), z(0, 2), z()]
    assert homology_range(rp2(), 0, 2, method="kernel") == [z(1), z(0, 2), z()]


def test_exact_complex_is_acyclic():
    c = ChainComplex(ZZ, [1, 1], {1: Matrix.identity(ZZ, 1)})
    assert all(h.is_zero for h in homology_range(c, 0, 1))


def test_square_zero_enforced():
    d = Matrix.identity(ZZ, 1)
    with pytest.raises(SquareZeroViolation):
        ChainComplex(ZZ, [1, 1, 1], {1: d, 2: d})


def test_total_complex_small():
    b = Bicomplex(ZZ, 0, 0, lambda p, q: 1, lambda p, q: None, lambda p, q: None)
    t = total_complex(b)
    assert t.ranks == (1,)
    b = Bicomplex(ZZ, 1, 1, lambda p, q: 1, lambda p, q: None, lambda p, q: None)
    assert total_complex(b).ranks == (1, 2, 1)


def test_total_complex_ground_ring_bicomplex():
    f = loday_module(ground_ring(ZZ), None, 1, 3)
    b = reflexive_bicomplex(f, 3, 3)
    t = total_complex(b)
    for n in range(2, t.top + 1):
        assert (t.differential(n - 1) @ t.differential(n)).is_zero()
    assert homology_range(t, 0, 1) == [z(1), z(0, 2)]


def test_anticommuting_bicomplex_flag():
    one = Matrix.identity(ZZ, 1)
    b = Bicomplex(ZZ, 1, 1, lambda p, q: 1, lambda p, q: one, lambda p, q: -one if p == 1 else one)
    assert b.commutes is False
    t = total_complex(b)
    # the 2x2 square of identities (up to sign) is acyclic
    assert all(h.is_zero for h in homology_range(t, 0, 2))


def _random_tricomplex(rnd):
    # tensor product of three two-term complexes Z <-a- Z
    a = [rnd.choice([0, 1, 2, 3]) for _ in range(3)]

    def d(axis):
        return lambda p, q, s: Matrix.dense(ZZ, [[a[axis]]])

    return Tricomplex(ZZ, (1, 1, 1), lambda p, q, s: 1, d(0), d(1), d(2)), a


def test_tricomplex_examples():
    t = Tricomplex(ZZ, (0, 0, 0), lambda p, q, s: 1, None, None, None)
    assert total_complex_3(t).ranks == (1,)
    # third direction trivial: agrees with the bicomplex
    f = loday_module(ground_ring(ZZ), None, 1, 3)
    b = reflexive_bicomplex(f, 3, 3)
    t = Tricomplex(ZZ, (3, 3, 0), lambda p, q, s: b.rank(p, q), lambda p, q, s: b.d_h(p, q),
                   lambda p, q, s: b.d_v(p, q), None)
    assert homology_range(total_complex_3(t), 0, 3) == homology_range(total_complex(b), 0, 3)
    rnd = random.Random(5)
    for _ in range(10):
        t, a = _random_tricomplex(rnd)
        tot = total_complex_3(t)
        assert tot.ranks == (1, 3, 3, 1)
        for n in range(2, 4):
            assert (tot.differential(n - 1) @ tot.differential(n)).is_zero()


def test_quotient_by_involution_examples():
    cq = ChainComplex(QQ, [1, 1, 1], {2: Matrix.dense(QQ, [[2]])})
    R = {n: Matrix.identity(QQ, 1) for n in range(3)}
    same = quotient_by_involution(cq, R, 1)
    assert same.ranks == cq.ranks and same.differential(2) == cq.differential(2)
    assert quotient_by_involution(cq, R, -1).ranks == (0, 0, 0)
    with pytest.raises(TwoNotInvertible):
        quotient_by_involution(rp2(), {n: Matrix.identity(ZZ, 1) for n in range(3)}, 1)
