from reflexhom.acceptance import criterion_7
from reflexhom.algebra import gaussian_integers, ground_ring, truncated_polynomial
from reflexhom.oracles import (calibrate_cyclic_convention, consistency_suite, degree_zero_closed_form,
                               hr_ground_ring_closed_form, hr_tensor_algebra_closed_form, tensor_algebra_direct)
from reflexhom.linalg import GF, QQ, ZZ, HomologyGroup, Matrix

F2 = GF(2)


def test_ground_ring_closed_form():
    z2 = HomologyGroup(ZZ, 0, (2,))
    assert hr_ground_ring_closed_form(ZZ, 1, 3) == [HomologyGroup(ZZ, 1), z2, HomologyGroup(ZZ, 0), z2]
    assert hr_ground_ring_closed_form(F2, 1, 4) == [HomologyGroup(F2, 1)] * 5
    assert all(h.is_zero for h in hr_ground_ring_closed_form(QQ, -1, 4))


def test_degree_zero():
    assert degree_zero_closed_form(truncated_polynomial(ZZ, 2), 1) == HomologyGroup(ZZ, 2)
    assert degree_zero_closed_form(truncated_polynomial(ZZ, 2), -1) == HomologyGroup(ZZ, 0, (2, 2))
    assert degree_zero_closed_form(gaussian_integers(ZZ), 1) == HomologyGroup(ZZ, 1, (2,))


def test_tensor_closed_form_examples():
    t = hr_tensor_algebra_closed_form(1, None, QQ, 3, 3)
    for q in range(4):
        assert t[0, q] == HomologyGroup(QQ, 1)
        assert all(t[n, q].is_zero for n in range(1, 4))
    tz = hr_tensor_algebra_closed_form(2, Matrix.permutation(ZZ, 2, [1, 0]), ZZ, 3, 2)
    assert [tz[n, 0] for n in range(4)] == hr_ground_ring_closed_form(ZZ, 1, 3)
    # weight one, degree zero: C_2-coinvariants of V under the swap
    assert tz[0, 1] == HomologyGroup(ZZ, 1)


def test_tensor_closed_form_matches_direct():
    inv = Matrix.scalar(ZZ, 2, -1)
    closed = hr_tensor_algebra_closed_form(2, inv, ZZ, 2, 2)
    assert closed == tensor_algebra_direct(2, inv, ZZ, 2, 2)
    assert criterion_7().ok


def test_calibration():
    for ring in (ZZ, QQ):
        assert calibrate_cyclic_convention(ring)["selected"] == "plain"
    # over F_2 the two signs coincide
    assert calibrate_cyclic_convention(F2)["matching"] == ["plain", "signed"]


def test_consistency_suite():
    for a in (ground_ring(QQ), truncated_polynomial(QQ, 2), gaussian_integers(QQ)):
        rep = consistency_suite(a, None, QQ, 2)
        assert rep["ok"], rep
    assert consistency_suite(ground_ring(QQ), None, QQ, 0)["HR+"] == ["Q"]
