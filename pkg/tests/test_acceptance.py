"""One PASS/FAIL line per acceptance criterion (run with ``-s`` to see them)."""

import pytest

from reflexhom import acceptance

_results = acceptance.RESULTS


def _run(number):
    if number not in _results:
        c = acceptance.CRITERIA[number - 1]()
        print("\n" + c.line())
        _results[number] = c
    return _results[number]


@pytest.mark.parametrize("number", [1, 2, 3, 4, 5, 6, 7, 9, 10])
def test_criterion(number):
    c = _run(number)
    assert c.ok, c.line()


def test_criterion_8_decomposition():
    c = _run(8)
    assert c.seconds <= c.budget
    for chk in c.checks:
        if "|G| copies" not in chk["name"]:
            assert chk["ok"], chk
        elif chk["name"].startswith("C2"):
            assert chk["ok"], chk


@pytest.mark.xfail(strict=True, reason="|G| copies of HR+(G, k) overcounts for C3: the involution swaps "
                                       "the classes of z and z^2 (see the decision ledger)")
def test_criterion_8_abelian_shortcut_for_c3():
    c = _run(8)
    assert c.ok, c.line()
