"""Reflexive homology through the periodic-resolution bicomplex.

Cell ``(p, q)`` of the bicomplex is level ``q`` of the ΔR-module.  Rows are
the periodic ``C_2`` resolutions with maps ``1 + ε(p, q) R_q``; columns are
Hochschild complexes with ``b = Σ (-1)^i ∂_i``.
"""

from __future__ import annotations

from .algebra import InvolutiveAlgebra, InvolutiveBimodule, loday_module, regular_bimodule
from .complexes import (Bicomplex, ChainComplex, Tricomplex, homology_range, quotient_by_involution,
                        total_complex, total_complex_3)
from .delta_r import DeltaRModule, ReflexiveChainComplex
from .errors import NotInvolution, TwoNotInvertible
from .linalg import HomologyGroup, Matrix, Ring

__all__ = [
    "epsilon", "reflexive_bicomplex", "hr", "hochschild_homology", "hochschild_complex", "c2_homology",
    "row_homology_check", "hr_quotient_method", "hyper_hr", "reflexive_tricomplex",
]


def epsilon(p: int, q: int) -> int:
    """Sign in front of ``R_q`` in the horizontal map leaving cell ``(p, q)``."""
    if q % 4 in (0, 3):
        return -1 if p % 2 else 1
    return -1 if p % 2 == 0 else 1


def _horizontal(f: DeltaRModule, p: int, q: int, cache: dict) -> Matrix:
    e = epsilon(p, q)
    key = (e, q)
    m = cache.get(key)
    if m is None:
        R = f.involution(q)
        m = cache[key] = Matrix.identity(f.ring, f.ranks[q]) + (R if e == 1 else -R)
    return m


def reflexive_bicomplex(f: DeltaRModule, P: int, Q: int, check: bool = True) -> Bicomplex:
    if Q > f.max_level:
        raise ValueError(f"module has levels up to {f.max_level}, bicomplex needs {Q}")
    cache: dict = {}
    return Bicomplex(
        f.ring, P, Q, lambda p, q: f.ranks[q],
        lambda p, q: _horizontal(f, p, q, cache),
        lambda p, q: f.hochschild_differential(q),
        check=check)


def hr(f: DeltaRModule, n_max: int, ring: Ring | None = None, method: str = "elimination",
       truncation: int | None = None) -> list[HomologyGroup]:
    """``HR_n(f)`` for ``n = 0..n_max``.

    The bicomplex is cut at ``P = Q = n_max + 1`` (or ``truncation``); both
    differentials lower total degree by one so this loses nothing below
    ``n_max + 1``.
    """
    if ring is not None:
        f = f.change_ring(ring)
    top = n_max + 1 if truncation is None else truncation
    if top < n_max + 1:
        raise ValueError("truncation must be at least n_max + 1")
    if f.max_level < top:
        raise ValueError(f"module needs levels up to {top}, has {f.max_level}")
    b = reflexive_bicomplex(f, top, top)
    tot = total_complex(b)
    return homology_range(tot, 0, n_max, method)


def hochschild_complex(f: DeltaRModule, top: int | None = None) -> ChainComplex:
    top = f.max_level if top is None else top
    return ChainComplex(f.ring, f.ranks[: top + 1],
                        {n: f.hochschild_differential(n) for n in range(1, top + 1)})


def hochschild_homology(f: DeltaRModule, n_max: int, ring: Ring | None = None,
                        method: str = "elimination") -> list[HomologyGroup]:
    if ring is not None:
        f = f.change_ring(ring)
    if f.max_level < n_max + 1:
        raise ValueError(f"module needs levels up to {n_max + 1}")
    return homology_range(hochschild_complex(f, n_max + 1), 0, n_max, method)


def c2_homology(T: Matrix, n_max: int, ring: Ring | None = None) -> list[HomologyGroup]:
    """Homology of ``... -> N --(1+T)--> N --(1-T)--> N`` (``H_0`` = coinvariants)."""
    if ring is not None:
        T = T.change_ring(ring)
    n = T.nrows
    I = Matrix.identity(T.ring, n)
    if T @ T != I:
        raise NotInvolution("C2 action does not square to the identity")
    odd, even = I - T, I + T
    c = ChainComplex(T.ring, [n] * (n_max + 2),
                     {p: (odd if p % 2 else even) for p in range(1, n_max + 2)})
    return homology_range(c, 0, n_max)


def row_homology_check(f: DeltaRModule, q: int, p_max: int) -> dict:
    """Compare the homology of bicomplex row ``q`` with ``c2_homology`` of
    level ``q`` under ``T = (-1)^{q(q+1)/2} R_q``."""
    cache: dict = {}
    row = ChainComplex(f.ring, [f.ranks[q]] * (p_max + 2),
                       {p: _horizontal(f, p, q, cache) for p in range(1, p_max + 2)})
    got = homology_range(row, 0, p_max)
    T = f.c2_action(q)
    want = c2_homology(T, p_max)
    return {
        "q": q,
        "twist": 1 if (q * (q + 1) // 2) % 2 == 0 else -1,
        "row": [str(h) for h in got],
        "c2": [str(h) for h in want],
        "ok": got == want,
    }


def hr_quotient_method(a: InvolutiveAlgebra, m: InvolutiveBimodule | None, sign: int, n_max: int,
                       field: Ring) -> list[HomologyGroup]:
    """Homology of ``C(A, M) / (1 - sign * T)`` where ``T`` is the signed
    involution commuting with ``b``.  Requires ``1/2``."""
    if not field.two_invertible:
        raise TwoNotInvertible(f"the quotient method needs 1/2, ring is {field}")
    if a.ring != field:
        a = a.change_ring(field)
        m = None if m is None else _bimodule_change_ring(m, a)
    f = loday_module(a, m if m is not None else regular_bimodule(a), sign=1, max_level=n_max + 1)
    c = hochschild_complex(f, n_max + 1)
    T = {n: f.c2_action(n) for n in range(n_max + 2)}
    quo = quotient_by_involution(c, T, sign)
    return homology_range(quo, 0, n_max)


def _bimodule_change_ring(m: InvolutiveBimodule, a: InvolutiveAlgebra) -> InvolutiveBimodule:
    ring = a.ring
    return InvolutiveBimodule(a, m.rank, [x.change_ring(ring) for x in m.left],
                              [x.change_ring(ring) for x in m.right], m.tau.change_ring(ring), m.labels)


def reflexive_tricomplex(fc: ReflexiveChainComplex, n_max: int) -> Tricomplex:
    top = n_max + 1
    if fc.max_level < top:
        raise ValueError(f"reflexive complex needs levels up to {top}")
    S = min(fc.top, top)
    caches = [dict() for _ in fc.terms]

    def d1(p, q, s):
        return _horizontal(fc.terms[s], p, q, caches[s])

    def d2(p, q, s):
        return fc.terms[s].hochschild_differential(q)

    def d3(p, q, s):
        return fc.differential(s, q)

    return Tricomplex(fc.ring, (top, top, S), lambda p, q, s: fc.terms[s].ranks[q], d1, d2, d3)


def hyper_hr(fc: ReflexiveChainComplex, n_max: int) -> list[HomologyGroup]:
    """Reflexive hyperhomology: homology of the totalized tricomplex
    (resolution direction, simplicial level, internal degree)."""
    return homology_range(total_complex_3(reflexive_tricomplex(fc, n_max)), 0, n_max)
