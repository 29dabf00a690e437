"""Closed-form reflexive homology used as independent checks on the engine."""

from __future__ import annotations

from itertools import product

from .algebra import InvolutiveAlgebra, InvolutiveBimodule, loday_module, regular_bimodule, tensor_weight_module
from .engine import c2_homology, hochschild_homology, hr, hr_quotient_method
from .errors import TorsionInQuotient
from .linalg import (HomologyGroup, Matrix, Ring, express_in_basis, invariant_factors, kernel_basis,
                     quotient_presentation, rank)

__all__ = [
    "hr_ground_ring_closed_form", "hr_tensor_algebra_closed_form", "GradedHomologyTable",
    "calibrate_cyclic_convention", "consistency_suite", "degree_zero_closed_form", "tensor_small_complex",
    "tensor_algebra_direct",
]

GradedHomologyTable = dict  # (n, q) -> HomologyGroup


def _mod2(ring: Ring) -> HomologyGroup:
    """``k/2k``."""
    if ring.kind == "integers":
        return HomologyGroup(ring, 0, (2,))
    if ring.kind == "prime_field" and ring.characteristic == 2:
        return HomologyGroup(ring, 1)
    return HomologyGroup.zero(ring)


def _two_torsion(ring: Ring) -> HomologyGroup:
    """``{x in k : 2x = 0}``."""
    if ring.kind == "prime_field" and ring.characteristic == 2:
        return HomologyGroup(ring, 1)
    return HomologyGroup.zero(ring)


def hr_ground_ring_closed_form(ring: Ring, sign: int, n_max: int) -> list[HomologyGroup]:
    out = []
    for n in range(n_max + 1):
        if sign == 1:
            if n == 0:
                out.append(HomologyGroup(ring, 1))
            else:
                out.append(_mod2(ring) if n % 2 else _two_torsion(ring))
        else:
            out.append(_two_torsion(ring) if n % 2 else _mod2(ring))
    return out


def degree_zero_closed_form(a: InvolutiveAlgebra, sign: int = 1) -> HomologyGroup:
    """Cokernel of ``[x, y]`` and ``1 - sign σ`` on ``A``: ``H_0`` of the ``C_2``
    coinvariants of ``A/[A, A]``, read off from invariant factors."""
    ring, r = a.ring, a.rank
    cols = []
    for i, j in product(range(r), range(r)):
        v = dict(a.mul[i][j])
        for k, c in a.mul[j][i].items():
            s = ring.norm(v.get(k, 0) - c)
            if s:
                v[k] = s
            else:
                v.pop(k, None)
        cols.append(v)
    for j in range(r):
        col = {j: ring(1)}
        for k, c in a.sigma.column(j).items():
            col[k] = ring.norm(col.get(k, 0) - sign * c)
        cols.append({k: c for k, c in col.items() if c})
    m = Matrix.from_columns(ring, r, cols)
    if ring.is_field:
        return HomologyGroup(ring, r - rank(m))
    inv = invariant_factors(m)
    return HomologyGroup(ring, r - len(inv), tuple(d for d in inv if d != 1))


# --------------------------------------------------------------------------
# tensor algebra


def _cyclic_operator(ring: Ring, v_rank: int, q: int, convention: str) -> Matrix:
    """``t(m_1 ... m_q) = m_q m_1 ... m_{q-1}``, times ``(-1)^{q-1}`` for the
    signed convention."""
    words = list(product(range(v_rank), repeat=q))
    index = {w: i for i, w in enumerate(words)}
    t = Matrix.permutation(ring, len(words), [index[(w[-1],) + w[:-1]] if q else 0 for w in words])
    if convention == "signed" and q % 2 == 0 and q > 0:
        t = -t
    return t


def _rho(ring: Ring, involution: Matrix, v_rank: int, q: int) -> Matrix:
    """``ρ(m_1 ... m_q) = m̄_1 m̄_q ... m̄_2``."""
    words = list(product(range(v_rank), repeat=q))
    index = {w: i for i, w in enumerate(words)}
    entries = {}
    for col, w in enumerate(words):
        order = w[:1] + tuple(reversed(w[1:]))
        partial = {(): ring(1)}
        for letter in order:
            partial = {p + (l,): ring.norm(c * c2) for p, c in partial.items()
                       for l, c2 in involution.column(letter).items()}
        for p, c in partial.items():
            key = (index[p], col)
            entries[key] = ring.norm(entries.get(key, 0) + c)
    return Matrix(ring, len(words), len(words), entries)


def tensor_small_complex(v_rank: int, involution: Matrix, q: int, ring: Ring, convention: str = "plain"):
    """Coinvariants and invariants of ``t`` on ``M^{⊗q}``, each with the
    induced action of ``ρ``: returns ``(rank_0, rho_0, rank_1, rho_1)``.

    Weight 0 gives ``(1, id, 0, empty)``.
    """
    if q == 0:
        return 1, Matrix.identity(ring, 1), 0, Matrix.zero(ring, 0, 0)
    t = _cyclic_operator(ring, v_rank, q, convention)
    rho = _rho(ring, involution, v_rank, q)
    N = t.nrows
    one_minus_t = Matrix.identity(ring, N) - t
    proj, sect = quotient_presentation(one_minus_t)
    if not (proj @ rho @ one_minus_t).is_zero():
        raise ValueError("ρ does not preserve im(1 - t)")
    rho0 = proj @ rho @ sect
    K = kernel_basis(one_minus_t)
    rho1 = express_in_basis(rho @ K, K)
    return proj.nrows, rho0, K.ncols, rho1


def hr_tensor_algebra_closed_form(v_rank: int, involution: Matrix | None, ring: Ring, n_max: int, w_max: int,
                                  convention: str = "plain") -> GradedHomologyTable:
    """``HR^+_n(TM)_q = H_n(C_2; coinv_q, ρ) ⊕ H_{n-1}(C_2; inv_q, -ρ)``."""
    involution = involution if involution is not None else Matrix.identity(ring, v_rank)
    table: GradedHomologyTable = {}
    for q in range(w_max + 1):
        _, rho0, r1, rho1 = tensor_small_complex(v_rank, involution, q, ring, convention)
        h0 = c2_homology(rho0, n_max)
        h1 = c2_homology(-rho1, n_max) if r1 else [HomologyGroup.zero(ring)] * (n_max + 1)
        for n in range(n_max + 1):
            g = h0[n]
            if n >= 1:
                g = g + h1[n - 1]
            table[n, q] = g
    return table


def tensor_algebra_direct(v_rank: int, involution: Matrix | None, ring: Ring, n_max: int,
                          w_max: int) -> GradedHomologyTable:
    """The same table from the weight-graded Loday modules."""
    table = {}
    for q in range(w_max + 1):
        f = tensor_weight_module(v_rank, involution, q, n_max + 1, ring)
        for n, g in enumerate(hr(f, n_max)):
            table[n, q] = g
    return table


def calibrate_cyclic_convention(ring: Ring, windows=((1, None, 3), (2, None, 3), (2, "swap", 3))) -> dict:
    """Pick the sign convention for ``t`` whose small complex reproduces the
    weight-graded Hochschild homology (degrees 0 and 1 ranks, higher degrees zero).

    ``windows`` lists ``(v_rank, involution, w_max)``; ``"swap"`` means the
    coordinate swap on ``V``.
    """
    results = {}
    for convention in ("plain", "signed"):
        ok, detail = True, []
        for v_rank, inv, w_max in windows:
            invm = Matrix.permutation(ring, v_rank, list(reversed(range(v_rank)))) if inv == "swap" else None
            for q in range(w_max + 1):
                direct = hochschild_homology(tensor_weight_module(v_rank, invm, q, 3, ring), 2)
                try:
                    r0, _, r1, _ = tensor_small_complex(v_rank, invm if invm is not None else
                                                        Matrix.identity(ring, v_rank), q, ring, convention)
                    want = [HomologyGroup(ring, r0), HomologyGroup(ring, r1), HomologyGroup.zero(ring)]
                except TorsionInQuotient:
                    want = None
                match = want == direct
                ok &= match
                detail.append({"v_rank": v_rank, "involution": inv or "trivial", "q": q,
                               "direct": [str(h) for h in direct],
                               "small": None if want is None else [str(h) for h in want], "ok": match})
        results[convention] = {"ok": ok, "detail": detail}
    matching = [c for c, r in results.items() if r["ok"]]
    return {"ring": str(ring), "selected": matching[0] if matching else None, "matching": matching,
            "results": results}


# --------------------------------------------------------------------------


def consistency_suite(a: InvolutiveAlgebra, m: InvolutiveBimodule | None, field: Ring, n_max: int) -> dict:
    """Over a field with 1/2: ``dim HR^+ + dim HR^- = dim HH`` and the bicomplex
    agrees with the quotient complex for both signs."""
    if a.ring != field:
        a = a.change_ring(field)
        m = None
    m = m if m is not None else regular_bimodule(a)
    plus = hr(loday_module(a, m, 1, n_max + 1), n_max)
    minus = hr(loday_module(a, m, -1, n_max + 1), n_max)
    hh = hochschild_homology(loday_module(a, m, 1, n_max + 1), n_max)
    q_plus = hr_quotient_method(a, m, 1, n_max, field)
    q_minus = hr_quotient_method(a, m, -1, n_max, field)
    checks = [
        {"name": "dim HR+ + dim HR- = dim HH",
         "ok": all(p.free_rank + q.free_rank == h.free_rank for p, q, h in zip(plus, minus, hh)),
         "values": [[p.free_rank, q.free_rank, h.free_rank] for p, q, h in zip(plus, minus, hh)]},
        {"name": "HR+ bicomplex = quotient", "ok": plus == q_plus},
        {"name": "HR- bicomplex = quotient", "ok": minus == q_minus},
    ]
    return {"algebra": a.name, "field": str(field), "checks": checks, "ok": all(c["ok"] for c in checks),
            "HR+": [str(h) for h in plus], "HR-": [str(h) for h in minus], "HH": [str(h) for h in hh]}
