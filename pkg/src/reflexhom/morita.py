"""Hermitian Morita data and the induced involutive bimodule ``Q ⊗_A M ⊗_A P``."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .algebra import (Bimodule, InvolutiveAlgebra, InvolutiveBimodule, _balancing_relations, loday_module,
                      matrix_algebra, regular_bimodule, validate_bimodule)
from .engine import hr
from .errors import IllDefinedInvolution, TorsionInQuotient
from .linalg import Matrix, inverse, quotient_presentation


@dataclass
class HermitianMoritaData:
    """``P`` is an ``A``–``B`` bimodule, ``Q`` a ``B``–``A`` bimodule.

    ``u`` has shape ``rank(A) x rank(P)*rank(Q)`` (tensor index ``p*rank(Q) + q``),
    ``v`` has shape ``rank(B) x rank(Q)*rank(P)``, ``theta`` maps ``P`` to ``Q``.
    ``p``, ``q`` are the dual families with ``u(Σ p_j ⊗ q_j) = 1_A``; ``p_prime``,
    ``q_prime`` those with ``v(Σ q'_k ⊗ p'_k) = 1_B``.
    """

    A: InvolutiveAlgebra
    B: InvolutiveAlgebra
    P: Bimodule
    Q: Bimodule
    u: Matrix
    v: Matrix
    theta: Matrix
    p: list = field(default_factory=list)
    q: list = field(default_factory=list)
    p_prime: list = field(default_factory=list)
    q_prime: list = field(default_factory=list)


def _pair(u: Matrix, x: dict, y: dict, ry: int) -> dict:
    vec = {}
    for i, a in x.items():
        for j, b in y.items():
            k = i * ry + j
            vec[k] = vec.get(k, 0) + a * b
    return u.apply(vec)


def _basis(ring, i):
    return {i: ring(1)}


def _vec_eq(ring, x, y) -> bool:
    keys = set(x) | set(y)
    return all(ring.norm(x.get(k, 0) - y.get(k, 0)) == 0 for k in keys)


def _sum_pairs(ring, m: Matrix, xs, ys, ry):
    total = {}
    for x, y in zip(xs, ys):
        for k, c in _pair(m, x, y, ry).items():
            total[k] = ring.norm(total.get(k, 0) + c)
    return {k: c for k, c in total.items() if c}


def validate_morita_data(d: HermitianMoritaData) -> list[str]:
    A, B, P, Q = d.A, d.B, d.P, d.Q
    ring = A.ring
    rP, rQ = P.rank, Q.rank
    out = []
    for label, mod, la, ra in (("P", P, A, B), ("Q", Q, B, A)):
        if mod.left_alg.rank != la.rank or mod.right_alg.rank != ra.rank:
            out.append(f"{label} has the wrong algebras")
            return out
        out.extend(f"{label}: {v}" for v in validate_bimodule(mod))
    if d.u.shape != (A.rank, rP * rQ) or d.v.shape != (B.rank, rQ * rP) or d.theta.shape != (rQ, rP):
        return out + ["u, v or theta has the wrong shape"]

    bP = [_basis(ring, i) for i in range(rP)]
    bQ = [_basis(ring, i) for i in range(rQ)]

    def u(p, q):
        return _pair(d.u, p, q, rQ)

    def v(q, p):
        return _pair(d.v, q, p, rP)

    # bimodule maps, balanced
    for p, q in product(range(rP), range(rQ)):
        for a in range(A.rank):
            if not _vec_eq(ring, u(P.left[a].column(p), bQ[q]), A.product(A.basis(a), u(bP[p], bQ[q]))):
                out.append(f"u is not left A-linear at ({p}, {q}, {a})")
            if not _vec_eq(ring, u(bP[p], Q.right[a].column(q)), A.product(u(bP[p], bQ[q]), A.basis(a))):
                out.append(f"u is not right A-linear at ({p}, {q}, {a})")
        for b in range(B.rank):
            if not _vec_eq(ring, u(P.right[b].column(p), bQ[q]), u(bP[p], Q.left[b].column(q))):
                out.append(f"u is not B-balanced at ({p}, {q}, {b})")
    for q, p in product(range(rQ), range(rP)):
        for b in range(B.rank):
            if not _vec_eq(ring, v(Q.left[b].column(q), bP[p]), B.product(B.basis(b), v(bQ[q], bP[p]))):
                out.append(f"v is not left B-linear at ({q}, {p}, {b})")
            if not _vec_eq(ring, v(bQ[q], P.right[b].column(p)), B.product(v(bQ[q], bP[p]), B.basis(b))):
                out.append(f"v is not right B-linear at ({q}, {p}, {b})")
        for a in range(A.rank):
            if not _vec_eq(ring, v(Q.right[a].column(q), bP[p]), v(bQ[q], P.left[a].column(p))):
                out.append(f"v is not A-balanced at ({q}, {p}, {a})")
    # dual elements
    if len(d.p) != len(d.q) or not d.p:
        out.append("dual families {p_j}, {q_j} are missing or of different sizes")
    elif not _vec_eq(ring, _sum_pairs(ring, d.u, d.p, d.q, rQ), A.unit):
        out.append("u(Σ p_j ⊗ q_j) != 1_A")
    if len(d.p_prime) != len(d.q_prime) or not d.p_prime:
        out.append("dual families {p'_k}, {q'_k} are missing or of different sizes")
    elif not _vec_eq(ring, _sum_pairs(ring, d.v, d.q_prime, d.p_prime, rP), B.unit):
        out.append("v(Σ q'_k ⊗ p'_k) != 1_B")
    # isomorphisms: the balanced tensor products have the ranks of A and B
    for label, rel, target in (
        ("P ⊗_B Q", _balancing_relations(ring, rP, rQ, P.right, Q.left), A.rank),
        ("Q ⊗_A P", _balancing_relations(ring, rQ, rP, Q.right, P.left), B.rank),
    ):
        try:
            proj, _ = quotient_presentation(rel)
            if proj.nrows != target:
                out.append(f"{label} has rank {proj.nrows}, the target has rank {target}")
        except TorsionInQuotient:
            out.append(f"{label} has torsion, so it is not isomorphic to a free target")
    # associativity conditions
    for p, q, p2 in product(range(rP), range(rQ), range(rP)):
        lhs = P.act_left(u(bP[p], bQ[q]), bP[p2])
        rhs = P.act_right(bP[p], v(bQ[q], bP[p2]))
        if not _vec_eq(ring, lhs, rhs):
            out.append(f"u(p⊗q)p' != p v(q⊗p') at ({p}, {q}, {p2})")
    for q, p, q2 in product(range(rQ), range(rP), range(rQ)):
        lhs = Q.act_left(v(bQ[q], bP[p]), bQ[q2])
        rhs = Q.act_right(bQ[q], u(bP[p], bQ[q2]))
        if not _vec_eq(ring, lhs, rhs):
            out.append(f"v(q⊗p)q' != q u(p⊗q') at ({q}, {p}, {q2})")
    # theta
    th = d.theta
    try:
        inverse(th)
    except Exception:
        out.append("theta is not invertible")
    for a in range(A.rank):
        abar = A.conj(A.basis(a))
        if th @ P.left[a] != Q.right_action_matrix(abar) @ th:
            out.append(f"theta(a p) != theta(p) ā for a = {A.labels[a]}")
    for b in range(B.rank):
        bbar = B.conj(B.basis(b))
        if th @ P.right[b] != Q.left_action_matrix(bbar) @ th:
            out.append(f"theta(p b) != b̄ theta(p) for b = {B.labels[b]}")
    for p, p2 in product(range(rP), range(rP)):
        if not _vec_eq(ring, u(bP[p], th.column(p2)), A.conj(u(bP[p2], th.column(p)))):
            out.append(f"u(p ⊗ theta(p')) != conj u(p' ⊗ theta(p)) at ({p}, {p2})")
        if not _vec_eq(ring, v(th.column(p), bP[p2]), B.conj(v(th.column(p2), bP[p]))):
            out.append(f"v(theta(p) ⊗ p') != conj v(theta(p') ⊗ p) at ({p}, {p2})")
    # compatibility: theta maps {p_j} onto {q_j}
    images = sorted(sorted(th.apply(x).items()) for x in d.p)
    targets = sorted(sorted({k: c for k, c in y.items() if ring.norm(c)}.items()) for y in d.q)
    if images != targets:
        out.append("compatibility: theta does not send {p_j} onto {q_j}")
    return out


def identity_morita_data(a: InvolutiveAlgebra) -> HermitianMoritaData:
    """``B = A``, ``P = Q = A``, ``u = v = multiplication``, ``theta = σ``."""
    reg = regular_bimodule(a)
    P = Bimodule(a, a, a.rank, reg.left, reg.right, a.labels)
    r = a.rank
    cols = [a.mul[i][j] for i in range(r) for j in range(r)]
    mult = Matrix.from_columns(a.ring, r, cols)
    one = dict(a.unit)
    return HermitianMoritaData(a, a, P, P, mult, mult, a.sigma, p=[one], q=[a.conj(one)],
                               p_prime=[one], q_prime=[a.conj(one)])


def row_column_morita_data(a: InvolutiveAlgebra, m: int) -> HermitianMoritaData:
    """``A`` against ``B = M_m(A)``: ``P`` row vectors, ``Q`` column vectors,
    ``u`` = row times column, ``v`` = column times row, ``theta`` = conjugate transpose.

    Row/column vectors have basis ``(i, k) -> i*rank + k`` (entry ``i`` is ``a_k``).
    """
    B = matrix_algebra(a, m)
    r, ring = a.rank, a.ring
    N = m * r

    def vidx(i, k):
        return i * r + k

    def midx(i, j, k):
        return (i * m + j) * r + k

    # P: left A acts entrywise from the left; right M_m(A) by row * matrix
    PL = [Matrix.from_columns(ring, N, [{vidx(i, t): c for t, c in a.mul[s][k].items()}
                                        for i in range(m) for k in range(r)]) for s in range(r)]
    PR = []
    QL = []
    for i0, j0, s in product(range(m), range(m), range(r)):
        # (row) e_{i0 j0} a_s: entry i0 of the row moves to j0
        PR.append(Matrix.from_columns(ring, N, [
            ({vidx(j0, t): c for t, c in a.mul[k][s].items()} if i == i0 else {})
            for i in range(m) for k in range(r)]))
        # e_{i0 j0} a_s (column): entry j0 moves to i0
        QL.append(Matrix.from_columns(ring, N, [
            ({vidx(i0, t): c for t, c in a.mul[s][k].items()} if i == j0 else {})
            for i in range(m) for k in range(r)]))
    QR = [Matrix.from_columns(ring, N, [{vidx(i, t): c for t, c in a.mul[k][s].items()}
                                        for i in range(m) for k in range(r)]) for s in range(r)]
    P = Bimodule(a, B, N, PL, PR, [f"row{i + 1}*{a.labels[k]}" for i in range(m) for k in range(r)])
    Q = Bimodule(B, a, N, QL, QR, [f"col{i + 1}*{a.labels[k]}" for i in range(m) for k in range(r)])
    u_cols, v_cols = [], []
    for (i, k), (j, l) in product(product(range(m), range(r)), repeat=2):
        u_cols.append(dict(a.mul[k][l]) if i == j else {})
    for (i, k), (j, l) in product(product(range(m), range(r)), repeat=2):
        v_cols.append({midx(i, j, t): c for t, c in a.mul[k][l].items()})
    u = Matrix.from_columns(ring, r, u_cols)
    v = Matrix.from_columns(ring, B.rank, v_cols)
    theta = {}
    for (t, k), c in a.sigma.entries.items():
        for i in range(m):
            theta[vidx(i, t), vidx(i, k)] = c
    theta = Matrix(ring, N, N, theta)
    one = {vidx(0, t): c for t, c in a.unit.items()}
    p = [one]
    q = [theta.apply(one)]
    p_prime = [{vidx(k, t): c for t, c in a.unit.items()} for k in range(m)]
    q_prime = [dict(x) for x in p_prime]
    return HermitianMoritaData(a, B, P, Q, u, v, theta, p, q, p_prime, q_prime)


def induced_involutive_bimodule(d: HermitianMoritaData, M: InvolutiveBimodule) -> InvolutiveBimodule:
    """``Q ⊗_A M ⊗_A P`` over ``B`` with ``q⊗m⊗p -> theta(p) ⊗ m̄ ⊗ theta^{-1}(q)``.

    Built as one quotient of ``Q ⊗ M ⊗ P`` (index ``(q*rM + m)*rP + p``) by
    both balancing relations.
    """
    ring = d.A.ring
    Q, P = d.Q, d.P
    rQ, rM, rP = Q.rank, M.rank, P.rank
    IQ, IM, IP = (Matrix.identity(ring, x) for x in (rQ, rM, rP))
    rel1 = _balancing_relations(ring, rQ, rM, Q.right, M.left).kron(IP)
    rel2 = IQ.kron(_balancing_relations(ring, rM, rP, M.right, P.left))
    rel = rel1.hstack(rel2)
    proj, sect = quotient_presentation(rel)
    theta_inv = inverse(d.theta)
    # J(q ⊗ m ⊗ p) = theta(p) ⊗ m̄ ⊗ theta^{-1}(q)
    cols = []
    for qq, mm, pp in product(range(rQ), range(rM), range(rP)):
        col = {}
        for q2, c1 in d.theta.column(pp).items():
            for m2, c2 in M.tau.column(mm).items():
                for p2, c3 in theta_inv.column(qq).items():
                    k = (q2 * rM + m2) * rP + p2
                    col[k] = ring.norm(col.get(k, 0) + c1 * c2 * c3)
        cols.append(col)
    J = Matrix.from_columns(ring, rQ * rM * rP, cols)
    if not (proj @ J @ rel).is_zero():
        raise IllDefinedInvolution("the involution does not descend to Q ⊗_A M ⊗_A P")
    tau = proj @ J @ sect
    left = [proj @ L.kron(IM).kron(IP) @ sect for L in Q.left]
    right = [proj @ IQ.kron(IM).kron(R) @ sect for R in P.right]
    return InvolutiveBimodule(d.B, proj.nrows, left, right, tau)


def morita_homology_check(d: HermitianMoritaData, M: InvolutiveBimodule, n_max: int, sign: int = 1) -> dict:
    """Compare ``HR(A, M)`` with ``HR(B, Q ⊗_A M ⊗_A P)``."""
    induced = induced_involutive_bimodule(d, M)
    lhs = hr(loday_module(d.A, M, sign, n_max + 1), n_max)
    rhs = hr(loday_module(d.B, induced, sign, n_max + 1), n_max)
    return {"A": [str(h) for h in lhs], "B": [str(h) for h in rhs], "ok": lhs == rhs, "groups": (lhs, rhs),
            "induced_rank": induced.rank, "induced_violations": validate_bimodule(induced)}
