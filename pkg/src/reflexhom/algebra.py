"""Finite-rank involutive algebras and bimodules given by structure constants,
together with the ΔR-modules built from them."""

from __future__ import annotations

from itertools import product
from typing import Mapping, Sequence

from .delta_r import DeltaRModule, validate_delta_r_map
from .errors import ValidationError
from .finitegroup import FiniteGroup
from .linalg import Matrix, Ring, quotient_presentation

__all__ = [
    "InvolutiveAlgebra", "Bimodule", "InvolutiveBimodule", "validate_algebra", "validate_bimodule",
    "ground_ring", "truncated_polynomial", "gaussian_integers", "group_algebra", "matrix_algebra",
    "truncated_tensor_algebra", "regular_bimodule", "loday_module", "tensor_weight_module",
    "trace_map", "trace_check", "tensor_over_algebra", "TensorProduct",
]

Vec = dict  # sparse vector {index: nonzero scalar}


def _vec(ring: Ring, data) -> Vec:
    if isinstance(data, Mapping):
        items = data.items()
    else:
        items = enumerate(data)
    out = {}
    for k, v in items:
        v = ring(v)
        if v:
            out[int(k)] = v
    return out


def _axpy(ring: Ring, acc: Vec, vec: Mapping, c=1):
    for k, v in vec.items():
        s = ring.norm(acc.get(k, 0) + c * v)
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)


def _mat_vec(m: Matrix, vec: Mapping) -> Vec:
    return m.apply(vec)


class InvolutiveAlgebra:
    """Unital algebra, free of finite rank over ``ring``, with an involution.

    ``mul[i][j]`` is the product of basis elements ``i`` and ``j`` as a
    sparse vector; ``sigma`` is the matrix of ``a -> ā``.
    """

    def __init__(self, ring: Ring, mul, unit, sigma: Matrix, labels: Sequence[str] | None = None,
                 name: str = ""):
        self.ring = ring
        self.rank = len(mul)
        self.mul = [[_vec(ring, mul[i][j]) for j in range(self.rank)] for i in range(self.rank)]
        self.unit = _vec(ring, unit)
        self.sigma = sigma
        self.labels = list(labels) if labels is not None else [f"a{i}" for i in range(self.rank)]
        self.name = name
        self._L = self._R = None

    def __repr__(self):
        return f"<InvolutiveAlgebra {self.name or '?'} rank {self.rank} over {self.ring}>"

    def product(self, x: Mapping, y: Mapping) -> Vec:
        out: Vec = {}
        for i, a in x.items():
            row = self.mul[i]
            for j, b in y.items():
                _axpy(self.ring, out, row[j], a * b)
        return out

    def conj(self, x: Mapping) -> Vec:
        return self.sigma.apply(x)

    def basis(self, i: int) -> Vec:
        return {i: self.ring(1)}

    def left_matrices(self) -> list[Matrix]:
        """``L_i`` is the matrix of ``x -> a_i x``."""
        if self._L is None:
            r = self.rank
            self._L = [Matrix.from_columns(self.ring, r, [self.mul[i][j] for j in range(r)]) for i in range(r)]
        return self._L

    def right_matrices(self) -> list[Matrix]:
        if self._R is None:
            r = self.rank
            self._R = [Matrix.from_columns(self.ring, r, [self.mul[j][i] for j in range(r)]) for i in range(r)]
        return self._R

    def change_ring(self, ring: Ring) -> "InvolutiveAlgebra":
        return InvolutiveAlgebra(ring, [[{k: ring(v) for k, v in c.items()} for c in row] for row in self.mul],
                                 {k: ring(v) for k, v in self.unit.items()}, self.sigma.change_ring(ring),
                                 self.labels, self.name)


def validate_algebra(a: InvolutiveAlgebra) -> list[str]:
    """Associativity, unit laws, ``σ² = 1`` and ``σ(xy) = σ(y)σ(x)`` on basis tuples."""
    out = []
    r, ring = a.rank, a.ring
    if r == 0:
        return ["rank must be positive"]
    if a.sigma.shape != (r, r):
        return [f"involution has shape {a.sigma.shape}, expected {(r, r)}"]
    for row in a.mul:
        for c in row:
            if any(not 0 <= k < r for k in c):
                return ["structure constant index out of range"]
    for i in range(r):
        for j in range(r):
            ij = a.mul[i][j]
            for k in range(r):
                lhs = a.product(ij, a.basis(k))
                rhs = a.product(a.basis(i), a.mul[j][k])
                if lhs != rhs:
                    out.append(f"associativity fails on ({a.labels[i]}, {a.labels[j]}, {a.labels[k]})")
    for i in range(r):
        e = a.basis(i)
        if a.product(a.unit, e) != e:
            out.append(f"left unit law fails on {a.labels[i]}")
        if a.product(e, a.unit) != e:
            out.append(f"right unit law fails on {a.labels[i]}")
    if a.sigma @ a.sigma != Matrix.identity(ring, r):
        out.append("involution does not square to the identity")
    for i in range(r):
        for j in range(r):
            if a.conj(a.mul[i][j]) != a.product(a.conj(a.basis(j)), a.conj(a.basis(i))):
                out.append(f"involution is not an anti-homomorphism on ({a.labels[i]}, {a.labels[j]})")
    return out


# --------------------------------------------------------------------------
# constructors


def ground_ring(ring: Ring) -> InvolutiveAlgebra:
    return InvolutiveAlgebra(ring, [[{0: 1}]], {0: 1}, Matrix.identity(ring, 1), ["1"], name=str(ring))


def truncated_polynomial(ring: Ring, n: int, x_sign: int = 1) -> InvolutiveAlgebra:
    """``k[x]/(x^n)`` with ``x̄ = x_sign * x``."""
    mul = [[({i + j: 1} if i + j < n else {}) for j in range(n)] for i in range(n)]
    sigma = Matrix(ring, n, n, {(i, i): x_sign ** i for i in range(n)})
    labels = ["1", "x"] + [f"x^{i}" for i in range(2, n)]
    return InvolutiveAlgebra(ring, mul, {0: 1}, sigma, labels[:n], name=f"{ring}[x]/(x^{n})")


def gaussian_integers(ring: Ring, conjugation: bool = True) -> InvolutiveAlgebra:
    """``k[i]/(i^2 + 1)``, by default with complex conjugation."""
    mul = [[{0: 1}, {1: 1}], [{1: 1}, {0: -1}]]
    sigma = Matrix(ring, 2, 2, {(0, 0): 1, (1, 1): -1 if conjugation else 1})
    return InvolutiveAlgebra(ring, mul, {0: 1}, sigma, ["1", "i"], name=f"{ring}[i]")


def group_algebra(group, ring: Ring) -> InvolutiveAlgebra:
    """``k[G]`` with ``ḡ = g^{-1}``.  ``group`` is a FiniteGroup or a table."""
    if not isinstance(group, FiniteGroup):
        group = FiniteGroup([str(i) for i in range(len(group))], group)
    n = group.order
    mul = [[{group.mul(a, b): 1} for b in range(n)] for a in range(n)]
    sigma = Matrix.permutation(ring, n, group.inverse)
    return InvolutiveAlgebra(ring, mul, {group.identity: 1}, sigma, group.elements, name=f"{ring}[G{n}]")


def matrix_algebra(a: InvolutiveAlgebra, m: int) -> InvolutiveAlgebra:
    """``M_m(A)`` with basis ``e_ij ⊗ a_k`` at index ``(i*m + j)*rank + k`` and
    involution ``(x_ij) -> (x̄_ji)``."""
    if m < 1:
        raise ValueError("matrix size must be positive")
    r = a.rank
    N = m * m * r

    def idx(i, j, k):
        return (i * m + j) * r + k

    mul = [[{} for _ in range(N)] for _ in range(N)]
    for i, j, k in product(range(m), range(m), range(r)):
        for l, k2 in product(range(m), range(r)):
            mul[idx(i, j, k)][idx(j, l, k2)] = {idx(i, l, t): c for t, c in a.mul[k][k2].items()}
    unit = {}
    for i in range(m):
        for t, c in a.unit.items():
            unit[idx(i, i, t)] = c
    sig = {}
    for (t, k), c in a.sigma.entries.items():
        for i, j in product(range(m), range(m)):
            sig[idx(j, i, t), idx(i, j, k)] = c
    labels = [f"e{i + 1}{j + 1}*{a.labels[k]}" for i, j, k in product(range(m), range(m), range(r))]
    return InvolutiveAlgebra(a.ring, mul, unit, Matrix(a.ring, N, N, sig), labels, name=f"M_{m}({a.name})")


def _words(v_rank: int, length: int):
    return list(product(range(v_rank), repeat=length))


def _bar_word(ring: Ring, involution: Matrix, word: tuple) -> Vec:
    """Reverse ``word`` and apply the involution of ``V`` letterwise; returns
    ``{word: coeff}``."""
    out = {(): ring(1)}
    for letter in reversed(word):
        img = involution.column(letter)
        new = {}
        for w, c in out.items():
            for l2, c2 in img.items():
                key = w + (l2,)
                s = ring.norm(new.get(key, 0) + c * c2)
                if s:
                    new[key] = s
                else:
                    new.pop(key, None)
        out = new
    return out


def truncated_tensor_algebra(v_rank: int, involution: Matrix | None, max_weight: int, ring: Ring) -> InvolutiveAlgebra:
    """``T(V)/T_{>W}(V)``: words of length at most ``W``, concatenation, and
    the involution reversing words."""
    involution = involution if involution is not None else Matrix.identity(ring, v_rank)
    words = [w for L in range(max_weight + 1) for w in _words(v_rank, L)]
    index = {w: i for i, w in enumerate(words)}
    N = len(words)
    mul = [[({index[u + v]: 1} if len(u) + len(v) <= max_weight else {}) for v in words] for u in words]
    sig = {}
    for w in words:
        for w2, c in _bar_word(ring, involution, w).items():
            sig[index[w2], index[w]] = c
    labels = ["".join(f"x{l}" for l in w) or "1" for w in words]
    return InvolutiveAlgebra(ring, mul, {index[()]: 1}, Matrix(ring, N, N, sig), labels,
                             name=f"T_<={max_weight}(V{v_rank})")


# --------------------------------------------------------------------------
# bimodules


class Bimodule:
    """Free ``k``-module of rank ``rank`` with a left ``left_alg`` action and
    a right ``right_alg`` action.

    ``left[i]`` is the matrix of ``m -> a_i m``; ``right[i]`` the matrix of
    ``m -> m b_i``.
    """

    def __init__(self, left_alg: InvolutiveAlgebra, right_alg: InvolutiveAlgebra, rank: int,
                 left: Sequence[Matrix], right: Sequence[Matrix], labels: Sequence[str] | None = None):
        self.left_alg, self.right_alg = left_alg, right_alg
        self.ring = left_alg.ring
        self.rank = rank
        self.left = list(left)
        self.right = list(right)
        self.labels = list(labels) if labels is not None else [f"m{i}" for i in range(rank)]

    def act_left(self, a: Mapping, m: Mapping) -> Vec:
        out: Vec = {}
        for i, c in a.items():
            _axpy(self.ring, out, self.left[i].apply(m), c)
        return out

    def act_right(self, m: Mapping, b: Mapping) -> Vec:
        out: Vec = {}
        for i, c in b.items():
            _axpy(self.ring, out, self.right[i].apply(m), c)
        return out

    def left_action_matrix(self, a: Mapping) -> Matrix:
        out = Matrix.zero(self.ring, self.rank, self.rank)
        for i, c in a.items():
            out = out + self.left[i].scale(c)
        return out

    def right_action_matrix(self, b: Mapping) -> Matrix:
        out = Matrix.zero(self.ring, self.rank, self.rank)
        for i, c in b.items():
            out = out + self.right[i].scale(c)
        return out


class InvolutiveBimodule(Bimodule):
    """Bimodule over a single involutive algebra with ``tau: m -> m̄``."""

    def __init__(self, algebra: InvolutiveAlgebra, rank: int, left, right, tau: Matrix,
                 labels: Sequence[str] | None = None):
        super().__init__(algebra, algebra, rank, left, right, labels)
        self.algebra = algebra
        self.tau = tau


def _bimodule_axioms(b: Bimodule) -> list[str]:
    out = []
    A, B, r = b.left_alg, b.right_alg, b.rank
    if len(b.left) != A.rank or len(b.right) != B.rank:
        return ["wrong number of action matrices"]
    for m in list(b.left) + list(b.right):
        if m.shape != (r, r):
            return [f"action matrix has shape {m.shape}, expected {(r, r)}"]
    for i in range(A.rank):
        for j in range(A.rank):
            if b.left[i] @ b.left[j] != b.left_action_matrix(A.mul[i][j]):
                out.append(f"left action not associative on ({A.labels[i]}, {A.labels[j]})")
    for i in range(B.rank):
        for j in range(B.rank):
            if b.right[j] @ b.right[i] != b.right_action_matrix(B.mul[i][j]):
                out.append(f"right action not associative on ({B.labels[i]}, {B.labels[j]})")
    I = Matrix.identity(b.ring, r)
    if b.left_action_matrix(A.unit) != I:
        out.append("unit of the left algebra does not act as the identity")
    if b.right_action_matrix(B.unit) != I:
        out.append("unit of the right algebra does not act as the identity")
    for i in range(A.rank):
        for j in range(B.rank):
            if b.left[i] @ b.right[j] != b.right[j] @ b.left[i]:
                out.append(f"left and right actions do not commute on ({A.labels[i]}, {B.labels[j]})")
    return out


def validate_bimodule(b: Bimodule) -> list[str]:
    """Bimodule axioms, and for involutive bimodules ``τ² = 1`` and
    ``τ(a m b) = b̄ τ(m) ā``."""
    out = _bimodule_axioms(b)
    if out or not isinstance(b, InvolutiveBimodule):
        return out
    A, r = b.algebra, b.rank
    tau = b.tau
    if tau.shape != (r, r):
        return [f"involution has shape {tau.shape}"]
    if tau @ tau != Matrix.identity(b.ring, r):
        out.append("bimodule involution does not square to the identity")
    for i in range(A.rank):
        abar = A.conj(A.basis(i))
        if tau @ b.left[i] != b.right_action_matrix(abar) @ tau:
            out.append(f"involution incompatible with left action of {A.labels[i]}")
        if tau @ b.right[i] != b.left_action_matrix(abar) @ tau:
            out.append(f"involution incompatible with right action of {A.labels[i]}")
    return out


def regular_bimodule(a: InvolutiveAlgebra) -> InvolutiveBimodule:
    return InvolutiveBimodule(a, a.rank, a.left_matrices(), a.right_matrices(), a.sigma, a.labels)


# --------------------------------------------------------------------------
# ΔR-modules


def _radix_index(digits, radices) -> int:
    i = 0
    for d, r in zip(digits, radices):
        i = i * r + d
    return i


def _accumulate(ring, entries: dict, key, c):
    s = ring.norm(entries.get(key, 0) + c)
    if s:
        entries[key] = s
    else:
        entries.pop(key, None)


def loday_module(a: InvolutiveAlgebra, m: InvolutiveBimodule | None = None, sign: int = 1,
                 max_level: int = 4, check: bool = False) -> DeltaRModule:
    """``L^±(A, M)``: level ``n`` is ``M ⊗ A^{⊗n}`` with basis ``(u, k_1, ..., k_n)``
    in lexicographic order.

    ``∂_0 = m a_1``, middle faces multiply neighbours, ``∂_n = a_n m``;
    ``s_j`` inserts the unit after position ``j``; and
    ``R_n = sign * (m̄ ⊗ ā_n ⊗ ... ⊗ ā_1)``.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if m is None:
        m = regular_bimodule(a)
    ring = a.ring
    rA, rM = a.rank, m.rank
    mr = [[m.right[k].column(u) for k in range(rA)] for u in range(rM)]  # m_u a_k
    la = [[m.left[k].column(u) for u in range(rM)] for k in range(rA)]   # a_k m_u
    taucol = [m.tau.column(u) for u in range(rM)]
    sigcol = [a.sigma.column(k) for k in range(rA)]
    ranks = [rM * rA ** n for n in range(max_level + 1)]
    faces, degs, invs = {}, {}, {}
    for n in range(max_level + 1):
        rad = [rM] + [rA] * n
        rad_lo = [rM] + [rA] * (n - 1)
        rad_hi = [rM] + [rA] * (n + 1)
        fe = [dict() for _ in range(n + 1)]
        se = [dict() for _ in range(n + 1)] if n < max_level else []
        re = {}
        for col, t in enumerate(product(*(range(x) for x in rad))):
            u, ks = t[0], t[1:]
            if n >= 1:
                for v, c in mr[u][ks[0]].items():
                    _accumulate(ring, fe[0], (_radix_index((v,) + ks[1:], rad_lo), col), c)
                for i in range(1, n):
                    for l, c in a.mul[ks[i - 1]][ks[i]].items():
                        tt = (u,) + ks[:i - 1] + (l,) + ks[i + 1:]
                        _accumulate(ring, fe[i], (_radix_index(tt, rad_lo), col), c)
                for v, c in la[ks[-1]][u].items():
                    _accumulate(ring, fe[n], (_radix_index((v,) + ks[:-1], rad_lo), col), c)
            for j in range(len(se)):
                for e, c in a.unit.items():
                    tt = (u,) + ks[:j] + (e,) + ks[j:]
                    _accumulate(ring, se[j], (_radix_index(tt, rad_hi), col), c)
            # R_n: sign * tau(m) ⊗ σ(a_n) ⊗ ... ⊗ σ(a_1)
            partial = {(v,): sign * c for v, c in taucol[u].items()}
            for k in reversed(ks):
                partial = {p + (l,): ring.norm(c * c2) for p, c in partial.items() for l, c2 in sigcol[k].items()}
            for p, c in partial.items():
                _accumulate(ring, re, (_radix_index(p, rad), col), c)
        for i in range(n + 1) if n >= 1 else ():
            faces[n, i] = Matrix(ring, ranks[n - 1], ranks[n], fe[i])
        for j in range(len(se)):
            degs[n, j] = Matrix(ring, ranks[n + 1], ranks[n], se[j])
        invs[n] = Matrix(ring, ranks[n], ranks[n], re)
    label = f"L{'+' if sign == 1 else '-'}({a.name})"
    f = DeltaRModule(ring, ranks, faces, degs, invs, name=label)
    if check:
        from .delta_r import validate_delta_r_module
        bad = validate_delta_r_module(f)
        if bad:
            raise ValidationError(label, bad)
    return f


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def tensor_weight_basis(v_rank: int, w: int, n: int) -> list[tuple]:
    """Basis of level ``n``: ``(n+1)``-tuples of words of total length ``w``,
    ordered by block lengths and then letters."""
    out = []
    for comp in _compositions(w, n + 1):
        for letters in product(range(v_rank), repeat=w):
            blocks, pos = [], 0
            for L in comp:
                blocks.append(tuple(letters[pos:pos + L]))
                pos += L
            out.append(tuple(blocks))
    return out


def tensor_weight_module(v_rank: int, involution: Matrix | None, w: int, max_level: int, ring: Ring,
                         sign: int = 1) -> DeltaRModule:
    """Weight-``w`` part of the Loday module of the tensor algebra ``T(V)``."""
    involution = involution if involution is not None else Matrix.identity(ring, v_rank)
    if involution @ involution != Matrix.identity(ring, v_rank):
        from .errors import NotInvolution
        raise NotInvolution("involution on V does not square to the identity")
    bases = [tensor_weight_basis(v_rank, w, n) for n in range(max_level + 2)]
    index = [{b: i for i, b in enumerate(B)} for B in bases]
    ranks = [len(bases[n]) for n in range(max_level + 1)]
    bar_cache: dict[tuple, Vec] = {}

    def bar(word):
        r = bar_cache.get(word)
        if r is None:
            r = bar_cache[word] = _bar_word(ring, involution, word)
        return r

    one = ring(1)
    faces, degs, invs = {}, {}, {}
    for n in range(max_level + 1):
        if n >= 1:
            for i in range(n + 1):
                imgs = []
                for t in bases[n]:
                    if i < n:
                        tt = t[:i] + (t[i] + t[i + 1],) + t[i + 2:]
                    else:
                        tt = (t[n] + t[0],) + t[1:n]
                    imgs.append(index[n - 1][tt])
                faces[n, i] = Matrix.permutation(ring, ranks[n - 1], imgs)
        if n < max_level:
            for j in range(n + 1):
                imgs = [index[n + 1][t[:j + 1] + ((),) + t[j + 1:]] for t in bases[n]]
                degs[n, j] = Matrix.permutation(ring, ranks[n + 1], imgs)
        entries = {}
        for col, t in enumerate(bases[n]):
            order = (t[0],) + tuple(reversed(t[1:]))
            partial = {(): sign * one}
            for word in order:
                partial = {p + (w2,): ring.norm(c * c2) for p, c in partial.items() for w2, c2 in bar(word).items()}
            for p, c in partial.items():
                _accumulate(ring, entries, (index[n][p], col), c)
        invs[n] = Matrix(ring, ranks[n], ranks[n], entries)
    return DeltaRModule(ring, ranks, faces, degs, invs, name=f"T(V{v_rank})_w{w}")


def trace_map(a: InvolutiveAlgebra, m: int, max_level: int) -> dict[int, Matrix]:
    """``Tr_n``: level ``n`` of ``L(M_m(A))`` to level ``n`` of ``L(A)``.

    A basis tensor ``(e_{i0 j0} ⊗ a_{k0}) ⊗ ... ⊗ (e_{in jn} ⊗ a_{kn})`` goes to
    ``a_{k0} ⊗ ... ⊗ a_{kn}`` when ``j_t = i_{t+1}`` cyclically, else to 0.
    """
    r = a.rank
    R = m * m * r
    out = {}
    for n in range(max_level + 1):
        imgs = {}
        for col, t in enumerate(product(range(R), repeat=n + 1)):
            ij = [(x // r) for x in t]
            ok = all(ij[s] % m == ij[(s + 1) % (n + 1)] // m for s in range(n + 1))
            if ok:
                imgs[_radix_index([x % r for x in t], [r] * (n + 1)), col] = 1
        out[n] = Matrix(a.ring, r ** (n + 1), R ** (n + 1), imgs)
    return out


def trace_check(a: InvolutiveAlgebra, m: int, max_level: int, sign: int = 1) -> list[str]:
    """Violations of ``Tr`` being a map of ΔR-modules ``L(M_m(A)) -> L(A)``."""
    src = loday_module(matrix_algebra(a, m), sign=sign, max_level=max_level)
    tgt = loday_module(a, sign=sign, max_level=max_level)
    return validate_delta_r_map(src, tgt, trace_map(a, m, max_level))


# --------------------------------------------------------------------------
# balanced tensor products


class TensorProduct:
    """``X ⊗_A Y`` presented as a quotient of ``X ⊗ Y`` (index ``x*rank(Y) + y``).

    ``proj`` maps ``X ⊗ Y`` onto the quotient and ``section`` is a right inverse.
    """

    def __init__(self, bimodule: Bimodule, proj: Matrix, section: Matrix, relations: Matrix):
        self.bimodule = bimodule
        self.proj = proj
        self.section = section
        self.relations = relations

    @property
    def rank(self) -> int:
        return self.bimodule.rank


def _balancing_relations(ring, rX, rY, X_right: Sequence[Matrix], Y_left: Sequence[Matrix]) -> Matrix:
    cols = []
    for x in range(rX):
        for i in range(len(X_right)):
            xa = X_right[i].column(x)
            for y in range(rY):
                ay = Y_left[i].column(y)
                v: Vec = {}
                for x2, c in xa.items():
                    _accumulate(ring, v, x2 * rY + y, c)
                for y2, c in ay.items():
                    _accumulate(ring, v, x * rY + y2, -c)
                if v:
                    cols.append(v)
    return Matrix.from_columns(ring, rX * rY, cols)


def tensor_over_algebra(X: Bimodule, Y: Bimodule) -> TensorProduct:
    """``X ⊗_A Y`` for ``X`` a ``C``–``A`` bimodule and ``Y`` an ``A``–``D`` bimodule,
    as the cokernel of ``(x a) ⊗ y - x ⊗ (a y)``."""
    if X.right_alg.rank != Y.left_alg.rank:
        raise ValueError("the algebras being tensored over do not match")
    ring = X.ring
    rX, rY = X.rank, Y.rank
    rel = _balancing_relations(ring, rX, rY, X.right, Y.left)
    proj, sect = quotient_presentation(rel)
    IY, IX = Matrix.identity(ring, rY), Matrix.identity(ring, rX)
    left = [proj @ L.kron(IY) @ sect for L in X.left]
    right = [proj @ IX.kron(Rm) @ sect for Rm in Y.right]
    bm = Bimodule(X.left_alg, Y.right_alg, proj.nrows, left, right)
    return TensorProduct(bm, proj, sect, rel)
