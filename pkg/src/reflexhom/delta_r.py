"""Levelwise free ΔR^op-modules: simplicial modules with compatible involutions.

A :class:`DeltaRModule` stores, up to ``max_level``, the face maps
``∂_i: F_n -> F_{n-1}``, the degeneracies ``s_j: F_n -> F_{n+1}`` and the
involutions ``R_n: F_n -> F_n``.  The crossed-simplicial relations are used
in the form

    ∂_i R_n = R_{n-1} ∂_{n-i},     s_j R_n = R_{n+1} s_{n-j},     R_n R_n = 1.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .linalg import Matrix, Ring

__all__ = [
    "DeltaRModule", "validate_delta_r_module", "ReflexiveChainComplex",
    "validate_reflexive_chain_complex", "validate_delta_r_map",
]


class DeltaRModule:
    def __init__(self, ring: Ring, ranks: Sequence[int],
                 faces: Mapping[tuple[int, int], Matrix],
                 degeneracies: Mapping[tuple[int, int], Matrix],
                 involutions: Mapping[int, Matrix],
                 name: str = ""):
        self.ring = ring
        self.ranks = tuple(ranks)
        self.max_level = len(self.ranks) - 1
        self.faces = dict(faces)
        self.degeneracies = dict(degeneracies)
        self.involutions = dict(involutions)
        self.name = name
        self._b: dict[int, Matrix] = {}

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<DeltaRModule{label} over {self.ring}, ranks={list(self.ranks)}>"

    def face(self, n: int, i: int) -> Matrix:
        return self.faces[n, i]

    def degeneracy(self, n: int, j: int) -> Matrix:
        return self.degeneracies[n, j]

    def involution(self, n: int) -> Matrix:
        return self.involutions[n]

    def hochschild_differential(self, n: int) -> Matrix:
        """``b = Σ_i (-1)^i ∂_i`` from level ``n`` to level ``n - 1``."""
        b = self._b.get(n)
        if b is None:
            b = Matrix.zero(self.ring, self.ranks[n - 1], self.ranks[n])
            for i in range(n + 1):
                f = self.faces[n, i]
                b = b + (f if i % 2 == 0 else -f)
            self._b[n] = b
        return b

    def c2_action(self, n: int) -> Matrix:
        """``(-1)^{n(n+1)/2} R_n``: the involution commuting with ``b``."""
        R = self.involutions[n]
        return -R if (n * (n + 1) // 2) % 2 else R

    def negated(self) -> "DeltaRModule":
        """Same simplicial module with every ``R_n`` replaced by ``-R_n``."""
        return DeltaRModule(self.ring, self.ranks, self.faces, self.degeneracies,
                            {n: -R for n, R in self.involutions.items()},
                            name=f"-({self.name})" if self.name else "")

    def truncated(self, max_level: int) -> "DeltaRModule":
        if max_level > self.max_level:
            raise ValueError("cannot extend a module by truncation")
        return DeltaRModule(
            self.ring, self.ranks[: max_level + 1],
            {k: v for k, v in self.faces.items() if k[0] <= max_level},
            {k: v for k, v in self.degeneracies.items() if k[0] < max_level},
            {k: v for k, v in self.involutions.items() if k <= max_level},
            name=self.name)

    def change_ring(self, ring: Ring) -> "DeltaRModule":
        if ring == self.ring:
            return self
        return DeltaRModule(ring, self.ranks,
                            {k: v.change_ring(ring) for k, v in self.faces.items()},
                            {k: v.change_ring(ring) for k, v in self.degeneracies.items()},
                            {k: v.change_ring(ring) for k, v in self.involutions.items()},
                            name=self.name)

    def direct_sum(self, other: "DeltaRModule") -> "DeltaRModule":
        Q = min(self.max_level, other.max_level)
        ring = self.ring

        def diag(a, b):
            return Matrix.block(ring, [a.nrows, b.nrows], [a.ncols, b.ncols], {(0, 0): a, (1, 1): b})

        return DeltaRModule(
            ring, [self.ranks[n] + other.ranks[n] for n in range(Q + 1)],
            {(n, i): diag(self.faces[n, i], other.faces[n, i]) for n in range(1, Q + 1) for i in range(n + 1)},
            {(n, j): diag(self.degeneracies[n, j], other.degeneracies[n, j])
             for n in range(Q) for j in range(n + 1)},
            {n: diag(self.involutions[n], other.involutions[n]) for n in range(Q + 1)})


def validate_delta_r_module(f: DeltaRModule, max_level: int | None = None) -> list[str]:
    """All simplicial and crossed-simplicial identities up to ``max_level``.

    Returns the list of violated identities; an empty list means valid.
    """
    Q = f.max_level if max_level is None else min(max_level, f.max_level)
    ring = f.ring
    out: list[str] = []
    r = f.ranks

    def shape_ok(m, shape, label):
        if m is None:
            out.append(f"{label} missing")
            return False
        if m.shape != shape:
            out.append(f"{label} has shape {m.shape}, expected {shape}")
            return False
        if m.ring != ring:
            out.append(f"{label} over {m.ring}, expected {ring}")
            return False
        return True

    ok = True
    for n in range(Q + 1):
        ok &= shape_ok(f.involutions.get(n), (r[n], r[n]), f"R_{n}")
        if n >= 1:
            for i in range(n + 1):
                ok &= shape_ok(f.faces.get((n, i)), (r[n - 1], r[n]), f"∂_{i} on level {n}")
        if n < Q:
            for j in range(n + 1):
                ok &= shape_ok(f.degeneracies.get((n, j)), (r[n + 1], r[n]), f"s_{j} on level {n}")
    if not ok:
        return out

    d, s, R = f.faces, f.degeneracies, f.involutions
    for n in range(Q + 1):
        if R[n] @ R[n] != Matrix.identity(ring, r[n]):
            out.append(f"R_{n}^2 != 1")
    # face-face
    for n in range(2, Q + 1):
        for j in range(n + 1):
            for i in range(j):
                if d[n - 1, i] @ d[n, j] != d[n - 1, j - 1] @ d[n, i]:
                    out.append(f"∂_{i}∂_{j} != ∂_{j - 1}∂_{i} on level {n}")
    # degeneracy-degeneracy
    for n in range(Q - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                if s[n + 1, i] @ s[n, j] != s[n + 1, j + 1] @ s[n, i]:
                    out.append(f"s_{i}s_{j} != s_{j + 1}s_{i} on level {n}")
    # face-degeneracy
    for n in range(Q):
        ident = Matrix.identity(ring, r[n])
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = d[n + 1, i] @ s[n, j]
                if i < j:
                    rhs = s[n - 1, j - 1] @ d[n, i]
                elif i in (j, j + 1):
                    rhs = ident
                else:
                    rhs = s[n - 1, j] @ d[n, i - 1]
                if lhs != rhs:
                    out.append(f"∂_{i}s_{j} relation fails on level {n}")
    # crossed-simplicial relations
    for n in range(1, Q + 1):
        for i in range(n + 1):
            if d[n, i] @ R[n] != R[n - 1] @ d[n, n - i]:
                out.append(f"∂_{i}R_{n} != R_{n - 1}∂_{n - i}")
    for n in range(Q):
        for j in range(n + 1):
            if s[n, j] @ R[n] != R[n + 1] @ s[n, n - j]:
                out.append(f"s_{j}R_{n} != R_{n + 1}s_{n - j}")
    return out


def validate_delta_r_map(source: DeltaRModule, target: DeltaRModule,
                         maps: Mapping[int, Matrix], max_level: int | None = None) -> list[str]:
    """Check that levelwise ``maps`` commute with every ∂_i, s_j and R_n."""
    Q = min(source.max_level, target.max_level)
    if max_level is not None:
        Q = min(Q, max_level)
    out = []
    for n in range(Q + 1):
        f = maps[n]
        if f.shape != (target.ranks[n], source.ranks[n]):
            out.append(f"map on level {n} has shape {f.shape}")
            continue
        if f @ source.involutions[n] != target.involutions[n] @ f:
            out.append(f"map does not commute with R_{n}")
        if n >= 1:
            for i in range(n + 1):
                if maps[n - 1] @ source.faces[n, i] != target.faces[n, i] @ f:
                    out.append(f"map does not commute with ∂_{i} on level {n}")
        if n < Q:
            for j in range(n + 1):
                if maps[n + 1] @ source.degeneracies[n, j] != target.degeneracies[n, j] @ f:
                    out.append(f"map does not commute with s_{j} on level {n}")
    return out


class ReflexiveChainComplex:
    """A chain complex ``F_0 <- F_1 <- ... <- F_S`` of ΔR^op-modules.

    ``differentials[(s, n)]`` maps level ``n`` of ``terms[s]`` to level ``n``
    of ``terms[s - 1]``.
    """

    def __init__(self, terms: Sequence[DeltaRModule], differentials: Mapping[tuple[int, int], Matrix]):
        if not terms:
            raise ValueError("a reflexive chain complex needs at least one term")
        self.terms = list(terms)
        self.ring = terms[0].ring
        self.max_level = min(t.max_level for t in terms)
        self.differentials = dict(differentials)

    @property
    def top(self) -> int:
        return len(self.terms) - 1

    def differential(self, s: int, n: int) -> Matrix:
        m = self.differentials.get((s, n))
        if m is None:
            return Matrix.zero(self.ring, self.terms[s - 1].ranks[n], self.terms[s].ranks[n])
        return m

    @classmethod
    def concentrated(cls, f: DeltaRModule) -> "ReflexiveChainComplex":
        return cls([f], {})


def validate_reflexive_chain_complex(fc: ReflexiveChainComplex) -> list[str]:
    out = []
    for k, t in enumerate(fc.terms):
        out.extend(f"term {k}: {v}" for v in validate_delta_r_module(t, fc.max_level))
    for s in range(1, fc.top + 1):
        maps = {n: fc.differential(s, n) for n in range(fc.max_level + 1)}
        out.extend(f"δ_{s}: {v}" for v in validate_delta_r_map(fc.terms[s], fc.terms[s - 1], maps))
        if s >= 2:
            for n in range(fc.max_level + 1):
                if not (fc.differential(s - 1, n) @ fc.differential(s, n)).is_zero():
                    out.append(f"δ_{s - 1}δ_{s} != 0 on level {n}")
    return out
