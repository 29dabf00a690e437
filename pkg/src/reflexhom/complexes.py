"""Bounded multicomplexes of free modules, up to three directions.

Every constructor verifies its structural identities (square-zero, and
commuting or anticommuting squares) and refuses invalid data.  Totalization
orders the summands of ``Tot_n`` by increasing first index, then second, so
emitted matrices are reproducible.
"""

from __future__ import annotations

from typing import Callable, Mapping, Sequence

from .errors import IllDefinedDifferential, NotInvolution, SquareZeroViolation, TwoNotInvertible
from .linalg import HomologyGroup, Matrix, Ring, homology_of_pair, quotient_presentation

__all__ = [
    "ChainComplex", "Bicomplex", "Tricomplex", "total_complex", "total_complex_3",
    "homology_range", "quotient_by_involution",
]


class _ProductCache:
    """Memoizes ``a @ b`` by object identity; reflexive bicomplexes reuse the
    same matrix objects across a whole row."""

    def __init__(self):
        self._cache = {}

    def __call__(self, a: Matrix, b: Matrix) -> Matrix:
        key = (id(a), id(b))
        hit = self._cache.get(key)
        if hit is None:
            hit = (a, b, a @ b)
            self._cache[key] = hit
        return hit[2]


class ChainComplex:
    """A complex ``C_0 <- C_1 <- ... <- C_N`` of free modules, zero elsewhere.

    ``differentials[n]`` is the matrix of ``d_n: C_n -> C_{n-1}`` of shape
    ``ranks[n-1] x ranks[n]``; missing entries are zero maps.
    """

    def __init__(self, ring: Ring, ranks: Sequence[int],
                 differentials: Mapping[int, Matrix] | None = None, check: bool = True):
        self.ring = ring
        self.ranks = tuple(int(r) for r in ranks)
        self._d: dict[int, Matrix] = {}
        for n, d in (differentials or {}).items():
            if not 1 <= n < len(self.ranks):
                if d.is_zero():
                    continue
                raise ValueError(f"differential in degree {n} outside the complex")
            if d.shape != (self.ranks[n - 1], self.ranks[n]):
                raise ValueError(f"d_{n} has shape {d.shape}, expected {(self.ranks[n - 1], self.ranks[n])}")
            if d.ring != ring:
                raise ValueError("differential over the wrong ring")
            self._d[n] = d
        if check:
            for n in range(2, len(self.ranks)):
                if n in self._d and n - 1 in self._d and not (self._d[n - 1] @ self._d[n]).is_zero():
                    raise SquareZeroViolation(f"d_{n - 1} d_{n} != 0")

    @property
    def top(self) -> int:
        return len(self.ranks) - 1

    def rank(self, n: int) -> int:
        return self.ranks[n] if 0 <= n < len(self.ranks) else 0

    def differential(self, n: int) -> Matrix:
        d = self._d.get(n)
        if d is None:
            return Matrix.zero(self.ring, self.rank(n - 1), self.rank(n))
        return d

    def homology(self, n: int, method: str = "elimination") -> HomologyGroup:
        return homology_of_pair(self.differential(n), self.differential(n + 1), self.ring,
                                method=method, check=False)

    def __repr__(self):
        return f"ChainComplex({self.ring}, ranks={list(self.ranks)})"


def homology_range(c: ChainComplex, n_min: int, n_max: int, method: str = "elimination") -> list[HomologyGroup]:
    return [c.homology(n, method) for n in range(n_min, n_max + 1)]


def _commutation_flags(pairs, what: str) -> tuple[bool, bool]:
    """Which of commute / anticommute hold for all ``(left, right)``
    composites; at least one must."""
    commute_ok = anti_ok = True
    for left, right in pairs:
        if commute_ok and left != right:
            commute_ok = False
        if anti_ok and left != -right:
            anti_ok = False
        if not (commute_ok or anti_ok):
            raise SquareZeroViolation(f"{what}: squares neither commute nor anticommute uniformly")
    return commute_ok, anti_ok


class Bicomplex:
    """Free modules ``B_{p,q}`` on ``[0, P] x [0, Q]`` with ``d_h: (p, q) -> (p-1, q)``
    and ``d_v: (p, q) -> (p, q-1)``.

    ``commutes`` records whether the squares commute (``True``) or
    anticommute; it is inferred and verified at construction.
    """

    def __init__(self, ring: Ring, P: int, Q: int, rank: Callable[[int, int], int],
                 d_h: Callable[[int, int], Matrix | None], d_v: Callable[[int, int], Matrix | None],
                 commutes: bool | None = None, check: bool = True):
        self.ring = ring
        self.P, self.Q = P, Q
        self._rank = {(p, q): rank(p, q) for p in range(P + 1) for q in range(Q + 1)}
        self._dh: dict[tuple[int, int], Matrix] = {}
        self._dv: dict[tuple[int, int], Matrix] = {}
        for p in range(1, P + 1):
            for q in range(Q + 1):
                m = d_h(p, q)
                self._dh[p, q] = m if m is not None else Matrix.zero(ring, self._rank[p - 1, q], self._rank[p, q])
                if self._dh[p, q].shape != (self._rank[p - 1, q], self._rank[p, q]):
                    raise ValueError(f"d_h at {(p, q)} has shape {self._dh[p, q].shape}")
        for p in range(P + 1):
            for q in range(1, Q + 1):
                m = d_v(p, q)
                self._dv[p, q] = m if m is not None else Matrix.zero(ring, self._rank[p, q - 1], self._rank[p, q])
                if self._dv[p, q].shape != (self._rank[p, q - 1], self._rank[p, q]):
                    raise ValueError(f"d_v at {(p, q)} has shape {self._dv[p, q].shape}")
        self.commutes = True if commutes is None else commutes
        if check:
            self._verify(commutes)

    def _verify(self, commutes):
        mul = _ProductCache()
        for p in range(2, self.P + 1):
            for q in range(self.Q + 1):
                if not mul(self._dh[p - 1, q], self._dh[p, q]).is_zero():
                    raise SquareZeroViolation(f"d_h d_h != 0 at {(p, q)}")
        for p in range(self.P + 1):
            for q in range(2, self.Q + 1):
                if not mul(self._dv[p, q - 1], self._dv[p, q]).is_zero():
                    raise SquareZeroViolation(f"d_v d_v != 0 at {(p, q)}")
        pairs = ((mul(self._dh[p, q - 1], self._dv[p, q]), mul(self._dv[p - 1, q], self._dh[p, q]))
                 for p in range(1, self.P + 1) for q in range(1, self.Q + 1))
        commute_ok, anti_ok = _commutation_flags(pairs, "bicomplex")
        if commutes is None:
            self.commutes = commute_ok
        elif not (commute_ok if commutes else anti_ok):
            raise SquareZeroViolation("declared square commutation does not hold")

    def rank(self, p: int, q: int) -> int:
        return self._rank.get((p, q), 0)

    def d_h(self, p: int, q: int) -> Matrix:
        return self._dh[p, q]

    def d_v(self, p: int, q: int) -> Matrix:
        return self._dv[p, q]

    def row(self, q: int) -> ChainComplex:
        return ChainComplex(self.ring, [self.rank(p, q) for p in range(self.P + 1)],
                            {p: self._dh[p, q] for p in range(1, self.P + 1)})

    def column(self, p: int) -> ChainComplex:
        return ChainComplex(self.ring, [self.rank(p, q) for q in range(self.Q + 1)],
                            {q: self._dv[p, q] for q in range(1, self.Q + 1)})


def _cells(n, bounds):
    """Index tuples with coordinate sum ``n`` inside ``bounds``, lexicographic."""
    if len(bounds) == 1:
        return [(n,)] if 0 <= n <= bounds[0] else []
    out = []
    for a in range(min(n, bounds[0]) + 1):
        out.extend((a,) + rest for rest in _cells(n - a, bounds[1:]))
    return out


def _totalize(ring, bounds, rank, families, check=True):
    """Direct-sum totalization.  ``families`` is a list of
    ``(axis, matrix_at(cell), sign(cell))``."""
    top = sum(bounds)
    cells = [_cells(n, bounds) for n in range(top + 1)]
    ranks = [sum(rank(c) for c in cs) for cs in cells]
    diffs = {}
    for n in range(1, top + 1):
        tgt_index = {c: i for i, c in enumerate(cells[n - 1])}
        blocks = {}
        for j, c in enumerate(cells[n]):
            for axis, mat, sign in families:
                if c[axis] == 0:
                    continue
                t = c[:axis] + (c[axis] - 1,) + c[axis + 1:]
                m = mat(c)
                if m.is_zero():
                    continue
                if sign(c) < 0:
                    m = -m
                i = tgt_index[t]
                blocks[i, j] = blocks[i, j] + m if (i, j) in blocks else m
        diffs[n] = Matrix.block(ring, [rank(c) for c in cells[n - 1]], [rank(c) for c in cells[n]], blocks)
    if check:
        for n in range(2, top + 1):
            if not (diffs[n - 1] @ diffs[n]).is_zero():
                raise SquareZeroViolation(f"total differential squares to nonzero in degree {n}")
    return ChainComplex(ring, ranks, diffs, check=False)


def total_complex(b: Bicomplex, check: bool = True) -> ChainComplex:
    """``Tot_n = ⊕_{p+q=n} B_{p,q}`` with differential ``d_h + (-1)^p d_v``
    (commuting squares) or ``d_h + d_v`` (anticommuting squares)."""
    families = [
        (0, lambda c: b.d_h(*c), lambda c: 1),
        (1, lambda c: b.d_v(*c), (lambda c: -1 if c[0] % 2 else 1) if b.commutes else (lambda c: 1)),
    ]
    return _totalize(b.ring, (b.P, b.Q), lambda c: b.rank(*c), families, check)


class Tricomplex:
    """Free modules on ``[0, P] x [0, Q] x [0, S]`` with three differentials,
    each lowering one coordinate.  Pairwise (anti)commutation flags are
    inferred and verified."""

    def __init__(self, ring: Ring, shape: tuple[int, int, int], rank: Callable[[int, int, int], int],
                 d1: Callable, d2: Callable, d3: Callable, check: bool = True):
        self.ring = ring
        self.shape = tuple(shape)
        P, Q, S = self.shape
        self._rank = {(p, q, s): rank(p, q, s)
                      for p in range(P + 1) for q in range(Q + 1) for s in range(S + 1)}
        self._d = ({}, {}, {})
        for axis, fam in enumerate((d1, d2, d3)):
            for c in self._rank:
                if c[axis] == 0:
                    continue
                t = c[:axis] + (c[axis] - 1,) + c[axis + 1:]
                m = fam(*c)
                if m is None:
                    m = Matrix.zero(ring, self._rank[t], self._rank[c])
                if m.shape != (self._rank[t], self._rank[c]):
                    raise ValueError(f"d{axis + 1} at {c} has shape {m.shape}")
                self._d[axis][c] = m
        self.commutes = {(0, 1): True, (0, 2): True, (1, 2): True}
        if check:
            self._verify()

    def _step(self, c, axis):
        return c[:axis] + (c[axis] - 1,) + c[axis + 1:]

    def _verify(self):
        mul = _ProductCache()
        for axis in range(3):
            for c, m in self._d[axis].items():
                t = self._step(c, axis)
                if t[axis] > 0 and not mul(self._d[axis][t], m).is_zero():
                    raise SquareZeroViolation(f"d{axis + 1} squares to nonzero at {c}")
        for a, b in ((0, 1), (0, 2), (1, 2)):
            pairs = []
            for c in self._rank:
                if c[a] == 0 or c[b] == 0:
                    continue
                ca, cb = self._step(c, a), self._step(c, b)
                pairs.append((mul(self._d[a][cb], self._d[b][c]), mul(self._d[b][ca], self._d[a][c])))
            self.commutes[a, b] = _commutation_flags(pairs, f"tricomplex directions {a + 1},{b + 1}")[0]

    def rank(self, p, q, s) -> int:
        return self._rank.get((p, q, s), 0)

    def d(self, axis: int, cell) -> Matrix:
        return self._d[axis][tuple(cell)]


def total_complex_3(t: Tricomplex, check: bool = True) -> ChainComplex:
    """Totalization ``d1 + ±d2 + ±d3``; the sign of ``d2`` is ``(-1)^p`` and
    that of ``d3`` is ``(-1)^{p+q}``, each factor dropped for a pair of
    directions that already anticommutes."""
    c01, c02, c12 = t.commutes[0, 1], t.commutes[0, 2], t.commutes[1, 2]

    def sign2(c):
        return -1 if (c01 and c[0] % 2) else 1

    def sign3(c):
        e = (c[0] if c02 else 0) + (c[1] if c12 else 0)
        return -1 if e % 2 else 1

    families = [
        (0, lambda c: t.d(0, c), lambda c: 1),
        (1, lambda c: t.d(1, c), sign2),
        (2, lambda c: t.d(2, c), sign3),
    ]
    return _totalize(t.ring, t.shape, lambda c: t.rank(*c), families, check)


def quotient_by_involution(c: ChainComplex, R: Mapping[int, Matrix], sign: int) -> ChainComplex:
    """Degreewise quotient ``C_n / im(1 - sign * R_n)`` with the induced differential.

    ``R`` must be a family of involutions compatible with the differential;
    the induced differential is checked to be well defined.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    ring = c.ring
    if not ring.two_invertible:
        raise TwoNotInvertible(f"quotient by the involution needs 1/2, ring is {ring}")
    proj, sect, rel = {}, {}, {}
    for n in range(c.top + 1):
        Rn = R[n]
        I = Matrix.identity(ring, c.rank(n))
        if not (Rn @ Rn) == I:
            raise NotInvolution(f"R_{n} does not square to the identity")
        rel[n] = I - Rn.scale(sign)
        proj[n], sect[n] = quotient_presentation(rel[n])
    diffs = {}
    for n in range(1, c.top + 1):
        d = c.differential(n)
        if not (proj[n - 1] @ d @ rel[n]).is_zero():
            raise IllDefinedDifferential(f"d_{n} does not preserve im(1 - sign R)")
        diffs[n] = proj[n - 1] @ d @ sect[n]
    return ChainComplex(ring, [proj[n].nrows for n in range(c.top + 1)], diffs)
