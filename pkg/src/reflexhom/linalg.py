"""Exact sparse linear algebra over Z, Q and F_p.

Matrices are stored as dictionaries of sparse rows and never contain explicit
zeros.  Scalars are Python ``int`` over Z and F_p (reduced into ``[0, p)``)
and ``int``/``Fraction`` over Q.  Nothing here ever touches floating point.

Homology of a composable pair is computed by sparse Markowitz elimination.
Over Z only unit pivots are eliminated sparsely; whatever is left (usually a
tiny core) is finished with a dense Smith normal form.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

from .errors import CompositionNonzero, NotInSpan, TorsionInQuotient

__all__ = [
    "Ring", "ZZ", "QQ", "GF", "Matrix", "HomologyGroup",
    "snf", "invariant_factors", "kernel_basis", "express_in_basis",
    "homology_of_pair", "rank", "quotient_presentation", "inverse",
]


# --------------------------------------------------------------------------
# rings


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Ring:
    """Coefficient ring: ``Ring("integers")``, ``Ring("rationals")`` or
    ``Ring("prime_field", p)``."""

    kind: str
    characteristic: int = 0

    def __post_init__(self):
        if self.kind in ("integers", "rationals"):
            if self.characteristic != 0:
                raise ValueError(f"{self.kind} has characteristic 0")
        elif self.kind == "prime_field":
            if not _is_prime(self.characteristic):
                raise ValueError(f"prime field needs a prime characteristic, got {self.characteristic}")
        else:
            raise ValueError(f"unknown ring kind {self.kind!r}")

    @property
    def is_field(self) -> bool:
        return self.kind != "integers"

    @property
    def two_invertible(self) -> bool:
        return self.kind == "rationals" or (self.kind == "prime_field" and self.characteristic != 2)

    def __str__(self):
        if self.kind == "integers":
            return "Z"
        if self.kind == "rationals":
            return "Q"
        return f"F_{self.characteristic}"

    def __repr__(self):
        return f"Ring({self})"

    # scalars -------------------------------------------------------------

    def __call__(self, x):
        """Coerce ``x`` (int, Fraction or an ``(num, den)`` pair) into the ring."""
        if isinstance(x, (tuple, list)):
            num, den = x
            x = Fraction(int(num), int(den))
        if self.kind == "integers":
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"{x} is not an integer")
                return x.numerator
            return int(x)
        if self.kind == "rationals":
            if isinstance(x, Fraction):
                return x.numerator if x.denominator == 1 else x
            return int(x)
        p = self.characteristic
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ValueError(f"{x} has no image in F_{p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        return int(x) % p

    def norm(self, x):
        return x % self.characteristic if self.kind == "prime_field" else x

    def inv(self, x):
        if self.kind == "integers":
            if x in (1, -1):
                return x
            raise ZeroDivisionError(f"{x} is not a unit in Z")
        if self.kind == "rationals":
            r = Fraction(1) / x
            return r.numerator if r.denominator == 1 else r
        return pow(x, -1, self.characteristic)

    def is_unit(self, x) -> bool:
        if self.kind == "integers":
            return x == 1 or x == -1
        return x != 0


ZZ = Ring("integers")
QQ = Ring("rationals")


def GF(p: int) -> Ring:
    return Ring("prime_field", p)


# --------------------------------------------------------------------------
# matrices


class Matrix:
    """Immutable sparse matrix over a :class:`Ring`.

    ``entries`` maps ``(row, col)`` to a nonzero scalar.  Internally rows are
    kept as ``{row: {col: value}}``.
    """

    __slots__ = ("ring", "nrows", "ncols", "_rows", "_hash")

    def __init__(self, ring: Ring, nrows: int, ncols: int,
                 entries: Mapping[tuple[int, int], object] | None = None):
        if nrows < 0 or ncols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        rows: dict[int, dict[int, object]] = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise IndexError(f"entry ({r}, {c}) outside {nrows}x{ncols}")
            v = ring(v)
            if v:
                rows.setdefault(r, {})[c] = v
        self.ring = ring
        self.nrows = nrows
        self.ncols = ncols
        self._rows = rows
        self._hash = None

    @classmethod
    def _from_rows(cls, ring, nrows, ncols, rows):
        # trusted fast path: rows already normalized and zero-free
        m = cls.__new__(cls)
        m.ring, m.nrows, m.ncols, m._rows, m._hash = ring, nrows, ncols, rows, None
        return m

    @classmethod
    def zero(cls, ring, nrows, ncols):
        return cls._from_rows(ring, nrows, ncols, {})

    @classmethod
    def identity(cls, ring, n):
        one = ring(1)
        return cls._from_rows(ring, n, n, {i: {i: one} for i in range(n)})

    @classmethod
    def scalar(cls, ring, n, c):
        c = ring(c)
        if not c:
            return cls.zero(ring, n, n)
        return cls._from_rows(ring, n, n, {i: {i: c} for i in range(n)})

    @classmethod
    def dense(cls, ring, rows: Sequence[Sequence[object]], ncols: int | None = None):
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if nrows else 0
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged dense matrix")
            for j, v in enumerate(row):
                if v:
                    entries[i, j] = v
        return cls(ring, nrows, ncols, entries)

    @classmethod
    def from_columns(cls, ring, nrows, columns: Sequence[Mapping[int, object]]):
        """Build a matrix from sparse columns ``{row: value}``."""
        entries = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                entries[i, j] = v
        return cls(ring, nrows, len(columns), entries)

    @classmethod
    def permutation(cls, ring, target_size, images: Sequence[int]):
        """0/1 matrix sending basis vector ``j`` to basis vector ``images[j]``."""
        one = ring(1)
        rows: dict[int, dict[int, object]] = {}
        for j, i in enumerate(images):
            rows.setdefault(i, {})[j] = one
        return cls._from_rows(ring, target_size, len(images), rows)

    @classmethod
    def block(cls, ring, row_sizes: Sequence[int], col_sizes: Sequence[int],
              blocks: Mapping[tuple[int, int], "Matrix"]):
        roff = [0]
        for s in row_sizes:
            roff.append(roff[-1] + s)
        coff = [0]
        for s in col_sizes:
            coff.append(coff[-1] + s)
        rows: dict[int, dict[int, object]] = {}
        for (bi, bj), b in blocks.items():
            if (b.nrows, b.ncols) != (row_sizes[bi], col_sizes[bj]):
                raise ValueError(f"block ({bi}, {bj}) has shape {b.shape}")
            r0, c0 = roff[bi], coff[bj]
            for r, row in b._rows.items():
                target = rows.setdefault(r0 + r, {})
                for c, v in row.items():
                    cc = c0 + c
                    if cc in target:
                        s = ring.norm(target[cc] + v)
                        if s:
                            target[cc] = s
                        else:
                            del target[cc]
                    else:
                        target[cc] = v
        rows = {r: row for r, row in rows.items() if row}
        return cls._from_rows(ring, roff[-1], coff[-1], rows)

    # inspection ------------------------------------------------------------

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def entries(self) -> dict[tuple[int, int], object]:
        return {(r, c): v for r, row in self._rows.items() for c, v in row.items()}

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self._rows.values())

    def __getitem__(self, rc):
        r, c = rc
        if not (0 <= r < self.nrows and 0 <= c < self.ncols):
            raise IndexError(rc)
        return self._rows.get(r, {}).get(c, 0)

    def row(self, r) -> dict[int, object]:
        return dict(self._rows.get(r, {}))

    def column(self, c) -> dict[int, object]:
        return {r: row[c] for r, row in self._rows.items() if c in row}

    def columns(self) -> list[dict[int, object]]:
        cols: list[dict[int, object]] = [{} for _ in range(self.ncols)]
        for r, row in self._rows.items():
            for c, v in row.items():
                cols[c][r] = v
        return cols

    def row_dicts(self) -> dict[int, dict[int, object]]:
        return {r: dict(row) for r, row in self._rows.items()}

    def to_dense(self) -> list[list[object]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for r, row in self._rows.items():
            for c, v in row.items():
                out[r][c] = v
        return out

    def is_zero(self) -> bool:
        return not self._rows

    def is_identity(self) -> bool:
        if self.nrows != self.ncols or len(self._rows) != self.nrows:
            return False
        return all(row == {r: 1} for r, row in self._rows.items())

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.shape == other.shape and self.ring == other.ring
                and self._rows == other._rows)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, self.ring,
                               frozenset((r, c, v) for r, row in self._rows.items()
                                         for c, v in row.items())))
        return self._hash

    def __repr__(self):
        if self.nrows * self.ncols <= 64:
            return f"Matrix({self.ring}, {self.to_dense()})"
        return f"<Matrix {self.nrows}x{self.ncols} over {self.ring}, nnz={self.nnz}>"

    # arithmetic --------------------------------------------------------------

    def _check_ring(self, other):
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_ring(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        norm = self.ring.norm
        rows = {r: dict(row) for r, row in self._rows.items()}
        for r, row in other._rows.items():
            target = rows.setdefault(r, {})
            for c, v in row.items():
                s = norm(target.get(c, 0) + v)
                if s:
                    target[c] = s
                else:
                    target.pop(c, None)
            if not target:
                del rows[r]
        return Matrix._from_rows(self.ring, self.nrows, self.ncols, rows)

    def __neg__(self) -> "Matrix":
        norm = self.ring.norm
        rows = {r: {c: norm(-v) for c, v in row.items()} for r, row in self._rows.items()}
        return Matrix._from_rows(self.ring, self.nrows, self.ncols, rows)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = self.ring(c)
        if not c:
            return Matrix.zero(self.ring, self.nrows, self.ncols)
        norm = self.ring.norm
        rows = {r: {j: norm(c * v) for j, v in row.items()} for r, row in self._rows.items()}
        return Matrix._from_rows(self.ring, self.nrows, self.ncols, rows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_ring(other)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        norm = self.ring.norm
        orows = other._rows
        rows = {}
        for r, row in self._rows.items():
            acc: dict[int, object] = {}
            for k, a in row.items():
                brow = orows.get(k)
                if brow is None:
                    continue
                for c, b in brow.items():
                    acc[c] = acc.get(c, 0) + a * b
            acc = {c: v for c, v in ((c, norm(v)) for c, v in acc.items()) if v}
            if acc:
                rows[r] = acc
        return Matrix._from_rows(self.ring, self.nrows, other.ncols, rows)

    def apply(self, vec: Mapping[int, object]) -> dict[int, object]:
        """Multiply a sparse column vector ``{index: value}``."""
        norm = self.ring.norm
        out = {}
        for r, row in self._rows.items():
            s = 0
            for c, v in row.items():
                x = vec.get(c)
                if x:
                    s += v * x
            s = norm(s)
            if s:
                out[r] = s
        return out

    def transpose(self) -> "Matrix":
        rows: dict[int, dict[int, object]] = {}
        for r, row in self._rows.items():
            for c, v in row.items():
                rows.setdefault(c, {})[r] = v
        return Matrix._from_rows(self.ring, self.ncols, self.nrows, rows)

    T = property(transpose)

    def change_ring(self, ring: Ring) -> "Matrix":
        if ring == self.ring:
            return self
        return Matrix(ring, self.nrows, self.ncols, self.entries)

    def select_columns(self, cols: Sequence[int]) -> "Matrix":
        index = {c: j for j, c in enumerate(cols)}
        rows = {}
        for r, row in self._rows.items():
            new = {index[c]: v for c, v in row.items() if c in index}
            if new:
                rows[r] = new
        return Matrix._from_rows(self.ring, self.nrows, len(cols), rows)

    def select_rows(self, rows_: Sequence[int]) -> "Matrix":
        rows = {i: dict(self._rows[r]) for i, r in enumerate(rows_) if r in self._rows}
        return Matrix._from_rows(self.ring, len(rows_), self.ncols, rows)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows:
            raise ValueError("hstack needs equal row counts")
        return Matrix.block(self.ring, [self.nrows], [self.ncols, other.ncols],
                            {(0, 0): self, (0, 1): other})

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.ncols:
            raise ValueError("vstack needs equal column counts")
        return Matrix.block(self.ring, [self.nrows, other.nrows], [self.ncols],
                            {(0, 0): self, (1, 0): other})

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product; index ``(i, k)`` maps to ``i * other.n + k``."""
        self._check_ring(other)
        norm = self.ring.norm
        rows = {}
        for r1, row1 in self._rows.items():
            for r2, row2 in other._rows.items():
                new = {}
                for c1, v1 in row1.items():
                    for c2, v2 in row2.items():
                        x = norm(v1 * v2)
                        if x:
                            new[c1 * other.ncols + c2] = x
                if new:
                    rows[r1 * other.nrows + r2] = new
        return Matrix._from_rows(self.ring, self.nrows * other.nrows,
                                 self.ncols * other.ncols, rows)


# --------------------------------------------------------------------------
# homology groups


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def normalize_torsion(factors: Iterable[int]) -> tuple[int, ...]:
    """Invariant-factor form (each dividing the next, units dropped) of the
    direct sum of cyclic groups Z/d for ``d`` in ``factors``."""
    powers: dict[int, list[int]] = {}
    for d in factors:
        d = abs(d)
        if d == 0:
            raise ValueError("Z/0 is not a torsion summand")
        for p, e in _factor(d).items():
            powers.setdefault(p, []).append(p ** e)
    if not powers:
        return ()
    length = max(len(v) for v in powers.values())
    out = [1] * length
    for p, vals in powers.items():
        vals.sort()
        for i, v in enumerate(vals):
            out[length - len(vals) + i] *= v
    return tuple(d for d in out if d > 1)


@dataclass(frozen=True)
class HomologyGroup:
    """A finitely generated module ``R^free_rank ⊕ ⊕ R/d_i`` with ``d_1 | d_2 | ...``."""

    ring: Ring
    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        if self.ring.is_field and self.torsion:
            raise ValueError("torsion over a field")
        if any(d <= 1 for d in self.torsion):
            raise ValueError("torsion factors must exceed 1")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError("torsion factors must form a divisibility chain")

    @classmethod
    def zero(cls, ring):
        return cls(ring, 0, ())

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def direct_sum(self, other: "HomologyGroup") -> "HomologyGroup":
        if self.ring != other.ring:
            raise ValueError("ring mismatch")
        return HomologyGroup(self.ring, self.free_rank + other.free_rank,
                             normalize_torsion(self.torsion + other.torsion))

    __add__ = direct_sum

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append(str(self.ring) if self.free_rank == 1 else f"{self.ring}^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_dict(cls, ring, data) -> "HomologyGroup":
        return cls(ring, int(data["free_rank"]), tuple(int(d) for d in data["torsion"]))


def direct_sum(groups: Iterable[HomologyGroup], ring: Ring) -> HomologyGroup:
    out = HomologyGroup.zero(ring)
    for g in groups:
        out = out + g
    return out


# --------------------------------------------------------------------------
# sparse elimination


def _markowitz(rows: dict[int, dict[int, object]], ring: Ring):
    """Eliminate unit pivots in place, cheapest (row, column) first.

    Returns ``(number_of_pivots, leftover_rows)``.  Over a field the leftover
    is always empty; over Z it holds rows without unit entries.
    """
    norm, is_unit = ring.norm, ring.is_unit
    cols: dict[int, set[int]] = {}
    for rid, row in rows.items():
        for c in row:
            cols.setdefault(c, set()).add(rid)
    heap = [(len(row), rid) for rid, row in rows.items()]
    heapq.heapify(heap)
    stuck: set[int] = set()
    pivots = 0
    while heap:
        length, rid = heapq.heappop(heap)
        row = rows.get(rid)
        if row is None or len(row) != length or rid in stuck:
            continue
        best, best_cost = None, None
        for c, v in row.items():
            if is_unit(v):
                cost = len(cols[c])
                if best is None or cost < best_cost:
                    best, best_cost = c, cost
                    if cost == 1:
                        break
        if best is None:
            stuck.add(rid)
            continue
        pivot_inv = ring.inv(row[best])
        del rows[rid]
        for c in row:
            cols[c].discard(rid)
        for other in list(cols[best]):
            orow = rows[other]
            f = norm(orow[best] * pivot_inv)
            for c, v in row.items():
                nv = norm(orow.get(c, 0) - f * v)
                if nv:
                    if c not in orow:
                        cols[c].add(other)
                    orow[c] = nv
                elif c in orow:
                    del orow[c]
                    cols[c].discard(other)
            stuck.discard(other)
            if orow:
                heapq.heappush(heap, (len(orow), other))
            else:
                del rows[other]
        del cols[best]
        pivots += 1
    return pivots, [rows[r] for r in sorted(stuck) if r in rows]


def _core_dense(leftover: list[dict[int, object]]) -> list[list[int]]:
    colset = sorted({c for row in leftover for c in row})
    index = {c: j for j, c in enumerate(colset)}
    dense = []
    for row in leftover:
        line = [0] * len(colset)
        for c, v in row.items():
            line[index[c]] = v
        dense.append(line)
    return dense


def rank(m: Matrix, ring: Ring | None = None) -> int:
    """Exact rank of ``m`` over ``ring`` (default: the matrix's own ring)."""
    ring = ring or m.ring
    m = m.change_ring(ring)
    # eliminate along the shorter side
    rows = m.row_dicts() if m.nrows <= m.ncols else m.transpose().row_dicts()
    pivots, leftover = _markowitz(rows, ring)
    if leftover:
        diag, _, _, _ = _snf_dense(_core_dense(leftover), track=False)
        pivots += sum(1 for d in diag if d)
    return pivots


def invariant_factors(m: Matrix) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form of an integer matrix,
    in divisibility order (units included)."""
    if m.ring != ZZ:
        raise ValueError("invariant factors are computed over Z")
    rows = m.row_dicts() if m.nrows <= m.ncols else m.transpose().row_dicts()
    pivots, leftover = _markowitz(rows, ZZ)
    out = [1] * pivots
    if leftover:
        diag, _, _, _ = _snf_dense(_core_dense(leftover), track=False)
        out.extend(d for d in diag if d)
    return out


# --------------------------------------------------------------------------
# dense Smith normal form


def _snf_dense(A: list[list[int]], track: bool = True, track_inverse: bool = False,
               ncols: int | None = None):
    """Smith normal form of a dense integer matrix with min-|a| pivoting.

    Returns ``(diagonal, U, V, Uinv)`` with ``U A V = D``; the transforms are
    ``None`` unless requested.
    """
    A = [list(r) for r in A]
    m = len(A)
    n = ncols if ncols is not None else (len(A[0]) if m else 0)
    U = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if track else None
    W = [[int(i == j) for j in range(m)] for i in range(m)] if track_inverse else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]
        if W is not None:
            for row in W:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        a, b = A[dst], A[src]
        for k in range(n):
            if b[k]:
                a[k] += q * b[k]
        if U is not None:
            u, w = U[dst], U[src]
            for k in range(m):
                if w[k]:
                    u[k] += q * w[k]
        if W is not None:
            for row in W:
                if row[dst]:
                    row[src] -= q * row[dst]

    def add_col(dst, src, q):
        for row in A:
            if row[src]:
                row[dst] += q * row[src]
        if V is not None:
            for row in V:
                if row[src]:
                    row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i0, j0 = best
        swap_rows(t, i0)
        swap_cols(t, j0)
        while True:
            clean = True
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    if A[t][j]:
                        clean = False
            if not clean:
                # move the smallest remainder into the pivot slot
                best = (abs(A[t][t]), t, t)
                for i in range(t + 1, m):
                    if A[i][t] and abs(A[i][t]) < best[0]:
                        best = (abs(A[i][t]), i, t)
                for j in range(t + 1, n):
                    if A[t][j] and abs(A[t][j]) < best[0]:
                        best = (abs(A[t][j]), t, j)
                _, i0, j0 = best
                swap_rows(t, i0)
                swap_cols(t, j0)
                continue
            bad = None
            for i in range(t + 1, m):
                row = A[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
            if W is not None:
                for row in W:
                    row[t] = -row[t]
        t += 1
    diag = [A[i][i] for i in range(min(m, n))]
    return diag, U, V, W


def snf(m: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form ``U @ m @ V == D`` of an integer matrix.

    ``U`` and ``V`` are unimodular; ``D`` is diagonal with nonnegative entries
    ``d_1 | d_2 | ...`` followed by zeros.
    """
    if m.ring != ZZ:
        raise ValueError("snf is defined over Z")
    diag, U, V, _ = _snf_dense(m.to_dense(), track=True, ncols=m.ncols)
    D = Matrix(ZZ, m.nrows, m.ncols, {(i, i): d for i, d in enumerate(diag) if d})
    Um = Matrix.dense(ZZ, U, m.nrows)
    Vm = Matrix.dense(ZZ, V, m.ncols)
    return Um, D, Vm


# --------------------------------------------------------------------------
# field echelon forms


def _rref(rows: list[dict[int, object]], ring: Ring):
    """Reduced row echelon form of sparse rows over a field.

    Returns ``(pivot_rows, pivot_cols)`` with ``pivot_rows[k]`` having a 1 in
    ``pivot_cols[k]`` and zeros in every other pivot column.
    """
    norm = ring.norm
    pivots: dict[int, dict[int, object]] = {}
    for row in rows:
        row = dict(row)
        while row:
            c = min(row)
            if c in pivots:
                f = row[c]
                for cc, v in pivots[c].items():
                    nv = norm(row.get(cc, 0) - f * v)
                    if nv:
                        row[cc] = nv
                    else:
                        row.pop(cc, None)
                continue
            inv = ring.inv(row[c])
            pivots[c] = {cc: norm(v * inv) for cc, v in row.items()}
            break
    order = sorted(pivots)
    # back substitution
    for c in reversed(order):
        prow = pivots[c]
        for c2 in order:
            if c2 >= c:
                break
            other = pivots[c2]
            f = other.get(c)
            if f:
                for cc, v in prow.items():
                    nv = norm(other.get(cc, 0) - f * v)
                    if nv:
                        other[cc] = nv
                    else:
                        other.pop(cc, None)
    return [pivots[c] for c in order], order


# --------------------------------------------------------------------------
# kernels, solving, quotients


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form a basis of ``ker(m)``; over Z, of the full kernel lattice."""
    ring = m.ring
    n = m.ncols
    if ring == ZZ:
        if m.nrows == 0:
            return Matrix.identity(ZZ, n)
        diag, _, V, _ = _snf_dense(m.to_dense(), track=True, ncols=n)
        r = sum(1 for d in diag if d)
        return Matrix.dense(ZZ, [row[r:] for row in V], n - r) if n else Matrix.zero(ZZ, 0, 0)
    prow, pcols = _rref(list(m.row_dicts().values()), ring)
    pset = set(pcols)
    free = [c for c in range(n) if c not in pset]
    columns = []
    for f in free:
        col = {f: ring(1)}
        for row, pc in zip(prow, pcols):
            v = row.get(f)
            if v:
                col[pc] = ring.norm(-v)
        columns.append(col)
    return Matrix.from_columns(ring, n, columns)


def express_in_basis(vectors: Matrix, basis: Matrix) -> Matrix:
    """Solve ``basis @ X == vectors`` exactly; raise :class:`NotInSpan` if impossible.

    ``basis`` must have linearly independent columns.
    """
    ring = basis.ring
    if vectors.nrows != basis.nrows:
        raise ValueError("vectors and basis live in different ambient modules")
    k = basis.ncols
    if ring == ZZ:
        diag, U, V, _ = _snf_dense(basis.to_dense(), track=True, ncols=k)
        r = sum(1 for d in diag if d)
        if r < k:
            raise ValueError("basis columns are linearly dependent")
        Um = Matrix.dense(ZZ, U, basis.nrows) if basis.nrows else Matrix.zero(ZZ, 0, 0)
        Y = Um @ vectors
        Z: dict[tuple[int, int], int] = {}
        for (i, j), v in Y.entries.items():
            if i >= r:
                raise NotInSpan(f"column {j} has a component outside the span")
            q, rem = divmod(v, diag[i])
            if rem:
                raise NotInSpan(f"column {j} is not an integer combination ({v} not divisible by {diag[i]})")
            Z[i, j] = q
        Vm = Matrix.dense(ZZ, V, k) if k else Matrix.zero(ZZ, 0, 0)
        return Vm @ Matrix(ZZ, k, vectors.ncols, Z)
    aug = basis.hstack(vectors)
    prow, pcols = _rref(list(aug.row_dicts().values()), ring)
    if any(c >= k for c in pcols):
        raise NotInSpan("a column lies outside the span of the basis")
    if len(pcols) < k:
        raise ValueError("basis columns are linearly dependent")
    entries = {}
    for row, pc in zip(prow, pcols):
        for c, v in row.items():
            if c >= k:
                entries[pc, c - k] = v
    return Matrix(ring, k, vectors.ncols, entries)


def inverse(m: Matrix) -> Matrix:
    """Exact inverse of a square matrix invertible over its ring."""
    if m.nrows != m.ncols:
        raise ValueError("inverse of a non-square matrix")
    try:
        return express_in_basis(Matrix.identity(m.ring, m.nrows), m)
    except (NotInSpan, ValueError) as exc:
        raise ValueError(f"matrix is not invertible over {m.ring}") from exc


def quotient_presentation(relations: Matrix) -> tuple[Matrix, Matrix]:
    """Present ``R^N / colspan(relations)`` as a free module.

    Returns ``(proj, section)`` with ``proj @ relations == 0``,
    ``proj @ section == I`` and ``ker(proj) == colspan(relations)``.  Over Z a
    torsion quotient raises :class:`TorsionInQuotient`.
    """
    ring = relations.ring
    N = relations.nrows
    if ring == ZZ:
        diag, U, _, W = _snf_dense(relations.to_dense(), track=True, track_inverse=True,
                                   ncols=relations.ncols)
        r = sum(1 for d in diag if d)
        if any(d > 1 for d in diag):
            raise TorsionInQuotient(f"quotient has torsion {[d for d in diag if d > 1]}")
        proj = Matrix.dense(ZZ, U[r:], N) if N else Matrix.zero(ZZ, 0, 0)
        section = Matrix.dense(ZZ, [row[r:] for row in W], N - r) if N else Matrix.zero(ZZ, 0, 0)
        return proj, section
    left_kernel = kernel_basis(relations.transpose())  # N x q
    prow, pcols = _rref(list(left_kernel.transpose().row_dicts().values()), ring)
    q = len(pcols)
    proj = Matrix(ring, q, N, {(i, c): v for i, row in enumerate(prow) for c, v in row.items()})
    section = Matrix(ring, N, q, {(c, i): 1 for i, c in enumerate(pcols)})
    return proj, section


# --------------------------------------------------------------------------
# homology


def homology_of_pair(d_out: Matrix, d_in: Matrix, ring: Ring | None = None,
                     method: str = "elimination", check: bool = True) -> HomologyGroup:
    """``ker(d_out) / im(d_in)`` for a composable pair with ``d_out @ d_in == 0``.

    ``method="elimination"`` uses ranks plus the invariant factors of
    ``d_in`` (the kernel of ``d_out`` is saturated, so its torsion is that of
    the cokernel of ``d_in``).  ``method="kernel"`` goes through an explicit
    kernel basis and change of coordinates and serves as a cross-check.
    """
    ring = ring or d_out.ring
    d_out = d_out.change_ring(ring)
    d_in = d_in.change_ring(ring)
    if d_out.ncols != d_in.nrows:
        raise ValueError(f"pair is not composable: {d_out.shape} after {d_in.shape}")
    if check and not (d_out @ d_in).is_zero():
        raise CompositionNonzero("d_out @ d_in is not zero")
    ambient = d_out.ncols
    if ring.is_field:
        return HomologyGroup(ring, ambient - rank(d_out) - rank(d_in))
    if method == "kernel":
        K = kernel_basis(d_out)
        X = express_in_basis(d_in, K)
        diag, _, _, _ = _snf_dense(X.to_dense(), track=False, ncols=X.ncols)
        nonzero = [d for d in diag if d]
        return HomologyGroup(ZZ, K.ncols - len(nonzero), tuple(d for d in nonzero if d > 1))
    if method != "elimination":
        raise ValueError(f"unknown method {method!r}")
    factors = invariant_factors(d_in)
    free = ambient - rank(d_out) - len(factors)
    return HomologyGroup(ZZ, free, tuple(d for d in factors if d > 1))


def integer_content(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
