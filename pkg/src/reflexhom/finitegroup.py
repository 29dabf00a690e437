"""Finite groups given by multiplication tables."""

from __future__ import annotations

from itertools import permutations
from typing import Sequence

from .errors import NotAGroup


class FiniteGroup:
    """Group on ``range(order)``; ``table[a][b]`` is the index of ``a*b``."""

    def __init__(self, elements: Sequence[str], table: Sequence[Sequence[int]]):
        self.elements = [str(e) for e in elements]
        self.order = len(self.elements)
        self.table = [list(map(int, row)) for row in table]
        self._check()
        e = self.identity
        self.inverse = [next(b for b in range(self.order) if self.table[a][b] == e)
                        for a in range(self.order)]

    @classmethod
    def from_table(cls, elements, table) -> "FiniteGroup":
        return cls(elements, table)

    def _check(self):
        n = self.order
        if n == 0:
            raise NotAGroup("empty set")
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise NotAGroup("table is not square of the right size")
        t = self.table
        if any(not 0 <= x < n for r in t for x in r):
            raise NotAGroup("closure: table entry out of range")
        ids = [e for e in range(n) if all(t[e][a] == a and t[a][e] == a for a in range(n))]
        if not ids:
            raise NotAGroup("identity: no two-sided identity element")
        self.identity = ids[0]
        for a in range(n):
            if not any(t[a][b] == self.identity and t[b][a] == self.identity for b in range(n)):
                raise NotAGroup(f"inverses: {self.elements[a]} has no inverse")
        for a in range(n):
            for b in range(n):
                ab = t[a][b]
                for c in range(n):
                    if t[ab][c] != t[a][t[b][c]]:
                        raise NotAGroup(
                            f"associativity: ({self.elements[a]}{self.elements[b]}){self.elements[c]}"
                            f" != {self.elements[a]}({self.elements[b]}{self.elements[c]})")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def prod(self, xs) -> int:
        out = self.identity
        for x in xs:
            out = self.table[out][x]
        return out

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, h: int, g: int) -> int:
        """``g^{-1} h g``."""
        return self.table[self.table[self.inverse[g]][h]][g]

    @property
    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def center(self) -> list[int]:
        t = self.table
        return [z for z in range(self.order) if all(t[z][g] == t[g][z] for g in range(self.order))]

    def to_dict(self) -> dict:
        return {"elements": list(self.elements), "table": [list(r) for r in self.table]}

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls(["e"], [[0]])

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        labels = ["e"] + [f"z^{k}" if k > 1 else "z" for k in range(1, n)]
        return cls(labels, [[(a + b) % n for b in range(n)] for a in range(n)])

    @classmethod
    def symmetric(cls, n: int) -> "FiniteGroup":
        perms = sorted(permutations(range(n)))
        index = {p: i for i, p in enumerate(perms)}
        # (a*b)(x) = a(b(x))
        table = [[index[tuple(a[b[x]] for x in range(n))] for b in perms] for a in perms]
        labels = ["".join(str(i + 1) for i in p) for p in perms]
        return cls(labels, table)

    @classmethod
    def klein_four(cls) -> "FiniteGroup":
        return cls(["e", "a", "b", "c"], [[a ^ b for b in range(4)] for a in range(4)])
