"""Reflexive sets of a finite group, Eilenberg–Mac Lane reflexive modules and
the conjugacy-class decomposition of ``HR^+(k[G])``."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .algebra import group_algebra, loday_module
from .delta_r import DeltaRModule, validate_delta_r_map
from .engine import hochschild_homology, hr
from .errors import OrbitNotInversionClosed
from .finitegroup import FiniteGroup
from .linalg import HomologyGroup, Matrix, Ring, direct_sum


class FiniteReflexiveSet:
    """Levels ``0..max_level`` of finite sets with face, degeneracy and
    involution maps stored as index lists."""

    def __init__(self, labels: Sequence[Sequence], faces: dict, degeneracies: dict, involutions: dict,
                 name: str = ""):
        self.labels = [list(l) for l in labels]
        self.sizes = [len(l) for l in self.labels]
        self.max_level = len(self.sizes) - 1
        self.faces = {k: list(v) for k, v in faces.items()}
        self.degeneracies = {k: list(v) for k, v in degeneracies.items()}
        self.involutions = {k: list(v) for k, v in involutions.items()}
        self.name = name

    def __repr__(self):
        return f"<FiniteReflexiveSet {self.name} sizes={self.sizes}>"

    def to_dict(self) -> dict:
        return {
            "levels": [[list(x) if isinstance(x, tuple) else x for x in l] for l in self.labels],
            "faces": {f"{n},{i}": v for (n, i), v in sorted(self.faces.items())},
            "degeneracies": {f"{n},{j}": v for (n, j), v in sorted(self.degeneracies.items())},
            "involutions": {str(n): v for n, v in sorted(self.involutions.items())},
        }


def validate_reflexive_set(x: FiniteReflexiveSet) -> list[str]:
    """Simplicial identities and the involution relations, pointwise."""
    out = []
    Q, sz = x.max_level, x.sizes
    d, s, r = x.faces, x.degeneracies, x.involutions

    def well_formed(m, n_src, n_tgt, label):
        if m is None or len(m) != sz[n_src] or any(not 0 <= v < sz[n_tgt] for v in m):
            out.append(f"{label} is missing or malformed")
            return False
        return True

    ok = True
    for n in range(Q + 1):
        ok &= well_formed(r.get(n), n, n, f"r_{n}")
        for i in range(n + 1) if n else ():
            ok &= well_formed(d.get((n, i)), n, n - 1, f"∂_{i} on level {n}")
        for j in range(n + 1) if n < Q else ():
            ok &= well_formed(s.get((n, j)), n, n + 1, f"s_{j} on level {n}")
    if not ok:
        return out
    for n in range(Q + 1):
        pts = range(sz[n])
        if any(r[n][r[n][a]] != a for a in pts):
            out.append(f"r_{n}^2 != id")
        for j in range(n + 1) if n >= 2 else ():
            for i in range(j):
                if any(d[n - 1, i][d[n, j][a]] != d[n - 1, j - 1][d[n, i][a]] for a in pts):
                    out.append(f"∂_{i}∂_{j} != ∂_{j - 1}∂_{i} on level {n}")
        if n < Q:
            for j in range(n + 1):
                for i in range(n + 2):
                    for a in pts:
                        lhs = d[n + 1, i][s[n, j][a]]
                        if i < j:
                            rhs = s[n - 1, j - 1][d[n, i][a]]
                        elif i in (j, j + 1):
                            rhs = a
                        else:
                            rhs = s[n - 1, j][d[n, i - 1][a]]
                        if lhs != rhs:
                            out.append(f"∂_{i}s_{j} relation fails on level {n}")
                            break
                if any(s[n, j][r[n][a]] != r[n + 1][s[n, n - j][a]] for a in pts):
                    out.append(f"s_{j}r_{n} != r_{n + 1}s_{n - j}")
            if n + 1 <= Q:
                for j in range(n + 1):
                    for i in range(j + 1) if n + 1 < Q else ():
                        if any(s[n + 1, i][s[n, j][a]] != s[n + 1, j + 1][s[n, i][a]] for a in pts):
                            out.append(f"s_{i}s_{j} != s_{j + 1}s_{i} on level {n}")
        for i in range(n + 1) if n else ():
            if any(d[n, i][r[n][a]] != r[n - 1][d[n, n - i][a]] for a in pts):
                out.append(f"∂_{i}r_{n} != r_{n - 1}∂_{n - i}")
    return out


def _set_from_tuples(levels: list[list[tuple]], face, degen, inv, name) -> FiniteReflexiveSet:
    index = [{t: i for i, t in enumerate(l)} for l in levels]
    Q = len(levels) - 1
    faces, degs, invs = {}, {}, {}
    for n in range(Q + 1):
        invs[n] = [index[n][inv(t)] for t in levels[n]]
        for i in range(n + 1) if n else ():
            faces[n, i] = [index[n - 1][face(t, i)] for t in levels[n]]
        for j in range(n + 1) if n < Q else ():
            degs[n, j] = [index[n + 1][degen(t, j)] for t in levels[n]]
    return FiniteReflexiveSet(levels, faces, degs, invs, name)


def gamma_reflexive_set(g: FiniteGroup, max_level: int) -> FiniteReflexiveSet:
    """``Γ_n G = G^{n+1}``; the last face is ``(g_n g_0, g_1, ..., g_{n-1})``."""
    e, m, inv = g.identity, g.mul, g.inv
    levels = [list(product(range(g.order), repeat=n + 1)) for n in range(max_level + 1)]

    def face(t, i):
        n = len(t) - 1
        if i < n:
            return t[:i] + (m(t[i], t[i + 1]),) + t[i + 2:]
        return (m(t[n], t[0]),) + t[1:n]

    def degen(t, j):
        return t[:j + 1] + (e,) + t[j + 1:]

    def invol(t):
        return (inv(t[0]),) + tuple(inv(x) for x in reversed(t[1:]))

    return _set_from_tuples(levels, face, degen, invol, f"Gamma(G{g.order})")


def bar_reflexive_set(g: FiniteGroup, max_level: int) -> FiniteReflexiveSet:
    """``B_n G = G^n`` with the bar faces (middle faces ``1 <= i <= n-1``)."""
    e, m, inv = g.identity, g.mul, g.inv
    levels = [list(product(range(g.order), repeat=n)) for n in range(max_level + 1)]

    def face(t, i):
        n = len(t)
        if i == 0:
            return t[1:]
        if i == n:
            return t[:-1]
        return t[:i - 1] + (m(t[i - 1], t[i]),) + t[i + 1:]

    def degen(t, j):
        return t[:j] + (e,) + t[j:]

    def invol(t):
        return tuple(inv(x) for x in reversed(t))

    return _set_from_tuples(levels, face, degen, invol, f"B(G{g.order})")


def gamma_to_bar(g: FiniteGroup, max_level: int) -> dict[int, list[int]]:
    """Index maps of the projection ``(g_0, ..., g_n) -> (g_1, ..., g_n)``."""
    gam, bar = gamma_reflexive_set(g, max_level), bar_reflexive_set(g, max_level)
    out = {}
    for n in range(max_level + 1):
        index = {t: i for i, t in enumerate(bar.labels[n])}
        out[n] = [index[t[1:]] for t in gam.labels[n]]
    return out


def linearize(x: FiniteReflexiveSet, ring: Ring) -> DeltaRModule:
    sz = x.sizes
    return DeltaRModule(
        ring, sz,
        {k: Matrix.permutation(ring, sz[k[0] - 1], v) for k, v in x.faces.items()},
        {k: Matrix.permutation(ring, sz[k[0] + 1], v) for k, v in x.degeneracies.items()},
        {k: Matrix.permutation(ring, sz[k], v) for k, v in x.involutions.items()},
        name=f"{ring}[{x.name}]")


def projection_check(g: FiniteGroup, ring: Ring, max_level: int) -> list[str]:
    src = linearize(gamma_reflexive_set(g, max_level), ring)
    tgt = linearize(bar_reflexive_set(g, max_level), ring)
    maps = {n: Matrix.permutation(ring, tgt.ranks[n], v) for n, v in gamma_to_bar(g, max_level).items()}
    return validate_delta_r_map(src, tgt, maps)


def hr_group(g: FiniteGroup, ring: Ring, n_max: int) -> list[HomologyGroup]:
    """``HR^+(G, k)`` from the linearized bar reflexive set."""
    return hr(linearize(bar_reflexive_set(g, n_max + 1), ring), n_max)


# --------------------------------------------------------------------------
# conjugacy classes


@dataclass(frozen=True)
class ConjugacyDecomposition:
    classes: tuple[tuple[int, ...], ...]
    representatives: tuple[int, ...]
    centralizers: tuple[tuple[int, ...], ...]
    inversion_orbits: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]


def conjugacy_data(g: FiniteGroup) -> ConjugacyDecomposition:
    """Classes in order of their smallest element (the representative)."""
    class_of = [-1] * g.order
    classes = []
    for z in range(g.order):
        if class_of[z] >= 0:
            continue
        cl = sorted({g.conj(z, x) for x in range(g.order)})
        for h in cl:
            class_of[h] = len(classes)
        classes.append(tuple(cl))
    reps = tuple(c[0] for c in classes)
    cents = tuple(tuple(x for x in range(g.order) if g.mul(x, z) == g.mul(z, x)) for z in reps)
    orbits, seen = [], set()
    for c, cl in enumerate(classes):
        if c in seen:
            continue
        c2 = class_of[g.inv(cl[0])]
        orb = tuple(sorted({c, c2}))
        seen.update(orb)
        orbits.append(orb)
    return ConjugacyDecomposition(tuple(classes), reps, cents, tuple(orbits), tuple(class_of))


def _coefficient_elements(g: FiniteGroup, coefficients, data: ConjugacyDecomposition) -> list[int]:
    if coefficients == "conjugation":
        return list(range(g.order))
    if coefficients == "trivial":
        return [g.identity]
    cls = sorted(set(int(c) for c in coefficients))
    if any(not 0 <= c < len(data.classes) for c in cls):
        raise ValueError("unknown conjugacy class index")
    for c in cls:
        if data.class_of[g.inv(data.classes[c][0])] not in cls:
            raise OrbitNotInversionClosed(
                f"class of {g.elements[data.representatives[c]]} requested without the class of its inverse")
    return [h for c in cls for h in data.classes[c]]


def em_reflexive_module(g: FiniteGroup, coefficients, ring: Ring, max_level: int) -> DeltaRModule:
    """Eilenberg–Mac Lane ΔR-module ``C_n(G, N) = N ⊗ k[G^n]``.

    ``coefficients`` is ``"conjugation"`` (``k[G]`` with ``h * g = g^{-1} h g``),
    ``"trivial"``, or an inversion-closed collection of class indices (the sum of
    ``k[G/G_z]``, each coset ``G_z x`` represented by ``x^{-1} z x``).

    ``R_n(h ⊗ [g_1..g_n]) = g^{-1} h^{-1} g ⊗ [g_n^{-1}..g_1^{-1}]`` with
    ``g = g_1 ... g_n``; the sign ``(-1)^{n(n+1)/2}`` is carried by
    ``c2_action``.
    """
    data = conjugacy_data(g)
    coeff = _coefficient_elements(g, coefficients, data)
    e, m, inv = g.identity, g.mul, g.inv
    levels = [[(h,) + t for h in coeff for t in product(range(g.order), repeat=n)] for n in range(max_level + 1)]

    def face(t, i):
        h, gs = t[0], t[1:]
        n = len(gs)
        if i == 0:
            return (g.conj(h, gs[0]),) + gs[1:]
        if i == n:
            return (h,) + gs[:-1]
        return (h,) + gs[:i - 1] + (m(gs[i - 1], gs[i]),) + gs[i + 1:]

    def degen(t, j):
        return t[:j + 1] + (e,) + t[j + 1:]

    def invol(t):
        h, gs = t[0], t[1:]
        return (g.conj(inv(h), g.prod(gs)),) + tuple(inv(x) for x in reversed(gs))

    x = _set_from_tuples(levels, face, degen, invol, "EM")
    label = coefficients if isinstance(coefficients, str) else "classes" + ",".join(map(str, sorted(coefficients)))
    f = linearize(x, ring)
    f.name = f"C(G{g.order}; {label})"
    return f


def mac_lane_isomorphism(g: FiniteGroup, ring: Ring, max_level: int) -> dict[int, Matrix]:
    """``Φ(g_0, ..., g_n) = (g_1 ... g_n g_0) ⊗ [g_1, ..., g_n]`` from the Loday
    module of ``k[G]`` to the conjugation Eilenberg–Mac Lane module."""
    out = {}
    for n in range(max_level + 1):
        imgs = []
        for t in product(range(g.order), repeat=n + 1):
            h = g.mul(g.prod(t[1:]), t[0])
            idx = h
            for x in t[1:]:
                idx = idx * g.order + x
            imgs.append(idx)
        out[n] = Matrix.permutation(ring, g.order ** (n + 1), imgs)
    return out


def _sum(groups_lists: Iterable[list[HomologyGroup]], ring: Ring, n: int) -> list[HomologyGroup]:
    lists = list(groups_lists)
    return [direct_sum([l[k] for l in lists], ring) for k in range(n + 1)]


def decomposition_check(g: FiniteGroup, ring: Ring, n_max: int) -> dict:
    """Compare ``HR^+(k[G])`` with the Eilenberg–Mac Lane computations.

    Returns ``{"checks": [{"name", "ok", ...}], "ok": bool}``.
    """
    L = n_max + 1
    data = conjugacy_data(g)
    checks = []

    def record(name, got, want, **extra):
        checks.append({"name": name, "ok": got == want,
                       "got": [str(h) for h in got], "expected": [str(h) for h in want], **extra})

    loday = loday_module(group_algebra(g, ring), max_level=L)
    em_full = em_reflexive_module(g, "conjugation", ring, L)
    bad = validate_delta_r_map(loday, em_full, mac_lane_isomorphism(g, ring, L))
    checks.append({"name": "Mac Lane map commutes with the structure maps",
                   "ok": not bad, "violations": bad[:5]})
    lhs = hr(loday, n_max)
    record("HR+(k[G]) = HR+ of conjugation coefficients", hr(em_full, n_max), lhs)
    per_orbit = {orb: hr(em_reflexive_module(g, orb, ring, L), n_max) for orb in data.inversion_orbits}
    record("HR+(k[G]) = sum over inversion orbits", _sum(per_orbit.values(), ring, n_max), lhs,
           orbits=[[g.elements[data.representatives[c]] for c in orb] for orb in data.inversion_orbits])
    base = hr_group(g, ring, n_max)
    record("<1>-component = HR+(G, k)", per_orbit[(data.class_of[g.identity],)], base)
    if g.is_abelian:
        record("abelian group: |G| copies of HR+(G, k)", _sum([base] * g.order, ring, n_max), lhs)
        # an element with z != z^{-1} shares its orbit with z^{-1}; the pair
        # contributes ordinary group homology instead of two copies of HR+
        plain = hochschild_homology(linearize(bar_reflexive_set(g, L), ring), n_max)
        pairs = sum(1 for orb in data.inversion_orbits if len(orb) == 2)
        singles = len(data.inversion_orbits) - pairs
        record("abelian group: HR+(G, k) per self-inverse element, H(G, k) per inverse pair",
               _sum([base] * singles + [plain] * pairs, ring, n_max), lhs)
    for z in g.center():
        if g.element_order(z) == 2:
            record(f"central involution {g.elements[z]}: component = HR+(G, k)",
                   per_orbit[(data.class_of[z],)], base)
    return {"group_order": g.order, "ring": str(ring), "n_max": n_max, "checks": checks,
            "ok": all(c["ok"] for c in checks)}
