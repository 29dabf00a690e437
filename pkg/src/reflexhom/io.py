"""JSON input documents and machine reports.

Scalars are integers or ``[numerator, denominator]`` pairs; floats are
rejected.  Matrices are lists of rows, and column ``j`` is the image of basis
vector ``j``.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .algebra import InvolutiveAlgebra, InvolutiveBimodule
from .finitegroup import FiniteGroup
from .groups import FiniteReflexiveSet
from .linalg import GF, QQ, ZZ, HomologyGroup, Matrix, Ring


class ParseError(ValueError):
    """Malformed input document."""


def parse_ring(desc) -> Ring:
    if desc in ("Z", "ZZ", "integers"):
        return ZZ
    if desc in ("Q", "QQ", "rationals"):
        return QQ
    if isinstance(desc, dict) and set(desc) == {"Fp"}:
        try:
            return GF(int(desc["Fp"]))
        except (TypeError, ValueError) as e:
            raise ParseError(f"bad prime field {desc!r}: {e}") from None
    if isinstance(desc, str) and desc.upper().startswith("F") and desc[1:].lstrip("_p").isdigit():
        return GF(int(desc[1:].lstrip("_p")))
    raise ParseError(f"unknown ring {desc!r}")


def ring_to_json(ring: Ring):
    if ring.kind == "integers":
        return "Z"
    if ring.kind == "rationals":
        return "Q"
    return {"Fp": ring.characteristic}


def _scalar(x):
    if isinstance(x, bool) or isinstance(x, float):
        raise ParseError(f"scalar {x!r} must be an integer or a [num, den] pair")
    if isinstance(x, int):
        return x
    if isinstance(x, list) and len(x) == 2 and all(isinstance(v, int) and not isinstance(v, bool) for v in x):
        if x[1] == 0:
            raise ParseError("zero denominator")
        return Fraction(x[0], x[1])
    raise ParseError(f"bad scalar {x!r}")


def scalar_to_json(x):
    if isinstance(x, Fraction) and x.denominator != 1:
        return [x.numerator, x.denominator]
    return int(x)


def parse_matrix(ring: Ring, rows, nrows: int | None = None, ncols: int | None = None) -> Matrix:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise ParseError("matrix must be a list of rows")
    if nrows is not None and len(rows) != nrows:
        raise ParseError(f"matrix has {len(rows)} rows, expected {nrows}")
    width = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    entries = {}
    for i, r in enumerate(rows):
        if len(r) != width:
            raise ParseError("ragged matrix")
        for j, v in enumerate(r):
            v = _scalar(v)
            if v:
                entries[i, j] = v
    try:
        return Matrix(ring, len(rows), width, entries)
    except ValueError as e:
        raise ParseError(str(e)) from None


def matrix_to_json(m: Matrix):
    return [[scalar_to_json(v) for v in row] for row in m.to_dense()]


def _vector(ring, data, dim):
    if not isinstance(data, list) or len(data) != dim:
        raise ParseError(f"vector must have {dim} entries")
    return {i: ring(_scalar(v)) for i, v in enumerate(data) if _scalar(v)}


def _need(doc, *keys):
    for k in keys:
        if k not in doc:
            raise ParseError(f"missing field {k!r}")


def parse_algebra(doc: dict, ring: Ring | None = None) -> InvolutiveAlgebra:
    _need(doc, "dim", "unit", "mul", "involution")
    ring = ring or parse_ring(doc.get("ring", "Z"))
    dim = doc["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise ParseError("dim must be a positive integer")
    mul = doc["mul"]
    if not isinstance(mul, list) or len(mul) != dim or any(not isinstance(r, list) or len(r) != dim for r in mul):
        raise ParseError("mul must be a dim x dim array of triple lists")
    table = []
    for row in mul:
        trow = []
        for cell in row:
            vec = {}
            for trip in cell:
                if not (isinstance(trip, list) and len(trip) == 3):
                    raise ParseError(f"bad structure constant {trip!r}")
                k, num, den = trip
                if not isinstance(k, int) or not 0 <= k < dim:
                    raise ParseError(f"basis index {k!r} out of range")
                vec[k] = vec.get(k, 0) + _scalar([num, den])
            trow.append(vec)
        table.append(trow)
    try:
        unit = _vector(ring, doc["unit"], dim)
        sigma = parse_matrix(ring, doc["involution"], dim, dim)
        labels = doc.get("basis") or [f"a{i}" for i in range(dim)]
        if len(labels) != dim:
            raise ParseError("basis labels do not match dim")
        return InvolutiveAlgebra(ring, table, unit, sigma, labels, name=doc.get("name", "A"))
    except (ValueError, ZeroDivisionError) as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(str(e)) from None


def parse_bimodule(doc: dict, a: InvolutiveAlgebra) -> InvolutiveBimodule:
    _need(doc, "dim", "left", "right", "involution")
    dim = doc["dim"]
    if not isinstance(dim, int) or dim < 0:
        raise ParseError("bimodule dim must be a nonnegative integer")
    if len(doc["left"]) != a.rank or len(doc["right"]) != a.rank:
        raise ParseError("one action matrix per algebra basis element is required")
    left = [parse_matrix(a.ring, m, dim, dim) for m in doc["left"]]
    right = [parse_matrix(a.ring, m, dim, dim) for m in doc["right"]]
    tau = parse_matrix(a.ring, doc["involution"], dim, dim)
    return InvolutiveBimodule(a, dim, left, right, tau, doc.get("basis"))


def algebra_to_json(a: InvolutiveAlgebra) -> dict:
    return {
        "ring": ring_to_json(a.ring),
        "dim": a.rank,
        "basis": list(a.labels),
        "unit": [scalar_to_json(a.unit.get(i, 0)) for i in range(a.rank)],
        "mul": [[[[k, *_pair(c)] for k, c in sorted(cell.items())] for cell in row] for row in a.mul],
        "involution": matrix_to_json(a.sigma),
    }


def _pair(c):
    c = Fraction(c)
    return [c.numerator, c.denominator]


def bimodule_to_json(m: InvolutiveBimodule) -> dict:
    return {"dim": m.rank, "left": [matrix_to_json(x) for x in m.left],
            "right": [matrix_to_json(x) for x in m.right], "involution": matrix_to_json(m.tau)}


def parse_group(doc: dict) -> FiniteGroup:
    if "cyclic" in doc:
        return FiniteGroup.cyclic(int(doc["cyclic"]))
    if "symmetric" in doc:
        return FiniteGroup.symmetric(int(doc["symmetric"]))
    _need(doc, "elements", "table")
    t = doc["table"]
    if not isinstance(t, list) or any(not isinstance(r, list) for r in t):
        raise ParseError("group table must be a list of rows")
    if any(not isinstance(x, int) or isinstance(x, bool) for r in t for x in r):
        raise ParseError("group table entries must be element indices")
    return FiniteGroup(doc["elements"], t)


def parse_reflexive_set(doc: dict) -> FiniteReflexiveSet:
    _need(doc, "levels", "faces", "involutions")
    levels = doc["levels"]
    labels = [list(range(l)) if isinstance(l, int) else list(l) for l in levels]

    def keyed(d, arity):
        out = {}
        for k, v in d.items():
            parts = tuple(int(x) for x in str(k).split(","))
            if len(parts) != arity:
                raise ParseError(f"bad map key {k!r}")
            out[parts if arity > 1 else parts[0]] = [int(x) for x in v]
        return out

    return FiniteReflexiveSet(labels, keyed(doc["faces"], 2), keyed(doc.get("degeneracies", {}), 2),
                              keyed(doc["involutions"], 1), name=doc.get("name", "X"))


def load_document(path: str) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise ParseError(f"{path} is not valid JSON: {e}") from None
    if not isinstance(doc, dict):
        raise ParseError("top-level document must be an object")
    return doc


def document_kind(doc: dict) -> str:
    if "levels" in doc:
        return "reflexive_set"
    if "table" in doc or "cyclic" in doc or "symmetric" in doc:
        return "group"
    if "mul" in doc:
        return "algebra"
    if "v_rank" in doc:
        return "tensor"
    raise ParseError("cannot tell what the document describes")


# --------------------------------------------------------------------------
# reports


def homology_records(groups, start: int = 0) -> list[dict]:
    return [{"n": start + i, "free_rank": g.free_rank, "torsion": list(g.torsion)} for i, g in enumerate(groups)]


def dump_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def parse_report(text: str) -> dict:
    """Inverse of :func:`dump_report`; homology records come back as
    ``HomologyGroup`` values under ``"groups"``."""
    data = json.loads(text)
    ring = parse_ring(data["ring"]) if "ring" in data else ZZ
    for key in ("records", "plus", "minus"):
        if key in data:
            data.setdefault("groups", {})[key] = [HomologyGroup.from_dict(ring, r) for r in data[key]]
    return data
