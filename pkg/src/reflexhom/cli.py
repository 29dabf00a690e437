"""``reflexhom`` command line.

Exit status: 0 on success, 1 when a validator or a cross-check fails, 2 when
the input cannot be parsed or the job is malformed.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import acceptance
from .algebra import (ground_ring, group_algebra, loday_module, regular_bimodule, trace_check, validate_algebra,
                      validate_bimodule)
from .delta_r import ReflexiveChainComplex
from .engine import hochschild_homology, hr, hr_quotient_method, hyper_hr
from .errors import NotAGroup, ReflexHomError
from .groups import decomposition_check, hr_group, linearize, validate_reflexive_set
from .io import (ParseError, document_kind, dump_report, homology_records, load_document,
                 parse_algebra, parse_bimodule, parse_group, parse_matrix, parse_reflexive_set, parse_ring,
                 ring_to_json)
from .linalg import ZZ, HomologyGroup, Matrix
from .morita import morita_homology_check, row_column_morita_data, validate_morita_data
from .oracles import (degree_zero_closed_form, hr_ground_ring_closed_form, hr_tensor_algebra_closed_form,
                      tensor_algebra_direct)


class JobError(Exception):
    """Malformed job: reported with exit status 2."""


def _ring_arg(text):
    if text is None:
        return None
    try:
        if text.startswith("{"):
            return parse_ring(json.loads(text))
        return parse_ring(text)
    except (ParseError, ValueError, json.JSONDecodeError) as e:
        raise JobError(f"bad --ring {text!r}: {e}") from None


def _sign(args) -> int:
    return 1 if args.sign == "plus" else -1


class Report:
    """Collects records and checks; renders as a table or as JSON."""

    def __init__(self, command: str, ring, **meta):
        self.data = {"command": command, "ring": ring_to_json(ring), **meta}
        self.ring = ring
        self.checks: list[dict] = []
        self.lines: list[str] = []

    def records(self, key, groups, title=None):
        self.data[key] = homology_records(groups)
        if title:
            self.lines.append(title)
        self.lines.extend(f"  {n:>2}  {g}" for n, g in enumerate(groups))

    def check(self, name, ok, detail=""):
        entry = {"name": name, "ok": bool(ok)}
        if detail:
            entry["detail"] = detail
        self.checks.append(entry)

    @property
    def ok(self) -> bool:
        return all(c["ok"] for c in self.checks)

    def emit(self, fmt: str, out=None):
        out = out or sys.stdout
        if fmt == "machine":
            self.data["checks"] = self.checks
            out.write(dump_report(self.data))
            return
        out.write("\n".join(self.lines) + "\n")
        if self.checks:
            out.write("checks:\n")
            for c in self.checks:
                out.write(f"  [{'ok' if c['ok'] else 'FAIL'}] {c['name']}" +
                          (f" ({c['detail']})" if c.get("detail") else "") + "\n")


def _fmt(groups):
    return ", ".join(str(g) for g in groups)


def _load_algebra(args):
    """Algebra (and optional bimodule) from ``--input``; ground ring otherwise."""
    ring = _ring_arg(args.ring)
    if not args.input:
        a = ground_ring(ring or ZZ)
        return a, None, {}
    doc = load_document(args.input)
    if document_kind(doc) != "algebra":
        raise ParseError("expected an algebra document")
    a = parse_algebra(doc)
    if ring is not None and ring != a.ring:
        try:
            a = a.change_ring(ring)
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f"cannot read the algebra over {ring}: {e}") from None
    m = parse_bimodule(doc["bimodule"], a) if "bimodule" in doc else None
    return a, m, doc


def _algebra_violations(a, m):
    bad = validate_algebra(a)
    if m is not None:
        bad += [f"bimodule: {v}" for v in validate_bimodule(m)]
    return bad


def _fail_validation(report, violations, fmt):
    for v in violations:
        report.check(f"violated: {v}", False)
    report.emit(fmt)
    return 1


# --------------------------------------------------------------------------


def cmd_compute(args) -> int:
    n_max, sign = args.max_degree, _sign(args)
    ring = _ring_arg(args.ring)
    if args.input and document_kind(load_document(args.input)) == "reflexive_set":
        x = parse_reflexive_set(load_document(args.input))
        ring = ring or ZZ
        rep = Report("compute", ring, object=x.name, sign=args.sign, method="bicomplex")
        bad = validate_reflexive_set(x)
        if bad:
            return _fail_validation(rep, bad, args.format)
        if x.max_level < n_max + 1:
            raise JobError(f"the reflexive set needs levels up to {n_max + 1}")
        f = linearize(x, ring)
        if sign == -1:
            f = f.negated()
        rep.records("records", hr(f, n_max), f"HR{'+' if sign == 1 else '-'}_n({x.name}; {ring})")
        rep.emit(args.format)
        return 0

    a, m, _ = _load_algebra(args)
    if args.method in ("quotient", "both") and not a.ring.two_invertible:
        raise JobError(f"the quotient method needs a field with 1/2; ring is {a.ring}")
    rep = Report("compute", a.ring, object=a.name, sign=args.sign, method=args.method)
    bad = _algebra_violations(a, m)
    if bad:
        return _fail_validation(rep, bad, args.format)
    label = f"HR{'+' if sign == 1 else '-'}_n({a.name}{'' if m is None else ', M'})"
    groups = None
    if args.method in ("bicomplex", "both"):
        groups = hr(loday_module(a, m, sign, n_max + 1), n_max)
        rep.records("records", groups, f"{label}, bicomplex")
    if args.method in ("quotient", "both"):
        quo = hr_quotient_method(a, m, sign, n_max, a.ring)
        rep.records("quotient_records" if groups is not None else "records", quo, f"{label}, quotient complex")
        if groups is not None:
            rep.check("bicomplex = quotient complex", groups == quo)
        groups = quo if groups is None else groups
    if args.cross_check:
        if m is None and a.rank == 1 and a.mul[0][0] == {0: 1} and a.sigma == Matrix.identity(a.ring, 1):
            want = hr_ground_ring_closed_form(a.ring, sign, n_max)
            rep.check("ground ring closed form", want == groups, _fmt(want))
        if m is None:
            want = degree_zero_closed_form(a, sign)
            rep.check("degree zero: coinvariants of A/[A, A]", want == groups[0], str(want))
        if a.ring.two_invertible and m is None and args.method != "quotient":
            other = hr(loday_module(a, None, -sign, n_max + 1), n_max)
            hh = hochschild_homology(loday_module(a, None, 1, n_max + 1), n_max)
            rep.check("dim HR+ + dim HR- = dim HH",
                      all(x.free_rank + y.free_rank == h.free_rank for x, y, h in zip(groups, other, hh)))
    rep.emit(args.format)
    return 0 if rep.ok else 1


def cmd_validate(args) -> int:
    if not args.input:
        raise JobError("validate needs --input")
    doc = load_document(args.input)
    kind = document_kind(doc)
    ring = ZZ
    try:
        if kind == "algebra":
            a, m, _ = _load_algebra(args)
            ring, bad = a.ring, _algebra_violations(a, m)
        elif kind == "group":
            parse_group(doc)
            bad = []
        elif kind == "reflexive_set":
            bad = validate_reflexive_set(parse_reflexive_set(doc))
        else:
            raise ParseError(f"nothing to validate in a {kind} document")
    except NotAGroup as e:
        bad = [str(e)]
    rep = Report("validate", ring, kind=kind)
    if bad:
        return _fail_validation(rep, bad, args.format)
    rep.check(f"{kind} axioms", True)
    rep.lines.append(f"valid {kind}")
    rep.emit(args.format)
    return 0


def cmd_group(args) -> int:
    ring = _ring_arg(args.ring) or ZZ
    doc = load_document(args.input) if args.input else {"cyclic": 2}
    if document_kind(doc) != "group":
        raise ParseError("expected a group document")
    try:
        g = parse_group(doc)
    except NotAGroup as e:
        rep = Report("group", ring)
        return _fail_validation(rep, [str(e)], args.format)
    n_max = args.max_degree
    rep = Report("group", ring, order=g.order, elements=list(g.elements))
    rep.records("records", hr(loday_module(group_algebra(g, ring), None, 1, n_max + 1), n_max),
                f"HR+_n({ring}[G]), |G| = {g.order}")
    rep.records("group_records", hr_group(g, ring, n_max), f"HR+_n(G, {ring})")
    if args.decompose:
        dec = decomposition_check(g, ring, n_max)
        for c in dec["checks"]:
            detail = "" if c["ok"] else f"got {c.get('got')}, expected {c.get('expected')}"
            rep.check(c["name"], c["ok"], detail)
        rep.data["decomposition"] = "verified" if dec["ok"] else "failed"
        rep.lines.append("decomposition verified" if dec["ok"] else "decomposition FAILED")
    rep.emit(args.format)
    return 0 if rep.ok else 1


def cmd_tensor(args) -> int:
    ring = _ring_arg(args.ring)
    doc = load_document(args.input) if args.input else {"v_rank": 1}
    if "v_rank" not in doc:
        raise ParseError("expected a tensor document with v_rank")
    ring = ring or parse_ring(doc.get("ring", "Z"))
    v = doc["v_rank"]
    if not isinstance(v, int) or v < 1:
        raise ParseError("v_rank must be a positive integer")
    inv = parse_matrix(ring, doc["involution"], v, v) if "involution" in doc else None
    if inv is not None and inv @ inv != Matrix.identity(ring, v):
        return _fail_validation(Report("tensor", ring), ["involution on V does not square to the identity"],
                                args.format)
    n_max, w_max = args.max_degree, args.max_weight
    table = hr_tensor_algebra_closed_form(v, inv, ring, n_max, w_max)
    rep = Report("tensor", ring, v_rank=v, max_weight=w_max)
    rep.data["records"] = [{"n": n, "weight": q, "free_rank": table[n, q].free_rank,
                            "torsion": list(table[n, q].torsion)} for q in range(w_max + 1) for n in range(n_max + 1)]
    rep.lines.append(f"HR+_n(T(V))_q, rank V = {v}, closed form")
    rep.lines.append("  weight  " + "  ".join(f"n={n}" for n in range(n_max + 1)))
    for q in range(w_max + 1):
        rep.lines.append(f"  {q:>6}  " + "  ".join(str(table[n, q]) for n in range(n_max + 1)))
    if args.cross_check:
        direct = tensor_algebra_direct(v, inv, ring, n_max, w_max)
        bad = sorted(k for k in direct if direct[k] != table[k])
        rep.check("closed form = weight-graded direct computation", not bad,
                  f"mismatched (n, q): {bad}" if bad else "")
    rep.emit(args.format)
    return 0 if rep.ok else 1


def cmd_morita(args) -> int:
    a, m, _ = _load_algebra(args)
    size, n_max, sign = args.matrix_size, args.max_degree, _sign(args)
    if size < 1:
        raise JobError("--matrix-size must be positive")
    rep = Report("morita", a.ring, object=a.name, matrix_size=size, sign=args.sign)
    bad = _algebra_violations(a, m)
    if bad:
        return _fail_validation(rep, bad, args.format)
    base = hr(loday_module(a, m, sign, n_max + 1), n_max)
    rep.records("records", base, f"HR{'+' if sign == 1 else '-'}_n({a.name})")
    data = row_column_morita_data(a, size)
    bad = validate_morita_data(data)
    rep.check("row/column hermitian Morita data", not bad, "; ".join(bad[:3]))
    # with M = A the induced bimodule is M_m(A) itself
    chk = morita_homology_check(data, m if m is not None else regular_bimodule(a), n_max, sign)
    rep.records("matrix_records", chk["groups"][1], f"HR_n(M_{size}({a.name}), Q (x) M (x) P)")
    rep.check(f"HR(A, M) = HR(M_{size}(A), Q (x) M (x) P)", chk["ok"])
    rep.check("induced bimodule axioms", not chk["induced_violations"])
    tbad = trace_check(a, size, min(n_max + 1, 3), sign)
    rep.check("trace map commutes with the structure maps", not tbad, "; ".join(tbad[:3]))
    rep.emit(args.format)
    return 0 if rep.ok else 1


def cmd_hyper(args) -> int:
    a, m, doc = _load_algebra(args)
    opts = doc.get("hyper", {}) if doc else {}
    terms = opts.get("terms", 1)
    kind = opts.get("differential", "zero")
    if terms not in (1, 2) or kind not in ("zero", "identity"):
        raise ParseError("hyper: terms must be 1 or 2, differential 'zero' or 'identity'")
    n_max, sign = args.max_degree, _sign(args)
    rep = Report("hyper", a.ring, object=a.name, sign=args.sign, terms=terms, differential=kind)
    bad = _algebra_violations(a, m)
    if bad:
        return _fail_validation(rep, bad, args.format)
    f = loday_module(a, m, sign, n_max + 1)
    if terms == 1:
        fc = ReflexiveChainComplex.concentrated(f)
    else:
        diffs = {(1, n): Matrix.identity(a.ring, f.ranks[n]) for n in range(f.max_level + 1)} if kind == "identity" else {}
        fc = ReflexiveChainComplex([f, f], diffs)
    got = hyper_hr(fc, n_max)
    rep.records("records", got, f"hyper-HR_n, {terms} term(s), {kind} differential")
    if args.cross_check:
        direct = hr(f, n_max)
        if terms == 1:
            want = direct
        elif kind == "zero":
            want = [direct[0]] + [direct[n] + direct[n - 1] for n in range(1, n_max + 1)]
        else:
            want = [HomologyGroup.zero(a.ring)] * (n_max + 1)
        rep.check("hyperhomology against the direct computation", got == want, _fmt(want))
    rep.emit(args.format)
    return 0 if rep.ok else 1


def cmd_suite(args) -> int:
    lines = []
    results = acceptance.run_all(echo=lines.append if args.format == "table" else None)
    if args.format == "machine":
        sys.stdout.write(dump_report({"command": "suite", "criteria": [c.to_dict() for c in results]}))
    else:
        sys.stdout.write("\n".join(lines) + "\n")
    return 0 if all(c.ok for c in results) else 1


COMMANDS = {"compute": cmd_compute, "validate": cmd_validate, "group": cmd_group, "tensor": cmd_tensor,
            "morita": cmd_morita, "hyper": cmd_hyper, "suite": cmd_suite}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="reflexhom", description="Reflexive homology of involutive algebras.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--input", help="JSON input document")
    p.add_argument("--ring", help='Z, Q, F<p> or {"Fp": p}')
    p.add_argument("--sign", choices=("plus", "minus"), default="plus")
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--max-weight", type=int, default=3)
    p.add_argument("--matrix-size", type=int, default=2)
    p.add_argument("--method", choices=("bicomplex", "quotient", "both"), default="bicomplex")
    p.add_argument("--format", choices=("table", "machine"), default="table")
    p.add_argument("--decompose", action="store_true", help="group: check the conjugacy-class decomposition")
    p.add_argument("--cross-check", action="store_true", help="compare against closed forms")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if min(args.max_degree, args.max_weight) < 0:
        print("error: bounds must be nonnegative", file=sys.stderr)
        return 2
    try:
        return COMMANDS[args.command](args)
    except (ParseError, JobError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ReflexHomError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
