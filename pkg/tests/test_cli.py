import json
import subprocess
import sys
from pathlib import Path

import pytest

from reflexhom.algebra import gaussian_integers, group_algebra, matrix_algebra, truncated_polynomial
from reflexhom.cli import main
from reflexhom.finitegroup import FiniteGroup
from reflexhom.io import (ParseError, algebra_to_json, parse_algebra, parse_report, parse_ring,
                          parse_reflexive_set, dump_report)
from reflexhom.groups import bar_reflexive_set
from reflexhom.linalg import GF, QQ, ZZ, HomologyGroup

INPUTS = Path(__file__).resolve().parents[1] / "inputs"


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def test_parse_ring():
    assert parse_ring("Z") == ZZ and parse_ring("Q") == QQ
    assert parse_ring({"Fp": 5}) == GF(5) and parse_ring("F7") == GF(7)
    with pytest.raises(ParseError):
        parse_ring({"Fp": 4})
    with pytest.raises(ParseError):
        parse_ring("R")


def test_algebra_round_trip():
    for a in (truncated_polynomial(QQ, 3, -1), gaussian_integers(ZZ), group_algebra(FiniteGroup.cyclic(3), GF(5)),
              matrix_algebra(gaussian_integers(ZZ), 2)):
        doc = json.loads(json.dumps(algebra_to_json(a)))
        b = parse_algebra(doc)
        assert b.ring == a.ring and b.mul == a.mul and b.sigma == a.sigma and b.unit == a.unit


def test_floats_rejected():
    doc = algebra_to_json(gaussian_integers(QQ))
    doc["involution"][1][1] = -1.0
    with pytest.raises(ParseError):
        parse_algebra(doc)


def test_reflexive_set_round_trip():
    x = bar_reflexive_set(FiniteGroup.cyclic(3), 3)
    y = parse_reflexive_set(json.loads(json.dumps(x.to_dict())))
    assert y.sizes == x.sizes and y.faces == x.faces and y.involutions == x.involutions


def test_compute_ground_ring_table(capsys):
    code, out = run(capsys, "compute", "--ring", "Z", "--max-degree", "4")
    assert code == 0
    rows = [line.split(None, 1)[1] for line in out.splitlines()[1:]]
    assert rows == ["Z", "Z/2", "0", "Z/2", "0"]


def test_compute_machine_round_trip(capsys):
    code, out = run(capsys, "compute", "--input", str(INPUTS / "dual_numbers.json"), "--sign", "minus",
                    "--max-degree", "2", "--format", "machine", "--cross-check")
    assert code == 0
    rep = parse_report(out)
    assert rep["groups"]["records"][0] == HomologyGroup(ZZ, 0, (2, 2))
    assert all(c["ok"] for c in rep["checks"])
    # serialising the parsed report again gives the same bytes
    del rep["groups"]
    assert dump_report(rep) == out


def test_machine_output_is_deterministic(capsys):
    argv = ["group", "--input", str(INPUTS / "s3.json"), "--ring", "F2", "--max-degree", "1", "--decompose",
            "--format", "machine"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second
    proc = subprocess.run([sys.executable, "-m", "reflexhom", *argv], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == first[1]


def test_validate_perturbed_algebra(capsys):
    code, out = run(capsys, "validate", "--input", str(INPUTS / "broken_algebra.json"))
    assert code == 1
    assert "involution does not square to the identity" in out


def test_validate_bad_group(tmp_path, capsys):
    p = write(tmp_path, "g.json", {"elements": ["e", "a"], "table": [[0, 1], [1, 1]]})
    code, out = run(capsys, "validate", "--input", p)
    assert code == 1 and "inverses" in out


def test_group_c2_decomposition(capsys):
    code, out = run(capsys, "group", "--ring", "F2", "--decompose", "--max-degree", "3")
    assert code == 0
    assert "decomposition verified" in out


def test_group_c3_reports_failed_shortcut(tmp_path, capsys):
    p = write(tmp_path, "c3.json", {"cyclic": 3})
    code, out = run(capsys, "group", "--input", p, "--ring", "Q", "--decompose", "--max-degree", "2")
    assert code == 1
    assert "decomposition FAILED" in out and "[FAIL] abelian group: |G| copies" in out


def test_parse_failures(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["compute", "--input", str(bad)]) == 2
    assert main(["compute", "--input", str(tmp_path / "missing.json")]) == 2
    p = write(tmp_path, "a.json", {"dim": 1})
    assert main(["compute", "--input", p]) == 2
    assert main(["compute", "--ring", "Z", "--method", "quotient"]) == 2
    assert main(["compute", "--ring", "nope"]) == 2
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2


def test_tensor_and_morita_and_hyper(capsys):
    assert run(capsys, "tensor", "--input", str(INPUTS / "tensor_swap.json"), "--max-weight", "2",
               "--max-degree", "2", "--cross-check")[0] == 0
    code, out = run(capsys, "morita", "--ring", "Z", "--max-degree", "2")
    assert code == 0 and "[FAIL]" not in out
    code, out = run(capsys, "hyper", "--input", str(INPUTS / "gaussian_q_split.json"), "--cross-check")
    assert code == 0 and "[ok] hyperhomology" in out


def test_compute_both_methods(capsys):
    code, out = run(capsys, "compute", "--ring", "Q", "--method", "both", "--cross-check")
    assert code == 0 and "[ok] bicomplex = quotient complex" in out


def test_compute_reflexive_set_and_bimodule(capsys):
    code, out = run(capsys, "compute", "--input", str(INPUTS / "bar_c2.json"), "--ring", "F2")
    assert code == 0 and out.splitlines()[1].split()[-1] == "F_2"
    code, _ = run(capsys, "compute", "--input", str(INPUTS / "ground_with_swap_bimodule.json"))
    assert code == 0


def test_suite_command(capsys):
    code, out = run(capsys, "suite")
    lines = out.strip().splitlines()
    assert len(lines) == 10 and all(line.startswith(("[PASS]", "[FAIL]")) for line in lines)
    # only the |G|-copies shortcut for C3 is expected to fail
    assert [line[:12] for line in lines if line.startswith("[FAIL]")] == ["[FAIL]  8. g"]
    assert code == 1
