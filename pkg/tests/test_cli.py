import json
import subprocess
import sys
from pathlib import Path

import pytest

from golden_data import EX65_DET
from recipchow.cli import main
from recipchow.poly import MultiPoly

DATA = Path(__file__).resolve().parents[1] / "data"


def run(capsys, *argv):
    status = main([str(a) for a in argv])
    out = capsys.readouterr()
    return status, out.out, out.err


def test_pluecker(capsys):
    status, out, _ = run(capsys, "pluecker", "--input", DATA / "gr24.json")
    doc = json.loads(out)
    assert status == 0 and doc["three_term_relations"]
    assert doc["pluecker"]["coords"]["12"] == "1"


def test_matroid_example(capsys):
    status, out, _ = run(capsys, "matroid", "--input", DATA / "n5_circuits.json")
    doc = json.loads(out)
    assert status == 0
    assert doc["bcc_facets"] == ["145", "235", "245", "345"]
    assert sorted(doc["circuits"]) == ["124", "135", "2345"]
    assert doc["degree"] == doc["hb_dimension"] == 4


def test_chow_beta_example(capsys):
    status, out, _ = run(capsys, "chow", "--input", DATA / "n5_circuits.json", "--vars", "beta")
    doc = json.loads(out)
    assert status == 0 and doc["k"] == 4 and len(doc["matrix"]) == 4
    p = MultiPoly.from_json(doc["chow_form"])
    assert p.total_degree() == 4 and all(v.startswith("b_") for v in p.vars)


def test_entropic_example(capsys):
    status, out, _ = run(capsys, "entropic", "--input", DATA / "example65.json")
    doc = json.loads(out)
    assert status == 0
    assert MultiPoly.from_json(doc["det_normalized"]) == MultiPoly(["y1", "y2"], EX65_DET)
    assert doc["sos"]["mode"] == "exact"
    assert doc["basis"] == ["1", "y3", "y4"]


@pytest.mark.parametrize("argv", [
    ["expand", "--n", "4", "--d", "2"],
    ["bichow", "--n", "4", "--d", "2"],
    ["hadamard", "--n", "4", "--d", "2"],
    ["chow", "--input", str(DATA / "gr24.json")],
    ["hadamard", "--input", str(DATA / "gr24.json"), "--input2", str(DATA / "gr24_dual.json")],
])
def test_polynomials_round_trip(capsys, argv):
    status, out, _ = run(capsys, *argv)
    assert status == 0
    doc = json.loads(out)

    def polys(x):
        if isinstance(x, dict) and set(x) == {"vars", "terms"}:
            yield x
        elif isinstance(x, dict):
            for v in x.values():
                yield from polys(v)
        elif isinstance(x, list):
            for v in x:
                yield from polys(v)

    found = list(polys(doc))
    assert found
    for obj in found:
        assert MultiPoly.from_json(obj).to_json() == obj


def test_expand_counts(capsys):
    _, out, _ = run(capsys, "expand", "--n", "6", "--d", "3")
    doc = json.loads(out)
    assert doc["forests"] == 46620
    assert doc["coefficient_counts"] == {"1": 46608, "4": 12}
    assert doc["coefficient_sum"] == 6 ** 6


def test_bichow_pair(capsys):
    status, out, _ = run(capsys, "bichow", "--input", DATA / "gr24.json",
                         "--input2", DATA / "gr24_dual.json")
    doc = json.loads(out)
    assert status == 0 and "value" in doc and "swapped" in doc


def test_resultant(capsys):
    status, out, _ = run(capsys, "resultant", "--input", DATA / "forms_a.json",
                         "--input2", DATA / "forms_c.json")
    doc = json.loads(out)
    assert status == 0
    assert (doc["tree_sum"] == "0") == (doc["sylvester"] == "0")


def test_text_format(capsys):
    status, out, _ = run(capsys, "matroid", "--input", DATA / "n5_circuits.json", "--format", "text")
    assert status == 0
    assert any(line.startswith("degree") and line.split()[-1] == "4" for line in out.splitlines())


def test_verify_is_byte_identical(capsys):
    first = run(capsys, "verify", "--suite", "entropic", "--seed", "7")
    second = run(capsys, "verify", "--suite", "entropic", "--seed", "7")
    assert first[0] == 0 and first == second
    assert json.loads(first[1])["passed"]


def test_malformed_json_reports_location(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"rows": 2,\n "cols": 3 "entries": []}')
    status, _, err = run(capsys, "pluecker", "--input", bad)
    assert status == 1
    assert f"{bad}:2:" in err


@pytest.mark.parametrize("doc, fragment", [
    ({"rows": 2, "cols": 3, "entries": [["1", "0", "1"]]}, "expected 2 rows"),
    ({"rows": 1, "cols": 3, "entries": [["1", "0.5", "1"]]}, "[0][1]"),
    ({"rows": 2, "cols": 2, "entries": [["1", "2"], ["2", "4"]]}, "full row rank"),
    ({"rows": 1, "cols": 2}, "entries"),
])
def test_bad_inputs_exit_one(tmp_path, capsys, doc, fragment):
    path = tmp_path / "in.json"
    path.write_text(json.dumps(doc))
    status, _, err = run(capsys, "pluecker", "--input", path)
    assert status == 1
    assert fragment in err


def test_missing_file_and_usage_errors(capsys):
    assert run(capsys, "pluecker", "--input", "/nonexistent.json")[0] == 1
    assert run(capsys, "pluecker")[0] == 1
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 1
    assert run(capsys, "verify", "--suite", "nonsense")[0] == 1


def test_entropic_rejects_non_uniform(capsys):
    status, _, err = run(capsys, "entropic", "--input", DATA / "n5_circuits.json")
    assert status == 1 and "precondition" in err


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "recipchow.cli", "pluecker", "--input",
                           str(DATA / "forms_a.json")], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["command"] == "pluecker"


def test_internal_inconsistency_exits_two(monkeypatch, capsys):
    from recipchow import cli
    from recipchow.errors import InternalInconsistencyError

    def broken(spec):
        raise InternalInconsistencyError("forest coefficient mismatch")

    monkeypatch.setitem(cli.HANDLERS, "expand", broken)
    status, _, err = run(capsys, "expand", "--n", "4", "--d", "2")
    assert status == 2 and "internal" in err
