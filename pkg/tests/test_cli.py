import json
import subprocess
import sys
from pathlib import Path

import pytest

from qdeform.cli import ParseError, main, read_graph_text

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_charpoly_delta53(capsys):
    code, out, _ = run(capsys, "charpoly", "--complex", DATA / "delta53.json", "--q", 2)
    assert code == 0
    assert out.strip() == "(t-1)(t-2)(t-4)(t-8)(t-10)"


def test_charpoly_sgq_k2(capsys):
    code, out, _ = run(capsys, "charpoly", "--graph", DATA / "k2.edges", "--sgq", "--q", 3)
    assert (code, out.strip()) == (0, "(t-1)(t-3)")


def test_charpoly_empty_monomial_auto_field(capsys):
    code, out, _ = run(capsys, "charpoly", "--graph", DATA / "empty5.edges", "--monomial-r", 2)
    assert (code, out.strip()) == (0, "(t-1)^5")
    code, out, _ = run(capsys, "charpoly", "--graph", DATA / "empty5.edges", "--r", 2, "--field", "auto")
    assert out.strip() == "(t-1)^5"


def test_charpoly_p_e_and_q_agree(capsys):
    _, a, _ = run(capsys, "charpoly", "--graph", "K3", "--qdef", "--q", 4)
    _, b, _ = run(capsys, "charpoly", "--graph", "K3", "--qdef", "--p", 2, "--e", 2)
    assert a == b == "(t-1)(t-4)(t-16)\n"


def test_charpoly_oracle_and_json(capsys):
    code, out, _ = run(capsys, "charpoly", "--graph", DATA / "k3.edges", "--qdef", "--q", 2, "--oracle", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == 1
    assert data["charpoly"]["integer_roots"] == [1, 2, 4]
    assert all(data["oracle"].values()) and len(data["oracle"]) == 3


def test_charpoly_residual_reported(capsys):
    code, out, _ = run(capsys, "charpoly", "--complex", "delta5,3", "--q", 4, "--json")
    data = json.loads(out)
    assert data["charpoly"]["integer_roots"] == [1, 4, 16]
    assert data["charpoly"]["residual"] == [2722, -104, 1]


def test_charpoly_arrangement_file(capsys, tmp_path):
    f = tmp_path / "a.json"
    f.write_text(json.dumps({"p": 3, "e": 1, "dim": 2, "normals": [[[1], [0]], [[0], [1]], [[1], [1]], [[1], [2]]]}))
    code, out, _ = run(capsys, "charpoly", "--arrangement", f)
    assert (code, out.strip()) == (0, "(t-1)(t-3)")


def test_freeness_examples(capsys):
    code, out, _ = run(capsys, "freeness", "--graph", DATA / "k3.edges", "--monomial-r", 2)
    assert code == 0 and "exponents: (1, 3, 5)" in out and "terao factorization: PASS" in out
    code, out, _ = run(capsys, "freeness", "--graph", DATA / "c4.edges", "--graphic")
    assert code == 4 and out.startswith("not chordal")
    code, out, _ = run(capsys, "freeness", "--graph", DATA / "k2.edges", "--qdef", "--q", 2)
    assert code == 0 and "exponents: (1, 2)" in out


def test_freeness_json(capsys):
    code, out, _ = run(capsys, "freeness", "--graph", "K4", "--graphic", "--json")
    data = json.loads(out)
    assert code == 0 and data["exponents"] == [0, 1, 2, 3] and data["saito"] and data["terao"]


def test_freeness_sgq(capsys):
    code, out, _ = run(capsys, "freeness", "--graph", "K3", "--sgq", "--q", 3)
    assert code == 0 and "exponents: (1, 3, 5)" in out and "terao factorization: PASS" in out


def test_verify_examples(capsys):
    code, out, _ = run(capsys, "verify", "qdelcon", "--complex", DATA / "tri_boundary.json", "--q", 2)
    assert code == 0 and out.count("PASS") == 3
    code, out, _ = run(capsys, "verify", "congruence", "--complex", DATA / "delta53.json", "--q", 3, "--k", 1)
    assert code == 0 and "PASS congruence q=3 k=1" in out


def test_verify_prop43_family_with_threads(capsys):
    code, out, _ = run(capsys, "verify", "prop43", "--graph", "all4", "--q", 2, "--q", 3, "--jobs", 3)
    assert code == 0
    assert out.strip().endswith("128/128 passed")
    code2, out2, _ = run(capsys, "verify", "prop43", "--graph", "all4", "--q", 2, "--q", 3)
    assert out == out2


def test_verify_monomial_identity(capsys):
    code, out, _ = run(capsys, "verify", "prop43", "--graph", "C4", "--monomial-r", 2)
    assert code == 0 and "1/1 passed" in out


def test_verify_supersolvable(capsys):
    code, out, _ = run(capsys, "verify", "supersolvable", "--graph", "K4", "--qdef", "--q", 3)
    assert code == 0
    code, _, _ = run(capsys, "verify", "supersolvable", "--graph", "C4")
    assert code == 4


def test_verify_json_schema(capsys):
    code, out, _ = run(capsys, "verify", "qdelcon", "--graph", "K3", "--r", 2, "--json")
    data = json.loads(out)
    assert data["schema"] == 1 and data["check"] == "qdelcon"
    assert [r["holds"] for r in data["results"]] == [True] * 3


def test_reproduce(capsys):
    code, out, _ = run(capsys, "reproduce", "delta53")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 4 and all("match" in line and "MISMATCH" not in line for line in lines)
    assert "2722 does not split" in lines[2] and "7661 does not split" in lines[3]
    code, out, _ = run(capsys, "reproduce", "skeleton", "--l", 4, "--q", 3)
    assert code == 0 and "match" in out
    code, out, _ = run(capsys, "reproduce", "exponents-b", "--l", 4)
    assert code == 0 and "(1, 3, 5, 7)" in out


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "charpoly", "--graph", tmp_path / "missing.edges")[0] == 2
    bad = tmp_path / "bad.edges"
    bad.write_text("1 2 3\n")
    assert run(capsys, "charpoly", "--graph", bad)[0] == 2
    assert run(capsys, "charpoly", "--graph", "K2", "--q", 6)[0] == 2
    assert run(capsys, "charpoly", "--graph", "K2", "--monomial-r", 3, "--q", 5)[0] == 4
    assert run(capsys, "charpoly", "--graph", "K7")[0] == 3
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "charpoly")[0] == 2


def test_graph_text_format():
    g = read_graph_text("# comment\n\n4\n1 2 # trailing\n3 4\n")
    assert g.n == 4 and g.sorted_edges() == [(1, 2), (3, 4)]
    assert read_graph_text("1 3\n").n == 3
    with pytest.raises(ParseError):
        read_graph_text("1 x\n")
    with pytest.raises(ParseError):
        read_graph_text("2\n1 3\n")


def test_module_entry_point_is_deterministic():
    cmd = [sys.executable, "-m", "qdeform", "charpoly", "--complex", str(DATA / "delta53.json"), "--q", "3", "--json"]
    a = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    assert a == b
    assert json.loads(a)["charpoly"]["factored"] == "(t-1)(t-3)(t-9)(t-25)(t-27)"
