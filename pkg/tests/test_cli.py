import json

import pytest

from divisorlab.cli import run_command
from divisorlab.groups import catalog

EXAMPLE_SYSTEM = {
    "group": "S4", "unknowns": ["x", "y"], "coefficients": {"a": "(12)", "b": "(34)"},
    "equations": [{"word": "x a y^2 [x,y]^2019 (x b y)^3"},
                  {"word": "b x^3 y [x,y]^100 (x b y)^4"},
                  {"word": "[x, y^5] x^-2"}],
}


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(path)


def run(argv, capsys):
    code = run_command(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_group_info(capsys):
    code, rep = run(["group", "info", "--catalog", "S3"], capsys)
    assert code == 0 and rep["order"] == 6 and rep["schema"] == "divisor-lab/1"
    assert rep["subgroup_orders"] == [1, 2, 2, 2, 3, 6]
    assert rep["abelianization"] == [2]


def test_group_validate_file(tmp_path, capsys):
    path = write(tmp_path, "g.json", catalog("D4").to_json())
    code, rep = run(["group", "validate", "--group", path], capsys)
    assert code == 0 and rep["valid"]


def test_bad_table_is_input_error(tmp_path, capsys):
    path = write(tmp_path, "g.json", {"names": ["e", "a"], "table": [[0, 1], [1, 1]]})
    assert run(["group", "validate", "--group", path], capsys)[0] == 2


def test_solve_example(tmp_path, capsys):
    path = write(tmp_path, "s.json", EXAMPLE_SYSTEM)
    code, rep = run(["solve", "--system", path], capsys)
    assert code == 0 and rep["ok"]
    assert rep["verdict"] == "theorem1"
    assert rep["bound"] == 1
    assert rep["breakdown"]["invariant_factor"] == 5
    assert rep["breakdown"]["centralizer_order"] == 4


def test_solve_writes_out(tmp_path, capsys):
    path = write(tmp_path, "s.json", EXAMPLE_SYSTEM)
    out = tmp_path / "r.json"
    assert run(["solve", "--system", path, "--out", str(out)], capsys)[0] == 0
    assert json.loads(out.read_text())["command"] == "solve"


def test_malformed_json(tmp_path, capsys):
    path = write(tmp_path, "s.json", "{not json")
    assert run(["solve", "--system", path], capsys)[0] == 2


def test_missing_file_and_flag(capsys):
    assert run(["solve", "--system", "/nonexistent/file.json"], capsys)[0] == 2
    assert run(["solve"], capsys)[0] == 2
    assert run(["frobnicate"], capsys)[0] == 2


def test_cap_exceeded(tmp_path, capsys):
    path = write(tmp_path, "s.json", EXAMPLE_SYSTEM)
    assert run(["solve", "--system", path, "--cap", "100"], capsys)[0] == 3


def test_generalized_solve(tmp_path, capsys):
    doc = {"group": "S3", "unknowns": ["x"], "coefficients": {"c": "(123)"},
           "equations": [{"word": "x^2", "H": ["(12)"], "g": "c"}], "subsystem": []}
    code, rep = run(["solve", "--system", write(tmp_path, "s.json", doc)], capsys)
    assert code == 0 and rep["verdict"] == "theorem2"


def test_ring_solve(tmp_path, capsys):
    doc = {"ring": {"kind": "matrix", "k": 2, "d": 2}, "unknowns": ["x"],
           "equations": [[[{"var": "x", "exp": 3}], [{"var": "x"}]]]}
    code, rep = run(["ring-solve", "--ring", write(tmp_path, "r.json", doc)], capsys)
    assert code == 0 and rep["solution_count"] == 4 and rep["bound"] == 2


def test_crossed(tmp_path, capsys):
    doc = {"actor": {"catalog": "Z2"}, "target": {"catalog": "Z3"},
           "perms": {"g": [0, 2, 1]}}
    code, rep = run(["crossed", "--action", write(tmp_path, "a.json", doc)], capsys)
    assert code == 0 and rep["count"] == 3


def test_bad_action(tmp_path, capsys):
    doc = {"actor": {"catalog": "Z2"}, "target": {"catalog": "Z3"},
           "perms": {"g": [1, 0, 2]}}
    assert run(["crossed", "--action", write(tmp_path, "a.json", doc)], capsys)[0] == 2


def test_hom_check(tmp_path, capsys):
    doc = {"generators": ["g"], "relators": ["g^6"], "deg": {"g": 1}, "n": 2}
    path = write(tmp_path, "p.json", doc)
    code, rep = run(["hom-check", "--presentation", path, "--catalog", "S3"], capsys)
    assert code == 0 and rep["hom_count"] == 6
    assert all(c["closed_conjugation"] and c["divisible"] for c in rep["conditions"])
    code, rep = run(["hom-check", "--presentation", path, "--catalog", "S3",
                     "--subgroup", "(12)"], capsys)
    assert code == 0 and len(rep["conditions"]) == 1


def test_explore_deterministic(capsys):
    argv = ["explore", "--question", "Q1", "--seed", "4", "--trials", "8"]
    code, a = run(argv, capsys)
    _, b = run(argv, capsys)
    assert code == 0 and a == b
    assert a["summary"]["trials"] == 8


@pytest.mark.parametrize("flag", [["--catalog", "S3", "--group", "x.json"]])
def test_conflicting_group_flags(flag, capsys):
    assert run(["group", "info", *flag], capsys)[0] == 2
