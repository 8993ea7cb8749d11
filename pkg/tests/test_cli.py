import json
import subprocess
import sys

import jsonschema
import pytest

from polybu.cli import load_schema, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def validate(obj, name):
    jsonschema.validate(obj, load_schema(name))


def test_gcode_example(capsys):
    code, out, _ = run(capsys, "gcode", "--lengths", "1,1,1,1,1,1,3", "--format", "json")
    assert code == 0
    assert out == '{"n":7,"generic":true,"genetic_code":"{6,7}"}\n'
    validate(json.loads(out), "gcode")


def test_gcode_text_and_empty(capsys):
    code, out, _ = run(capsys, "gcode", "--lengths", "3,1,1,1,1")
    assert code == 0 and out.strip() == "1,1,1,1,3: ⟨{5}⟩"
    code, out, _ = run(capsys, "gcode", "--lengths", "1,1,1,5", "--format", "json")
    rec = json.loads(out)
    assert code == 0 and rec["genetic_code"] is None and rec["empty"] is True
    validate(rec, "gcode")


def test_non_generic_exit(capsys):
    code, out, err = run(capsys, "gcode", "--lengths", "1,1,1,1", "--format", "json")
    assert code == 3
    assert json.loads(out)["generic"] is False
    diag = json.loads(err)
    validate(diag, "error")
    assert diag["error"] == "non-generic" and diag["exit"] == 3
    code, _, _ = run(capsys, "analyze", "--lengths", "1,1,1,1")
    assert code == 3


@pytest.mark.parametrize("argv", [
    ["analyze", "--lengths", "1,0,1"],
    ["analyze", "--code", "{6,7},{5,7}"],
    ["analyze", "--lengths", "1,1,1,5"],
    ["gcode", "--file", "/nonexistent/batch.txt"],
    ["table", "--emax", "1"],
    ["verify", "--max-n", "3"],
    ["analyze"],
    ["nosuchcommand"],
])
def test_invalid_input_exit(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_json_errors_are_machine_readable(capsys):
    code, out, err = run(capsys, "analyze", "--lengths", "1,x,1", "--format", "json")
    assert code == 2 and out == ""
    diag = json.loads(err)
    validate(diag, "error")
    assert "'x'" in diag["message"]


def test_unrealizable_code_is_consistency_failure(capsys):
    code, _, err = run(capsys, "height", "--code", "{2,4,5}", "--format", "json")
    assert code == 4 and json.loads(err)["error"] == "consistency"


TABLE_TEXT = """\
# residues of n (not n-2) modulo 2^(t+1), 2^t <= e < 2^(t+1); row n-i holds n with height n-i
ht \\ e  2       3       4       5       6
mod     4       4       8       8       8
n-3     0,1     1       0,1,6,7 1,7     0,1
n-4     2       2       2       0,2     2
n-5     3       3       3       3       3
n-6             0       4       4       4
n-7                     5       5       5
n-8                             6       6
n-9                                     7
"""


def test_table_text_golden(capsys):
    code, out, _ = run(capsys, "table", "--emax", "6")
    assert code == 0 and out == TABLE_TEXT


def test_table_json(capsys):
    code, out, _ = run(capsys, "table", "--format", "json")
    data = json.loads(out)
    validate(data, "table")
    assert data["5"] == {"0": [1, 7], "1": [0, 2], "2": [3], "3": [4], "4": [5], "5": [6]}
    assert set(data) == {"2", "3", "4", "5", "6"}


def test_tidy_render(capsys):
    code, out, _ = run(capsys, "analyze", "--lengths", "1,1,1,2")
    assert code == 0 and "ht=ind=coind=1" in out and "provenance:" in out


def test_nontidy_render(capsys):
    code, out, _ = run(capsys, "analyze", "--code", "{2,7}")
    assert code == 0 and "coind=3 < ind=4" in out and "NonTidy" in out


def test_unknown_render_shows_intervals(capsys):
    code, out, _ = run(capsys, "analyze", "--code", "{2,6}")
    assert code == 0 and "coind=[2,3], ht=3, ind=3" in out


def test_report_json_schema_round_trip(capsys):
    code, out, _ = run(capsys, "analyze", "--code", "{2,4,9},{6,9}", "--format", "json")
    rep = json.loads(out)
    validate(rep, "report")
    assert json.loads(json.dumps(rep)) == rep
    assert rep["tidiness"] == "Tidy" and rep["height"] == 5 and rep["index"] == {"lo": 5, "hi": 5}


def test_code_with_explicit_n(capsys):
    code, out, _ = run(capsys, "height", "--code", "{3}", "--n", "7", "--format", "json")
    assert code == 2
    code, out, _ = run(capsys, "height", "--code", "{3,7}", "--n", "7", "--format", "json")
    assert code == 0 and json.loads(out)["height"] == 3


def test_height_verbose(capsys):
    code, out, _ = run(capsys, "height", "--code", "{6,7}", "-v", "--format", "json")
    rec = json.loads(out)
    validate(rec, "height")
    assert rec["degrees"]["1"]["quotient_rank"] == 7


BATCH = """\
# mixed batch
1,1,1,2
{2,7}

1,1,1,1        # not generic
1,1,1,1,1,1,3
{2,4,9},{5,9}
"""


def test_batch_order_and_exit(capsys, tmp_path):
    path = tmp_path / "batch.txt"
    path.write_text(BATCH)
    code, out, err = run(capsys, "analyze", "--file", str(path), "--format", "json")
    assert code == 3
    reps = [json.loads(line) for line in out.splitlines()]
    assert [r["genetic_code"] for r in reps] == ["{4}", "{2,7}", "{6,7}", "{2,4,9},{5,9}"]
    for r in reps:
        validate(r, "report")
    assert json.loads(err)["input"] == "1,1,1,1"
    code2, out2, err2 = run(capsys, "analyze", "--file", str(path), "--format", "json", "--jobs", "2")
    assert (code2, out2, err2) == (code, out, err)


def test_deterministic_output(capsys):
    first = run(capsys, "analyze", "--code", "{2,4,9},{5,9}")
    second = run(capsys, "analyze", "--code", "{2,4,9},{5,9}")
    assert first == second


def test_verify_two_gene(capsys):
    code, out, _ = run(capsys, "verify", "--family", "two-gene", "--max-n", "10")
    assert code == 0 and "0 mismatches" in out


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--max-n", "7", "--format", "json")
    recs = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and [r["family"] for r in recs] == ["monogenic", "two-gene", "quasieq"]
    for r in recs:
        validate(r, "verify")
        assert r["mismatches"] == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "polybu", "gcode", "--lengths", "1,1,1,2", "--format", "json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["genetic_code"] == "{4}"
