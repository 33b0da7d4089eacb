import json
import subprocess
import sys

import pytest

from affchar.cli import EXIT_MISMATCH, EXIT_OK, EXIT_SCOPE, EXIT_USAGE, main
from affchar.qseries import QSeries


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_char_a1_json(capsys):
    code, out, _ = run(capsys, "char", "--type", "A1", "--level", "1", "--order", "6", "--format", "json")
    assert code == EXIT_OK
    table = json.loads(out)
    entries = {tuple(e["n"]): QSeries.from_json(e["series"]) for e in table["entries"]}
    assert entries[(0,)].coefficient_list(0, 6) == [1, 1, 2, 3, 5, 7, 11]
    assert all(isinstance(c, str) for e in table["entries"] for c in e["series"]["coeffs"])


def test_rank_flag(capsys):
    code, out, _ = run(capsys, "char", "--type", "A", "--rank", "2", "--order", "1")
    assert code == EXIT_OK and json.loads(out)["type"] == "A2"


def test_invalid_rank_is_usage_error(capsys):
    code, _, err = run(capsys, "char", "--type", "D2", "--order", "3")
    assert code == EXIT_USAGE and "InvalidRank" in err


def test_non_simply_laced_is_scope_error(capsys):
    code, _, err = run(capsys, "char", "--type", "B2", "--level", "1", "--order", "4")
    assert code == EXIT_SCOPE and "NotSimplyLaced" in err


def test_higher_level_without_seeds_is_scope_error(capsys):
    code, _, err = run(capsys, "char", "--type", "A2", "--level", "2", "--order", "4")
    assert code == EXIT_SCOPE and "MissingSeed" in err


def test_bad_flags(capsys):
    assert run(capsys, "char", "--type", "A2", "--order", "-1")[0] == EXIT_USAGE
    assert run(capsys, "char", "--type", "A2", "--level", "0")[0] == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == EXIT_USAGE


@pytest.mark.parametrize("builtin,rank", [("A", "2"), ("D", "4")])
def test_builtin_identities(capsys, builtin, rank):
    code, out, _ = run(capsys, "verify-identity", "--builtin", builtin, "--rank", rank, "--order", "100")
    assert code == EXIT_OK
    assert json.loads(out)["report"]["equal"] is True


def test_level1_builtin(capsys):
    code, out, _ = run(capsys, "verify-identity", "--builtin", "level1", "--type", "A3", "--order", "20")
    assert code == EXIT_OK


def test_identity_file_pass_and_fail(capsys, tmp_path):
    good = {"lhs": [{"a": 3, "b": 0, "e": 3}, {"a": 1, "b": 0, "e": -1}], "rhs": {"builtin": "A", "type": "A2"}, "order": 60}
    bad = json.loads(json.dumps(good))
    bad["lhs"][0]["e"] = 2
    gp, bp = tmp_path / "good.json", tmp_path / "bad.json"
    gp.write_text(json.dumps(good))
    bp.write_text(json.dumps(bad))
    assert run(capsys, "verify-identity", "--identity", str(gp))[0] == EXIT_OK
    code, out, _ = run(capsys, "verify-identity", "--identity", str(bp))
    assert code == EXIT_MISMATCH
    report = json.loads(out)["report"]
    assert report["equal"] is False and report["firstMismatchExponent"] == 3


def test_identity_file_with_theta(capsys, tmp_path):
    job = {"lhs": [{"a": 2, "b": 0, "e": 2}, {"a": 1, "b": 0, "e": -1}],
           "rhs": {"theta": {"matrix": [[2]], "scale": 2, "shift": [-1]}}, "order": 30}
    p = tmp_path / "job.json"
    p.write_text(json.dumps(job))
    assert run(capsys, "verify-identity", "--identity", str(p))[0] == EXIT_OK
    job["rhs"]["theta"]["matrix"] = [[-2]]
    p.write_text(json.dumps(job))
    code, _, err = run(capsys, "verify-identity", "--identity", str(p))
    assert code == EXIT_USAGE and "NotPositiveDefinite" in err


def test_malformed_files(capsys, tmp_path):
    p = tmp_path / "x.json"
    p.write_text("{not json")
    assert run(capsys, "verify-identity", "--identity", str(p))[0] == EXIT_USAGE
    assert run(capsys, "verify-identity", "--identity", str(tmp_path / "missing.json"))[0] == EXIT_USAGE
    p.write_text(json.dumps({"lhs": [{"a": 0, "b": 0, "e": 1}], "rhs": {"builtin": "A", "type": "A1"}}))
    code, _, err = run(capsys, "verify-identity", "--identity", str(p))
    assert code == EXIT_USAGE and "InvalidFactor" in err


def test_seed_file_and_recurrence(capsys, tmp_path):
    seeds = {"type": "A2", "level": 2, "order": 6,
             "entries": [{"n": list(r), "series": QSeries.one(6).to_json()} for r in [(0, 0), (0, 1), (1, 0), (1, 1)]]}
    p = tmp_path / "seeds.json"
    p.write_text(json.dumps(seeds))
    code, out, _ = run(capsys, "char", "--seed", str(p))
    assert code == EXIT_OK
    table = json.loads(out)
    assert table["level"] == 2
    code, out, _ = run(capsys, "verify-recurrence", "--seed", str(p))
    assert code == EXIT_OK and json.loads(out)["report"]["equal"]
    seeds["entries"].pop()
    p.write_text(json.dumps(seeds))
    assert run(capsys, "char", "--seed", str(p))[0] == EXIT_SCOPE


def test_table_round_trip_and_fault(capsys, tmp_path):
    code, out, _ = run(capsys, "char", "--type", "A2", "--order", "6")
    table = json.loads(out)
    p = tmp_path / "t.json"
    p.write_text(out)
    assert run(capsys, "verify-recurrence", "--table", str(p))[0] == EXIT_OK
    for e in table["entries"]:
        if e["n"] == [1, 0]:
            s = QSeries.from_json(e["series"])
            e["series"] = (s + QSeries.monomial(3, s.order)).to_json()
    p.write_text(json.dumps(table))
    code, out, _ = run(capsys, "verify-recurrence", "--table", str(p))
    assert code == EXIT_MISMATCH
    assert json.loads(out)["report"]["firstMismatchExponent"] == 3


def test_specialize(capsys):
    code, out, _ = run(capsys, "specialize", "--type", "A1", "--order", "10", "--kind", "principal")
    assert code == EXIT_OK
    s = QSeries.from_json(json.loads(out)["principal"])
    assert s.coefficient_list(0, 6) == [1, 1, 1, 2, 2, 3, 4]
    assert "homogeneous" not in json.loads(out)


def test_text_format(capsys):
    code, out, _ = run(capsys, "char", "--type", "A1", "--order", "3", "--format", "text")
    assert code == EXIT_OK and "A(0,) = 1 + q + 2*q^2 + 3*q^3 + O(q^4)" in out


def test_determinism_and_atomic_output(capsys, tmp_path):
    argv = ["char", "--type", "D4", "--order", "3"]
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second
    target = tmp_path / "out.json"
    assert run(capsys, *argv, "--output", str(target))[0] == EXIT_OK
    assert target.read_text() == first
    assert [p.name for p in tmp_path.iterdir()] == ["out.json"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "affchar", "char", "--type", "B3", "--order", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == EXIT_SCOPE
    assert proc.stdout == ""
