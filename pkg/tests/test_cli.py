import json
import os
import subprocess
import sys

import pytest

from coxfano.cli import main
from coxfano.dataio import data_path


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "s2")
    assert code == 0 and out.strip() == "18/18 ok"


def test_verify_reports_mismatch(capsys, tmp_path):
    lines = data_path("s2").read_text().splitlines()
    text = "".join((ln.replace("| 16 |", "| 17 |") if ln.startswith("9 ") else ln) + "\n" for ln in lines)
    p = tmp_path / "bad.dat"
    p.write_text(text)
    code, out, _ = run(capsys, "verify", str(p))
    assert code == 1
    assert out.splitlines()[-1] == "17/18 ok"
    assert out.splitlines()[0].startswith("9: FAIL")


def test_verify_json(capsys):
    code, out, _ = run(capsys, "--format", "json", "verify", "s5_sample")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == "coxfano/1" and doc["passed"] == doc["total"] == 4


def test_invariants(capsys):
    code, out, _ = run(capsys, "invariants", "s2")
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("id\tmu")
    assert lines[1] == "1\t(1,1)\t(3,2)\t432\t2\t(4,3)\tyes"


def test_canonicalize(capsys):
    code, out, _ = run(capsys, "canonicalize", "s2")
    assert code == 0 and len(out.splitlines()) == 18
    assert all("\tCFv1:" in ln for ln in out.splitlines())


def test_series(capsys):
    code, out, _ = run(capsys, "series", "--id", "S1", "--params", "a=1")
    assert code == 0
    assert out.startswith("S1[a=1] sporadic") and "| 3 1 | 140 |" in out
    code, _, err = run(capsys, "series", "--id", "S4", "--params", "a=2")
    assert code == 1 and err.strip() == "InadmissibleParams: a odd required"


def test_series_closed_form_mismatch_exits_one(capsys):
    code, _, err = run(capsys, "series", "--id", "S42", "--params", "a=3,b=1")
    assert code == 1


def test_usage_errors(capsys):
    code, _, err = run(capsys, "verify", "no_such_list")
    assert code == 2 and "no such file or shipped list" in err
    code, _, _ = run(capsys, "series", "--id", "S999")
    assert code == 2
    code, _, _ = run(capsys, "enumerate", "--s", "9", "--max-coord", "1", "--max-exp", "1", "--max-deg", "1")
    assert code == 2
    code, _, _ = run(capsys, "enumerate", "--s", "2", "--max-coord", "1", "--max-exp", "1",
                     "--max-deg", "1", "--subcase", "nope")
    assert code == 2


def test_parse_error_exit_code(capsys, tmp_path):
    p = tmp_path / "bad.dat"
    p.write_text("1 sporadic 1 2 | 3\n")
    code, _, err = run(capsys, "verify", str(p))
    assert code == 2 and err.startswith("error: line 1")


def test_enumerate_and_diff(capsys, tmp_path):
    out_file = tmp_path / "e.dat"
    code, _, err = run(capsys, "enumerate", "--s", "2", "--max-coord", "1", "--max-exp", "2",
                       "--max-deg", "2", "-q", "-o", str(out_file))
    assert code == 0 and err.strip() == "2 canonical forms"
    assert out_file.read_text().startswith("E1 sporadic")
    code, out, _ = run(capsys, "diff", str(out_file), "s2")
    assert code == 1
    last = out.splitlines()[-1]
    assert "16 only in s2" in last and "2 common" in last and last.startswith("0 only in")
    code, out, _ = run(capsys, "diff", "s2", "s2")
    assert code == 0


def test_diff_accepts_key_files(capsys, tmp_path):
    _, out, _ = run(capsys, "canonicalize", "s2")
    keys = tmp_path / "keys.txt"
    keys.write_text("".join(ln.split("\t")[1] + "\n" for ln in out.splitlines()))
    code, out, _ = run(capsys, "diff", str(keys), "s2")
    assert code == 0 and out.strip().endswith("18 common")


def test_jobs_environment_and_module_entry_point(tmp_path):
    env = dict(os.environ, COXFANO_JOBS="2")
    r = subprocess.run([sys.executable, "-m", "coxfano", "verify", "s5_sample"], capture_output=True,
                       text=True, env=env)
    assert r.returncode == 0 and r.stdout.strip() == "4/4 ok"
    r = subprocess.run([sys.executable, "-m", "coxfano", "verify", "s2", "--jobs", "0"],
                       capture_output=True, text=True)
    assert r.returncode == 2
