import csv
import io
import json
import shutil
import subprocess
from fractions import Fraction
from importlib import resources

import jsonschema
import pytest

from fe_lab.cli import main

SCHEMA = json.loads(resources.files("fe_lab").joinpath("report.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv):
    code, out, err = run(capsys, *argv)
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    return code, doc


def test_check_exit_codes(capsys):
    code, doc = report(capsys, "check", "ap(0,2)", "N")
    assert code == 0 and doc["result"]["status"] == "embeds"
    code, doc = report(capsys, "check", "ap(0,3)", "ap(0,6)")
    assert code == 1 and doc["result"]["refutation"]["finite_part"] == [0, 3]
    code, doc = report(capsys, "check", "N", "qset", "--nmax", "6", "--kmax", "1048576")
    assert code == 0 and doc["result"]["certificate"]["type"] == "prefix_witnesses"
    code, doc = report(capsys, "check", "interval(0,30)", "qset", "--nmax", "30", "--kmax", "1024")
    assert code == 2 and doc["result"]["status"] == "unknown"


def test_envelope_contents(capsys):
    _, doc = report(capsys, "check", "ap(0,2)", "N", "--seed", "5")
    assert doc["tool"] == "fe-lab" and doc["seed"] == 5 and doc["command"] == "check"
    assert doc["flags"]["kmax"] == 1 << 20 and doc["flags"]["a"] == "ap(0,2)"


@pytest.mark.parametrize("argv, code", [
    (["check", "ap(0,2) | N & N", "N"], 64),
    (["check", "nosuch", "N"], 64),
    (["proper", "qset", "N"], 65),
    (["filter", "member", "base{ap(0,2), ap(1,2)}", "N"], 66),
    (["filter", "member", "tails({1}, 3)", "N"], 66),
])
def test_errors_go_to_stderr(capsys, argv, code):
    got, out, err = run(capsys, *argv)
    assert got == code and out == "" and err.startswith("fe-lab")


def test_proper_and_equiv(capsys):
    code, doc = report(capsys, "proper", "{0}", "{5}")
    assert code == 1 and doc["result"]["uniform_shift"] == 5
    code, _ = report(capsys, "equiv", "ap(0,2)", "ap(1,2)")
    assert code == 0
    code, _ = report(capsys, "equiv", "N", "ap(0,2)")
    assert code == 1


def test_classify_and_ap(capsys):
    _, doc = report(capsys, "classify", "ap(0,2)")
    assert doc["result"]["thick"]["status"] == "false" and doc["result"]["syndetic"]["status"] == "true"
    code, doc = report(capsys, "ap", "qset", "-k", "5", "--horizon", "64")
    assert code == 0 and doc["result"]["witness"] == [32, 1]


def test_density_peaks_csv(capsys):
    code, out, _ = run(capsys, "density", "qset", "--samples", "peaks", "--mmax", "20", "--csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 19
    for m, row in zip(range(2, 21), rows):
        assert int(row["n"]) == 2 ** m + m
        assert Fraction(int(row["numerator"]), int(row["denominator"])) == Fraction(m * m + m, 2 ** (m + 1) + 2 * m)


def test_density_json(capsys):
    _, doc = report(capsys, "density", "ap(0,3)", "--windows", "3,5", "--mmax", "6")
    assert doc["result"]["natural_density"] == "1/3"
    assert [s["value"] for s in doc["result"]["banach_samples"]] == ["1/3", "2/5"]


def test_bprime(capsys):
    code, doc = report(capsys, "bprime", "{0,1}", "N", "--nmax", "3")
    assert code == 0 and doc["result"]["shifts"] == [0, 2, 5]
    code, doc = report(capsys, "bprime", "{0,1}", "ap(0,2)", "--nmax", "3", "--kmax", "100")
    assert code == 2 and doc["result"]["status"] == "exhausted" and doc["result"]["failed_n"] == 2


def test_filter_commands(capsys):
    assert report(capsys, "filter", "fip", "base{ap(0,2), ap(0,3)}")[0] == 0
    assert report(capsys, "filter", "member", "base{ap(0,2)}", "ap(0,4)")[0] == 1
    code, doc = report(capsys, "filter", "member", "tails(pow2, 64)", "qset << 3")
    assert code == 0 and doc["result"]["witness"]["n"] == 9
    assert report(capsys, "filter", "leftshift", "tails(pow2)", "qset", "7")[0] == 0
    assert report(capsys, "filter", "sum", "qset", "base{ap(0,2)}", "tails(pow2)")[0] == 0
    assert report(capsys, "filter", "rich", "base{{0,1}}", "ap(0,2)")[0] == 1
    assert report(capsys, "filter", "fe", "base{ap(0,2)}", "base{ap(0,4)}")[0] == 1
    code, doc = report(capsys, "filter", "leftsum", "base{ap(0,2)}", "ap(1,2)", "N")
    assert code == 0 and [e["k"] for e in doc["result"]["entries"]] == [1, 0]
    code, doc = report(capsys, "filter", "regularity", "base{{0,1}}", "N", "--coloring", "parity")
    assert code == 0 and doc["result"]["rich_pieces"] == []


def test_suite_exit_and_determinism(capsys):
    code, first = report(capsys, "suite", "--count", "40", "--seed", "7")
    assert code == 0 and first["result"]["violations"] == []
    _, second = report(capsys, "suite", "--count", "40", "--seed", "7")
    first.pop("timestamp"), second.pop("timestamp")
    assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)


def test_suite_dump(capsys):
    code, doc = report(capsys, "suite", "--count", "1", "--seed", "1", "--dump")
    (case,) = doc["result"]["cases"]
    assert code == 0 and case["seed"] == "1:0" and case["a"] and case["b"]
    assert case["vacuous"] or len(case["checks"]) == 5


def test_explore(capsys):
    _, doc = report(capsys, "explore", "density", "--sets", "N", "qset", "ap(0,2)", "--horizon", "4096")
    pairs = {(p["a"], p["b"]) for p in doc["result"]["pairs"]}
    assert ("N", "qset") in pairs and ("ap(0,2)", "qset") in pairs
    _, doc = report(capsys, "explore", "differences", "--count", "30", "--seed", "2")
    assert doc["result"]["cases"] == 30


def test_corpus_flag_and_env(capsys, tmp_path, monkeypatch):
    f = tmp_path / "c.txt"
    f.write_text("mult6 = ap(0,6)\n")
    assert report(capsys, "check", "mult6", "ap(0,3)", "--corpus", str(f))[0] == 0
    monkeypatch.setenv("FE_LAB_CORPUS", str(f))
    assert report(capsys, "check", "mult6", "ap(0,2)")[0] == 0


def test_rejects_bad_flags(capsys):
    with pytest.raises(SystemExit) as info:
        main(["check", "N", "N", "--horizon", "0"])
    assert info.value.code == 2


@pytest.mark.skipif(shutil.which("fe-lab") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["fe-lab", "check", "ap(0,3)", "ap(0,6)"], capture_output=True, text=True)
    assert proc.returncode == 1 and json.loads(proc.stdout)["result"]["status"] == "refuted"
