import json

import pytest

from pvitau.cli import main


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_seq_example2(capsys):
    code, doc = run("seq --family T -r 3 -m 2 -s 1 -N 10 --schedule prime:3".split(), capsys)
    assert code == 0
    assert doc["N"] == "10" and doc["polys"][1] == ["1", "-5", "5"]


def test_seq_square_shift(capsys):
    code, doc = run("seq --family S -r 3 -m 2 -s 1 -N 3 --schedule square-shift".split(), capsys)
    assert code == 0 and doc["polys"][1] == ["-1", "12", "-30", "20"]
    assert doc["strategy"] == "schedule:square:2"


def test_verify_theorem(capsys):
    code, doc = run("verify --suite theorem-qn -r 3 -m 2 -s 1 -N 6".split(), capsys)
    assert code == 0 and doc["status"] == "pass"


def test_verify_negative_control(capsys):
    code, doc = run("verify --suite seed-pvi -r 3 -m 2 -s 1 --perturb alpha=+1".split(), capsys)
    assert code == 1
    assert doc["suites"][0]["results"][0]["witness"]


def test_verify_collapse_and_printed_readings(capsys):
    assert run("verify --suite collapse -r 3 -m 2 -s 1".split(), capsys)[0] == 0
    assert run("verify --suite collapse -r 3 -m 2 -s 1 --flag-reading u-factor=printed".split(), capsys)[0] == 1


def test_usage_errors(capsys):
    assert main(["verify", "--suite", "nope", "-r", "1", "-m", "1", "-s", "1"]) == 2
    assert main("seq -r 3 -m -1 -s 1".split()) == 2
    assert main("verify --suite riccati -r 0 -m 2 -s 1".split()) == 2
    assert main("verify --suite riccati -r 3 -m 2 -s 1 --flag-reading x=y".split()) == 2
    assert main("conjecture c4 -N 3".split()) == 2


def test_conjecture_commands(capsys):
    code, doc = run("conjecture c4 -p 3 -N 20".split(), capsys)
    assert code == 0 and doc["status"] == "PASS"
    code, doc = run("conjecture c2 -n 3 -m 2 --samples 4".split(), capsys)
    assert code == 0 and doc["notes"]["reading_scan"]["symmetric"] == "PASS"
    code, _ = run("conjecture c2 -n 3 -m 2 --samples 4 --flag-reading conj2=printed".split(), capsys)
    assert code == 1


def test_bench(capsys, tmp_path):
    out = tmp_path / "b.json"
    assert main(["bench", "-p", "3", "-N", "6", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    bits = [int(c["max_bits"]) for c in doc["curve"]]
    assert bits == sorted(bits)
