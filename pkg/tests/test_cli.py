import json
import math
import os
import re
import shlex
import subprocess
import sys

import pytest

from numbers_game.cli import main

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def same_json(a, b):
    if isinstance(a, float) or isinstance(b, float):
        return isinstance(a, (int, float)) and isinstance(b, (int, float)) and math.isclose(a, b, rel_tol=1e-9, abs_tol=1e-12)
    if isinstance(a, dict):
        return isinstance(b, dict) and a.keys() == b.keys() and all(same_json(a[k], b[k]) for k in a)
    if isinstance(a, list):
        return isinstance(b, list) and len(a) == len(b) and all(same_json(x, y) for x, y in zip(a, b))
    return a == b


def readme_examples():
    with open(os.path.join(ROOT, "README.md")) as fh:
        text = fh.read()
    blocks = re.findall(r"```console\n(.*?)```", text, re.S)
    out = []
    for block in blocks:
        lines = block.strip("\n").split("\n")
        k = 0
        while k < len(lines):
            cmd = lines[k]
            assert cmd.startswith("$ numbers-game "), cmd
            expected = lines[k + 1]
            code = 0
            k += 2
            if k < len(lines) and lines[k].startswith("[exit"):
                code = int(lines[k][6:-1])
                k += 1
            out.append((cmd[2:], expected, code))
    return out


EXAMPLES = readme_examples()


def test_readme_has_examples():
    assert len(EXAMPLES) >= 10


@pytest.mark.parametrize("cmd, expected, code", EXAMPLES, ids=[e[0] for e in EXAMPLES])
def test_readme_example(cmd, expected, code, capsys, monkeypatch):
    monkeypatch.chdir(ROOT)
    argv = shlex.split(cmd)[1:]
    got_code, out, err = run(argv, capsys)
    assert got_code == code
    stream = out if code == 0 else err
    assert same_json(json.loads(stream), json.loads(expected))


def test_console_script_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "numbers_game", "reduce", "--graph", "A2", "--word", "1,2,1"],
        capture_output=True, text=True, cwd=ROOT,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout) == {"reduced": True}


@pytest.mark.parametrize(
    "argv",
    [
        ["play", "--graph", "B2", "--position", "[1,1,1]"],
        ["play", "--graph", "B2", "--position", "omega:3"],
        ["play", "--graph", "B2", "--policy", "highest"],
        ["play", "--graph", "B2", "--limit", "-1"],
        ["replay", "--graph", "B2", "--fired", "0,1"],
        ["reduce", "--graph", "A2", "--word", "1,3"],
        ["orbit", "--graph", "A2", "--cap", "0"],
        ["play"],
        ["bogus"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_domain_errors_exit_1(capsys, tmp_path):
    code, _, err = run(["play", "--graph", "Q9"], capsys)
    assert code == 1 and json.loads(err)["error"] == "unknown_catalog_id"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kind": "gcm", "amplitudes": [[2, -1], [0, 2]]}))
    code, _, err = run(["classify", "--graph", str(bad)], capsys)
    payload = json.loads(err)
    assert code == 1 and payload["error"] == "asymmetric_zero_pattern"
    assert (payload["i"], payload["j"]) == (1, 2)
    code, _, err = run(["orbit", "--graph", "E8"], capsys)
    assert code == 1 and json.loads(err)["error"] == "cap_exceeded"


def test_graph_file_and_modes(capsys):
    path = os.path.join(ROOT, "tests", "fixtures", "b2_matrix.json")
    code, out, _ = run(["play", "--graph", path, "--quiet"], capsys)
    assert code == 0 and json.loads(out)["terminal"] == ["-1", "-1"]
    code, out, _ = run(["play", "--graph", "B2", "--mode", "approx", "--quiet"], capsys)
    assert json.loads(out)["terminal"] == [-1.0, -1.0]


def test_check_poset_reports_violations(capsys, tmp_path):
    p = tmp_path / "p.json"
    p.write_text(json.dumps({"n": 2, "elements": ["a", "b", "c"], "covers": [["a", "b", 1], ["b", "c", 1]]}))
    code, out, _ = run(["check-poset", "--graph", "A2", "--poset", str(p)], capsys)
    res = json.loads(out)
    assert code == 0 and not res["ok"]
    assert [v["edge"] for v in res["violations"]] == [1, 2]
    assert res["violations"][0]["cover"] == ["a", "b", 1]
    code, _, err = run(["check-poset", "--graph", "A2", "--poset", str(p), "--infer"], capsys)
    assert code == 1 and json.loads(err)["error"] == "structure_not_verified"


def test_keep_positions_and_orbit_dump(capsys):
    code, out, _ = run(["play", "--graph", "A2", "--keep-positions"], capsys)
    res = json.loads(out)
    assert len(res["positions"]) == res["steps"] + 1
    code, out, _ = run(["orbit", "--graph", "B2", "--keep-positions", "--threads", "2"], capsys)
    res = json.loads(out)
    assert res["size"] == 8 and len(res["positions"]) == 8


def test_catalog_listing(capsys):
    code, out, _ = run(["catalog-list", "--max-rank", "3"], capsys)
    res = json.loads(out)
    assert code == 0 and "I2(4)" in res["examples"]
    assert {f["family"] for f in res["families"]} >= {"A", "CalH4", "AffG2", "SmallCycle"}


def test_output_is_deterministic(capsys):
    argv = ["play", "--graph", "E6", "--policy", "random:11"]
    first = run(argv, capsys)
    assert run(argv, capsys) == first
