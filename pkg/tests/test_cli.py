import json
import os
import subprocess
import sys

import pytest

from exspec import cache, cli, fusion, verify
from exspec import closed_forms as cf
from exspec.fusion import SplitMultiset


def run(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_dims_tsv(capsys):
    code, out, _ = run(capsys, "dims", "--p", "5", "--max-half-degree", "10", "--space", "HE")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "degree\tdim"
    assert lines[1] == "0\t1"
    assert len(lines) == 12


def test_dims_spaces(capsys):
    _, data = run_json(capsys, "dims", "--p", "5", "--max-half-degree", "3", "--space", "HEFP")
    assert [r["dim"] for r in data["rows"]][:3] == [1, 2, 4]
    _, data = run_json(capsys, "dims", "--p", "5", "--max-half-degree", "6", "--space", "I")
    assert data["rows"][-1] == {"degree": 12, "dim": 2}
    _, data = run_json(capsys, "dims", "--space", "HG", "--preset", "L3(7).3", "--max-half-degree", "6")
    assert [r["dim"] for r in data["rows"]] == [1, 0, 0, 0, 0, 0, 1]


def test_series(capsys):
    code, data = run_json(capsys, "series", "--p", "7", "--space", "HEFP", "--max-half-degree", "1")
    assert code == 0
    assert data["rows"][2] == {"degree": 2, "dim": 4, "factors": {"CP(1)": 1, "EE(1,1)": 1}}
    assert run(capsys, "series", "--space", "HG")[0] == 2


def test_split_example(capsys):
    code, data = run_json(capsys, "split", "--preset", "L3(7).3")
    assert code == 0
    entry = data["results"][0]
    assert SplitMultiset.from_dict(entry["split"]) == cf.P7_LISTS["T"]
    assert entry["wedge"] == cf.P7_LISTS["T"].wedge()


def test_split_tsv_multiple(capsys):
    code, out, _ = run(capsys, "split", "--preset", "ON", "--preset", "Fi24", "--format", "tsv")
    assert code == 0
    assert {line.split("\t")[0] for line in out.splitlines()[1:]} == {"ON", "Fi24"}


def test_descriptor_round_trip(capsys, tmp_path):
    for name in fusion.P7_PRESETS:
        text = fusion.preset(name).to_json()
        path = tmp_path / "d.json"
        path.write_text(text)
        code, data = run_json(capsys, "split", "--descriptor", str(path))
        assert code == 0
        assert json.dumps(data["results"][0]["descriptor"]) == text
        assert data["results"][0]["split"] == fusion.split(fusion.preset(name)).to_dict()


def test_compare(capsys):
    code, data = run_json(capsys, "compare", "--preset", "ON", "--preset", "Fi24")
    assert code == 0
    assert SplitMultiset.from_dict(data["difference"]) == cf.ON_MINUS_FI24
    assert data["nonnegative"]
    assert run(capsys, "compare", "--preset", "ON")[0] == 2


def test_mult(capsys):
    code, data = run_json(capsys, "mult", "--preset", "L3(7)")
    assert code == 0
    assert data["n"]["0,0"] == 1
    assert data["m1"]["0"] == data["m2"]["0"] == 3
    assert data["m2"]["2"] == 3


def test_invariants(capsys):
    code, data = run_json(capsys, "invariants", "--group", "T", "--p", "7", "--l", "6", "--k", "0")
    assert code == 0
    assert data["rows"][0]["dim"] == 2
    _, data = run_json(capsys, "invariants", "--group", "H", "--p", "7", "--module", "CST", "--k", "2")
    assert data["rows"][0]["dim"] == 5
    assert run(capsys, "invariants", "--group", "H", "--p", "5")[0] == 2


def test_gamma_check_and_p3_table(capsys):
    code, data = run_json(capsys, "gamma-check", "--p", "3")
    assert code == 0 and data["passed"]
    code, data = run_json(capsys, "p3-table")
    assert code == 0
    assert {r["summand"]: r["half_degree"] for r in data["rows"]}["X_{2,1}"] == 5
    assert run(capsys, "p3-table", "--p", "5")[0] == 2


def test_verify_examples(capsys):
    code, data = run_json(capsys, "verify", "gamma-direct-sum", "--p", "3")
    assert code == 0 and data["passed"]
    code, data = run_json(capsys, "verify", "p7-splittings")
    assert code == 0 and len(data["suites"][0]["checks"]) == 4
    code, data = run_json(capsys, "verify", "--suite", "l2-table", "--p", "13")
    assert code == 0
    assert [c["detail"] for c in data["suites"][0]["checks"]] == [f"got [{k}, {k}]" for k in (3, 2, 1, 1)]
    assert run(capsys, "verify", "h-splitting", "--p", "5")[0] == 2


def test_suite_aliases(capsys):
    for suite in verify.SUITES:
        for alias in suite.aliases:
            assert verify.get_suite(alias) is suite
    code, out, _ = run(capsys, "verify", "--list")
    assert code == 0
    assert len(out.splitlines()) == len(verify.SUITES) + 1


def test_verify_all_p7(capsys):
    code, data = run_json(capsys, "verify", "all", "--p", "7")
    assert code == 0 and data["passed"]
    assert [s["suite"] for s in data["suites"]] == [s.name for s in verify.applicable_suites(7)]
    assert len(data["suites"]) == 21


def test_verify_failure_exit_code(capsys, monkeypatch):
    broken = verify.Suite("broken", (), lambda p: [verify.Check("always fails", False)])
    monkeypatch.setitem(verify._BY_NAME, "broken", broken)
    code, out, _ = run(capsys, "verify", "broken", "--format", "tsv")
    assert code == 1
    assert "FAIL" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["split", "--preset", "nope"],
        ["split"],
        ["dims", "--p", "4"],
        ["dims", "--p", "17"],
        ["dims", "--space", "XX"],
        ["verify", "no-such-suite"],
        ["verify"],
        ["bogus"],
        ["split", "--preset", "L3p"],
        ["split", "--preset", "ON", "--p", "5"],
        ["dims", "--space", "HE", "--preset", "ON"],
    ],
)
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_bad_descriptor_files(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "split", "--descriptor", str(bad))[0] == 2
    bad.write_text(json.dumps({"p": 7, "we": [[[3, 0], [0, 1]]], "radicals": [{"lines": ["1"], "wa": "GL2"}]}))
    assert run(capsys, "split", "--descriptor", str(bad))[0] == 2
    assert run(capsys, "split", "--descriptor", str(tmp_path / "missing.json"))[0] == 2


def test_cache_dir(capsys, tmp_path, monkeypatch):
    flag_dir, env_dir = tmp_path / "flag", tmp_path / "env"
    monkeypatch.delenv(cache.ENV_VAR, raising=False)
    _, first, _ = run(capsys, "dims", "--p", "5", "--max-half-degree", "8", "--cache-dir", str(flag_dir))
    stored = flag_dir / cache.SCHEMA / "p5" / "basis-16.json"
    assert stored.exists()
    stored.write_text("garbage")
    _, again, _ = run(capsys, "dims", "--p", "5", "--max-half-degree", "8", "--cache-dir", str(flag_dir))
    assert again == first
    monkeypatch.setenv(cache.ENV_VAR, str(env_dir))
    run(capsys, "dims", "--p", "5", "--max-half-degree", "2", "--cache-dir", str(flag_dir))
    assert (env_dir / cache.SCHEMA / "p5" / "basis-4.json").exists()


def test_module_entry_point():
    env = dict(os.environ)
    env.pop(cache.ENV_VAR, None)
    res = subprocess.run(
        [sys.executable, "-m", "exspec", "dims", "--p", "3", "--max-half-degree", "2"],
        capture_output=True,
        text=True,
        env=env,
    )
    assert res.returncode == 0
    assert res.stdout.splitlines()[1:] == ["0\t1", "2\t2", "4\t4"]
