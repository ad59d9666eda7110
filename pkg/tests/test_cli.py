import csv
import json
import subprocess
import sys

import pytest

from gbdkit.cli import HEADER, GridSpec, fmt, main


def run(argv, tmp_path, name="out.csv"):
    out = tmp_path / name
    code = main([*argv, "--out", str(out)])
    return code, out.read_text() if out.exists() else None


def rows(text):
    lines = text.splitlines()
    assert lines[0] == HEADER
    return list(csv.DictReader(lines[1:]))


def test_fmt():
    assert fmt(3.0) == "3"
    assert fmt(float("inf")) == "inf"
    assert fmt(float("-inf")) == "-inf"
    assert fmt(-0.0) == "0"
    assert float(fmt(0.1)) == 0.1


def test_gridspec_parse():
    g = GridSpec.parse("0:3:61")
    assert (g.lo, g.hi, g.n) == (0.0, 3.0, 61)
    for bad in ("0:3", "3:0:5", "0:1:1", "a:b:c"):
        with pytest.raises(Exception):
            GridSpec.parse(bad)


def test_dist_examples(tmp_path):
    code, text = run(["dist", "--dist", "f_log", "--grid", "0:3:61"], tmp_path)
    assert code == 0
    assert "\n3,3,0\n" in text
    assert len(rows(text)) == 61 * 61
    _, text = run(["dist", "--dist", "sigma_log", "--grid", "0:3:4"], tmp_path)
    assert "\n1,2,inf\n" in text
    _, text = run(["dist", "--dist", "kl", "--grid", "0:3:4"], tmp_path)
    assert "\n0,1,1\n" in text


def test_dist_separate_y_grid(tmp_path):
    _, text = run(["dist", "--dist", "f_id", "--grid", "0:1:2", "--grid-y", "0:2:3"], tmp_path)
    r = rows(text)
    assert [(x["x"], x["y"], x["value"]) for x in r] == [
        ("0", "0", "0"), ("0", "1", "0.25"), ("0", "2", "1"),
        ("1", "0", "0.25"), ("1", "1", "0"), ("1", "2", "0.25"),
    ]


def test_env_examples(tmp_path):
    _, text = run(["env", "--side", "left", "--dist", "f_log", "--gamma", "1", "--grid", "0:1:3"], tmp_path)
    r = {(x["gamma"], x["x"]): x for x in rows(text)}
    assert float(r[("1", "0.5")]["env"]) == pytest.approx(0.0, abs=1e-15)
    _, text = run(["env", "--side", "left", "--dist", "sigma_log", "--gamma", "5", "--grid", "0:0.9:2"], tmp_path)
    assert float(rows(text)[-1]["env"]) == pytest.approx(0.4)
    _, text = run(["env", "--side", "right", "--dist", "kl", "--gamma", "0.5", "--grid", "0:1:2"], tmp_path)
    assert float(rows(text)[-1]["env"]) == pytest.approx(0.31093, abs=1e-5)


def test_env_blocks_per_gamma_and_set_valued_prox(tmp_path):
    _, text = run(["env", "--side", "right", "--dist", "f_log", "--gamma", "0.36787944117144233",
                   "--gamma", "1", "--grid", "0:3:7"], tmp_path)
    r = rows(text)
    assert [x["gamma"] for x in r] == ["0.36787944117144233"] * 7 + ["1"] * 7
    assert (r[0]["prox_lo"], r[0]["prox_hi"]) == ("0", "0.5")


def test_env_outside_domain_prints_empty_prox(tmp_path):
    _, text = run(["env", "--side", "left", "--dist", "kl", "--grid=-1:0:2"], tmp_path)
    first = rows(text)[0]
    assert (first["env"], first["prox_lo"], first["prox_hi"]) == ("inf", "inf", "-inf")


def test_csv_byte_identical(tmp_path):
    argv = ["env", "--side", "left", "--dist", "kl", "--gamma", "0.1", "--gamma", "2", "--grid", "0:3:31"]
    _, a = run(argv, tmp_path, "a.csv")
    _, b = run(argv, tmp_path, "b.csv")
    assert a == b


def test_only_inf_tokens_are_non_numeric(tmp_path):
    _, text = run(["dist", "--dist", "sigma_log", "--grid=-1:3:9"], tmp_path)
    for row in rows(text):
        for v in row.values():
            if v not in ("inf", "-inf"):
                float(v)


def test_unwritable_path(tmp_path, capsys):
    code = main(["dist", "--dist", "kl", "--grid", "0:1:2", "--out", str(tmp_path / "no" / "x.csv")])
    assert code != 0
    assert "cannot write" in capsys.readouterr().err


def test_config_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["dist", "--dist", "nope", "--grid", "0:1:2"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["env", "--side", "left", "--dist", "kl", "--grid", "1:0:3"])
    assert exc.value.code == 2
    assert main(["env", "--side", "left", "--dist", "kl", "--gamma", "-1", "--grid", "0:1:3"]) == 2


def test_stdout_output(capsys):
    assert main(["dist", "--dist", "f_id", "--grid", "0:1:2"]) == 0
    assert capsys.readouterr().out.startswith(HEADER + "\nx,y,value\n")


def test_verify_subprocess(tmp_path):
    out = tmp_path / "r.json"
    proc = subprocess.run([sys.executable, "-m", "gbdkit", "verify", "--suite", "asymptotics", "--out", str(out)],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    report = json.loads(out.read_text())
    assert report["pass"] and report["suite"] == "asymptotics"
    assert any(c.get("expected_failure") for c in report["cases"])


def test_verify_failure_exit_code(monkeypatch, capsys):
    import gbdkit.cli as cli
    monkeypatch.setattr(cli, "run_suite", lambda name: {"suite": name, "cases": [], "pass": False})
    assert main(["verify", "--suite", "oracle"]) == 1
