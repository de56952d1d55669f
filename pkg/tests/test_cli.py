"""CLI behavior: formats, exit codes, presets, determinism, round trips."""

import json
import subprocess
import sys

import numpy as np
import pytest

from eurmem.cli import SWEEP_HEADER, main
from eurmem.infoquant import binary_entropy
from eurmem.states import from_spec, werner


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_state(tmp_path, doc, name="state.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


def test_bounds_werner_with_discord(capsys, tmp_path):
    state = write_state(tmp_path, {"family": {"name": "werner", "p": 0.5}})
    code, out, _ = run_cli(
        capsys, "bounds", "--state", state, "--x", "sigma_x", "--z", "sigma_z", "--with-discord"
    )
    assert code == 0
    record = json.loads(out)
    assert record["family"] == "werner"
    assert record["p"] == 0.5
    assert record["observables"] == ["sigma_x", "sigma_z"]
    assert record["bound_ours"] == pytest.approx(record["bound_pati"], abs=1e-6)
    assert record["actual"] >= record["bound_ours"] - 1e-9


def test_bounds_singlet(capsys, tmp_path):
    state = write_state(tmp_path, {"family": {"name": "werner", "p": 1.0}})
    code, out, _ = run_cli(capsys, "bounds", "--state", state, "--x", "sigma_x", "--z", "sigma_z")
    assert code == 0
    record = json.loads(out)
    assert record["actual"] == pytest.approx(0.0, abs=1e-9)
    assert record["bound_berta"] == pytest.approx(0.0, abs=1e-9)
    assert record["bound_pati"] is None


def test_bounds_malformed_json_exits_2(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json", encoding="utf-8")
    code, _, err = run_cli(
        capsys, "bounds", "--state", str(path), "--x", "sigma_x", "--z", "sigma_z"
    )
    assert code == 2
    assert "error" in err


def test_bounds_invalid_state_exits_2_names_invariant(capsys, tmp_path):
    doc = {"explicit": {"dA": 2, "dB": 2, "re": (np.eye(4) * 0.375).tolist()}}
    state = write_state(tmp_path, doc)
    code, _, err = run_cli(capsys, "bounds", "--state", state, "--x", "sigma_x", "--z", "sigma_z")
    assert code == 2
    assert "trace" in err


def test_bounds_table_and_csv_formats(capsys, tmp_path):
    state = write_state(tmp_path, {"family": {"name": "xstate", "p": 0.5}})
    code, out, _ = run_cli(
        capsys, "bounds", "--state", state, "--x", "sigma_x", "--z", "sigma_z",
        "--format", "table",
    )
    assert code == 0 and "bound_ours" in out
    code, out, _ = run_cli(
        capsys, "bounds", "--state", state, "--x", "sigma_x", "--z", "sigma_z",
        "--format", "csv",
    )
    assert code == 0
    header, row = out.strip().split("\n")
    assert header.split(",")[0] == "q_mu"
    assert len(header.split(",")) == len(row.split(","))


def test_bounds_echo_state_round_trip(capsys, tmp_path):
    state = write_state(tmp_path, {"family": {"name": "bell_diagonal_special", "p": 0.37}})
    code, out, _ = run_cli(
        capsys, "bounds", "--state", state, "--x", "sigma_x", "--z", "sigma_z", "--echo-state"
    )
    assert code == 0
    record = json.loads(out)
    reingested = from_spec(record["state"])
    original = from_spec({"family": {"name": "bell_diagonal_special", "p": 0.37}})
    assert np.max(np.abs(reingested.mat - original.mat)) <= 1e-12


def test_sweep_preset_fig1b_endpoints_and_format(tmp_path, capsys):
    out = tmp_path / "fig1b.csv"
    code = main(["sweep", "--preset", "fig1b", "--out", str(out)])
    capsys.readouterr()
    assert code == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == SWEEP_HEADER
    assert len(lines) == 102
    first = dict(zip(lines[0].split(","), map(float, lines[1].split(","))))
    assert first["p"] == 0.0
    assert first["bound_berta"] == pytest.approx(1.0, abs=1e-9)
    assert first["bound_ours"] == pytest.approx(1.0, abs=1e-9)
    last = dict(zip(lines[0].split(","), map(float, lines[-1].split(","))))
    assert last["p"] == 1.0


def test_sweep_preset_fig2_endpoint(tmp_path, capsys):
    out = tmp_path / "fig2.csv"
    code = main(["sweep", "--preset", "fig2", "--out", str(out)])
    capsys.readouterr()
    assert code == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    last = dict(zip(lines[0].split(","), map(float, lines[-1].split(","))))
    assert last["p"] == 1.0
    assert last["bound_berta"] == pytest.approx(0.0, abs=1e-9)
    assert last["bound_ours"] == pytest.approx(0.0, abs=1e-9)


def test_sweep_deterministic_byte_identical(tmp_path, capsys):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["sweep", "--preset", "fig2", "--out", str(out1)]) == 0
    assert main(["sweep", "--preset", "fig2", "--out", str(out2)]) == 0
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()


def test_sweep_rows_monotone_consistent(tmp_path, capsys):
    out = tmp_path / "fig1a.csv"
    assert main(["sweep", "--preset", "fig1a", "--out", str(out)]) == 0
    capsys.readouterr()
    lines = out.read_text(encoding="utf-8").splitlines()
    keys = lines[0].split(",")
    for line in lines[1:]:
        row = dict(zip(keys, map(float, line.split(","))))
        assert row["bound_ours"] >= row["bound_berta"] - 1e-9
        assert row["actual"] >= row["bound_ours"] - 1e-9


def test_sweep_custom_family_and_range(tmp_path, capsys):
    out = tmp_path / "werner.csv"
    code = main(
        [
            "sweep", "--family", "werner", "--x", "sigma_x", "--z", "sigma_z",
            "--p-start", "0", "--p-end", "0.1", "--p-step", "0.05", "--out", str(out),
        ]
    )
    capsys.readouterr()
    assert code == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 4  # header + 0, 0.05, 0.1
    assert [line.split(",")[0] for line in lines[1:]] == ["0", "0.05", "0.1"]


def test_sweep_spec_file_multiple_pairs(tmp_path, capsys):
    spec = {
        "family": "xstate",
        "p_start": 0.0,
        "p_end": 0.2,
        "p_step": 0.1,
        "pairs": [["sigma_x", "sigma_z"], ["sigma_x", "sigma_y"]],
    }
    spec_path = tmp_path / "sweep.json"
    spec_path.write_text(json.dumps(spec), encoding="utf-8")
    out = tmp_path / "xs.csv"
    code = main(["sweep", "--spec", str(spec_path), "--out", str(out)])
    capsys.readouterr()
    assert code == 0
    assert (tmp_path / "xs_pair1.csv").exists()
    assert (tmp_path / "xs_pair2.csv").exists()


def test_sweep_invalid_range_exits_2(tmp_path, capsys):
    code, _, err = run_cli(
        capsys,
        "sweep", "--family", "werner", "--x", "sigma_x", "--z", "sigma_z",
        "--p-start", "0.5", "--p-end", "0.2", "--out", str(tmp_path / "x.csv"),
    )
    assert code == 2
    assert not (tmp_path / "x.csv").exists()  # no partial file


def test_discord_bell_diagonal_closed_form(capsys, tmp_path):
    state = write_state(
        tmp_path, {"family": {"name": "bell_diagonal", "r": [0.5, 0.3, 0.1]}}
    )
    code, out, _ = run_cli(capsys, "discord", "--state", state)
    assert code == 0
    record = json.loads(out)
    assert record["classical_correlation"] == pytest.approx(
        1.0 - binary_entropy(0.75), abs=1e-6
    )
    assert record["search_space"].startswith("rank-1 projective")


def test_discord_product_state(capsys, tmp_path):
    state = write_state(
        tmp_path,
        {"explicit": {"dA": 2, "dB": 2, "re": np.diag([0.25, 0.25, 0.25, 0.25]).tolist()}},
    )
    code, out, _ = run_cli(capsys, "discord", "--state", state)
    record = json.loads(out)
    assert code == 0
    assert record["classical_correlation"] == pytest.approx(0.0, abs=1e-9)
    assert record["discord"] == pytest.approx(0.0, abs=1e-9)


def test_discord_singlet(capsys, tmp_path):
    state = write_state(tmp_path, {"family": {"name": "werner", "p": 1.0}})
    code, out, _ = run_cli(capsys, "discord", "--state", state)
    record = json.loads(out)
    assert record["classical_correlation"] == pytest.approx(1.0, abs=1e-6)
    assert record["discord"] == pytest.approx(1.0, abs=1e-6)


def test_apps_singlet(capsys, tmp_path):
    state = write_state(tmp_path, {"family": {"name": "werner", "p": 1.0}})
    code, out, _ = run_cli(capsys, "apps", "--state", state, "--x", "sigma_x", "--z", "sigma_z")
    assert code == 0
    record = json.loads(out)
    assert record["eof_lower_bound"] == pytest.approx(1.0, abs=1e-9)
    assert record["crand_upper_bound"] == pytest.approx(0.0, abs=1e-9)
    assert record["entangled_by_berta"] and record["entangled_by_ours"]


def test_apps_maximally_mixed_vacuous(capsys, tmp_path):
    state = write_state(
        tmp_path,
        {"explicit": {"dA": 2, "dB": 2, "re": np.diag([0.25] * 4).tolist()}},
    )
    code, out, _ = run_cli(capsys, "apps", "--state", state, "--x", "sigma_x", "--z", "sigma_z")
    record = json.loads(out)
    assert record["eof_vacuous"] is True
    assert record["eof_lower_bound"] == pytest.approx(-1.0, abs=1e-9)


def test_validate_command_pass_and_fail(capsys, tmp_path):
    good = write_state(
        tmp_path, {"explicit": {"dA": 2, "dB": 2, "re": np.diag([0.25] * 4).tolist()}}, "good.json"
    )
    code, out, _ = run_cli(capsys, "validate", "--state", good)
    assert code == 0
    assert json.loads(out)["passed"] is True

    bad = write_state(
        tmp_path,
        {"explicit": {"dA": 2, "dB": 2, "re": (np.eye(4) * 0.375).tolist()}},
        "bad.json",
    )
    code, out, _ = run_cli(capsys, "validate", "--state", bad)
    assert code == 1
    report = json.loads(out)
    assert report["passed"] is False
    names = {c["name"]: c for c in report["checks"]}
    assert not names["trace"]["passed"]
    assert names["trace"]["residual"] == pytest.approx(0.5, abs=1e-12)


def test_validate_unparseable_exits_2(capsys, tmp_path):
    path = tmp_path / "nope.json"
    path.write_text("[[", encoding="utf-8")
    code, _, err = run_cli(capsys, "validate", "--state", str(path))
    assert code == 2


def test_module_entry_point_subprocess(tmp_path):
    state = tmp_path / "w.json"
    state.write_text(json.dumps({"family": {"name": "werner", "p": 0.5}}), encoding="utf-8")
    result = subprocess.run(
        [sys.executable, "-m", "eurmem", "bounds", "--state", str(state),
         "--x", "sigma_x", "--z", "sigma_z"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    record = json.loads(result.stdout)
    assert record["q_mu"] == pytest.approx(1.0, abs=1e-9)


def test_bounds_output_deterministic(capsys, tmp_path):
    state = write_state(tmp_path, {"family": {"name": "xstate", "p": 0.3}})
    args = ["bounds", "--state", state, "--x", "sigma_x", "--z", "sigma_z", "--with-discord"]
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
