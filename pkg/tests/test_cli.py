import csv
import io
import json
import subprocess
import sys

import pytest

from ppqc.cli import (
    ExperimentConfig,
    cmd_nmr_scaling,
    cmd_repetitions,
    cmd_run,
    cmd_threshold,
    cmd_werner_scan,
    format_value,
    main,
)
from ppqc.errors import ConfigError, IoError


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def parse_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_cmd_run_dj_constant():
    rows = cmd_run(ExperimentConfig("run", {"n1": 2, "oracle": "constant:0", "epsilon": [0.5, 1.0, 0.1]}))
    assert len(rows) == 3
    assert abs(rows[0]["success_probability"] - 0.625) < 1e-12
    assert abs(rows[1]["expected_repetitions"] - 1) < 1e-12
    assert format_value(rows[1]["expected_repetitions"]) == "1"


def test_cmd_run_order_finding():
    rows = cmd_run(ExperimentConfig("run", {"protocol": "order-finding", "oracle": "modexp:7:15", "epsilon": [1.0]}))
    assert rows[0]["n1"] == 8 and rows[0]["n2"] == 4
    assert abs(rows[0]["success_probability"] - 0.5) < 1e-12


def test_cmd_run_unknown_oracle():
    with pytest.raises(ConfigError):
        cmd_run(ExperimentConfig("run", {"oracle": "nope"}))


def test_cmd_run_oracle_file(tmp_path):
    path = tmp_path / "f.txt"
    path.write_text("n1=2 n2=1\n0\n1\n1\n0\n")
    rows = cmd_run(ExperimentConfig("run", {"oracle": str(path), "epsilon": [1.0]}))
    assert abs(rows[0]["success_probability"] - 1) < 1e-12
    with pytest.raises(IoError) as exc:
        cmd_run(ExperimentConfig("run", {"oracle": str(tmp_path / "gone.txt")}))
    assert "gone.txt" in str(exc.value)


def test_cmd_threshold():
    rows = cmd_threshold(ExperimentConfig("threshold", {"n1": 2, "n2": [1, 2], "oracle": "identity"}))
    assert [r["n2"] for r in rows] == [1, 2]
    assert rows[1]["closed_form_bound"] == 0.2
    assert all(r["abs_difference"] < 1e-9 for r in rows)


def test_cmd_threshold_coarse_tol():
    rows = cmd_threshold(ExperimentConfig("threshold", {"tol": 1e-3}))
    assert rows[0]["abs_difference"] < 1e-3


def test_cmd_threshold_constant_rejected():
    with pytest.raises(ConfigError):
        cmd_threshold(ExperimentConfig("threshold", {"oracle": "constant:1"}))


def test_cmd_werner_scan():
    rows = cmd_werner_scan(ExperimentConfig("werner-scan", {"steps": 101}))
    assert len(rows) == 101
    at = {round(r["delta"], 10): r for r in rows}
    assert at[0.4]["entangled"] and not at[0.33]["entangled"] and at[0.34]["entangled"]
    assert all(abs(r["min_pt_eigenvalue"] - (1 - 3 * r["delta"]) / 4) < 1e-12 for r in rows)


def test_cmd_nmr_scaling():
    rows = cmd_nmr_scaling(ExperimentConfig("nmr-scaling", {"max_n": 2}))
    assert len(rows) == 2 and rows[-1]["epsilon"] == 0.5
    rows = cmd_nmr_scaling(ExperimentConfig("nmr-scaling", {"max_n": 1}))
    assert rows == [{"n": 1, "epsilon": 0.5, "sample_lower_bound": 2.0}]
    with pytest.raises(ConfigError):
        cmd_nmr_scaling(ExperimentConfig("nmr-scaling", {"max_n": 65}))


def test_cmd_repetitions():
    rows = cmd_repetitions(ExperimentConfig("repetitions", {"p": [1.0], "trials": 50}))
    assert rows[0]["monte_carlo_mean"] == 1
    with pytest.raises(ConfigError):
        cmd_repetitions(ExperimentConfig("repetitions", {"p": [0.0]}))


def test_unknown_parameter_rejected():
    with pytest.raises(ConfigError):
        cmd_werner_scan(ExperimentConfig("werner-scan", {"stepz": 3}))


def test_format_value():
    assert format_value(True) == "true"
    assert format_value(3) == "3"
    assert format_value(1 / 3) == "0.333333333333"
    assert format_value(0.625) == "0.625"


def test_main_csv_stdout(capsys):
    code, out, err = run_cli(capsys, "werner-scan", "--steps", "3")
    assert code == 0 and err == ""
    assert out == "delta,min_pt_eigenvalue,entangled\n0,0.25,false\n0.5,-0.125,true\n1,-0.5,true\n"


def test_main_json(capsys):
    code, out, _ = run_cli(capsys, "nmr-scaling", "--max-n", "3", "--json")
    assert code == 0
    assert json.loads(out)[2] == {"n": 3, "epsilon": 0.375, "sample_lower_bound": 8 / 3}


def test_main_out_file(tmp_path, capsys):
    path = tmp_path / "o.csv"
    code, out, _ = run_cli(capsys, "repetitions", "--p", "0.5", "--trials", "100", "--seed", "4", "--out", str(path))
    assert code == 0 and out == ""
    rows = parse_csv(path.read_text())
    assert rows[0]["seed"] == "4" and rows[0]["trials"] == "100"


def test_main_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"n1": 3, "oracle": "constant:1", "epsilon": [0.1, 0.2]}))
    code, out, _ = run_cli(capsys, "run", "--config", str(cfg), "--epsilon", "0.1")
    rows = parse_csv(out)
    assert code == 0 and len(rows) == 1
    assert rows[0]["n1"] == "3" and rows[0]["success_probability"] == "0.2125"


def test_main_errors_are_single_line(tmp_path, capsys):
    for argv in (
        ["run", "--oracle", "bogus"],
        ["threshold", "--oracle", "constant:0"],
        ["nmr-scaling", "--max-n", "100"],
        ["repetitions", "--p", "2"],
        ["run", "--config", str(tmp_path / "missing.json")],
        ["werner-scan", "--steps", "x"],
        ["frobnicate"],
    ):
        code, out, err = run_cli(capsys, *argv)
        assert code != 0 and out == ""
        lines = err.strip().splitlines()
        assert len(lines) == 1 and lines[0].startswith("ppqc: error: "), argv


def test_failure_leaves_no_output_file(tmp_path, capsys):
    path = tmp_path / "o.csv"
    code, _, _ = run_cli(capsys, "run", "--oracle", "bogus", "--out", str(path))
    assert code != 0 and not path.exists()


@pytest.mark.parametrize(
    "argv",
    [
        ["run", "--epsilon", "0,0.5,1"],
        ["run", "--protocol", "order-finding", "--N", "15", "--a", "7", "--epsilon", "0.3"],
        ["threshold", "--n1", "3", "--n2", "1,2", "--oracle", "parity"],
        ["werner-scan", "--steps", "11"],
        ["nmr-scaling", "--max-n", "8"],
        ["repetitions", "--p", "0.5,0.25", "--trials", "2000", "--seed", "9"],
    ],
)
def test_byte_identical_reruns(capsys, argv, monkeypatch):
    _, first, _ = run_cli(capsys, *argv)
    monkeypatch.setenv("PPQC_THREADS", "2")
    _, second, _ = run_cli(capsys, *argv)
    assert first == second and first


def test_entry_point_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "ppqc.cli", "nmr-scaling", "--max-n", "2"],
        capture_output=True, text=True, check=True,
    )
    assert proc.stdout == "n,epsilon,sample_lower_bound\n1,0.5,2\n2,0.5,2\n"
