import csv
import json

import numpy as np
import pytest

from repsample.cli import main


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_categorical(small_csv, tmp_path, capsys):
    report_path = tmp_path / "report.json"
    code, out, _ = run_cli(
        ["analyze", "--input", str(small_csv), "--var", "type:categorical",
         "--out-report", str(report_path)],
        capsys,
    )
    assert code == 0
    payload = json.loads(report_path.read_text(encoding="utf-8"))
    assert len(payload["strata"]) == 3
    assert sum(s["proportion"] for s in payload["strata"]) == pytest.approx(1.0)


def test_analyze_constant_numeric_warns(tmp_path, capsys):
    path = tmp_path / "const.csv"
    path.write_text("x\n" + "4\n" * 20)
    with pytest.warns(Warning):
        code, out, _ = run_cli(
            ["analyze", "--input", str(path), "--var", "x:numerical"], capsys
        )
    assert code == 0
    assert '"strata"' in out


def test_missing_input_exit_2(capsys):
    code, _, err = run_cli(
        ["analyze", "--input", "/no/such/file.csv", "--var", "x:numerical"], capsys
    )
    assert code == 2
    assert "/no/such/file.csv" in err


def test_bad_variable_exit_2(small_csv, capsys):
    code, _, err = run_cli(
        ["sample", "--input", str(small_csv), "--var", "nope:numerical",
         "--epsilon", "0.1"],
        capsys,
    )
    assert code == 2
    assert "nope" in err


def test_degenerate_input_exit_1(tmp_path, capsys):
    path = tmp_path / "zero.csv"
    path.write_text("x\n" + "0\n" * 30)
    code, _, err = run_cli(
        ["sample", "--input", str(path), "--var", "x:numerical",
         "--epsilon", "0.1", "--epsilon-mode", "relative-to-mean"],
        capsys,
    )
    assert code == 1
    assert "zero population mean" in err


def _write_population(path, n=800, seed=0):
    rng = np.random.default_rng(seed)
    likes = np.round(rng.exponential(2.0, n)).astype(int)
    types = rng.choice(["model", "dataset", "space"], n, p=[0.6, 0.2, 0.2])
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["likes", "type"])
        writer.writerows(zip(likes.tolist(), types.tolist()))


def test_sample_end_to_end(tmp_path, capsys):
    population = tmp_path / "pop.csv"
    _write_population(population)
    out_sample = tmp_path / "sample.csv"
    out_report = tmp_path / "report.json"
    code, out, _ = run_cli(
        ["sample", "--input", str(population), "--var", "likes:numerical",
         "--epsilon", "0.1", "--epsilon-mode", "relative-to-mean",
         "--k", "2", "--iterations", "5", "--seed", "3",
         "--out-sample", str(out_sample), "--out-report", str(out_report)],
        capsys,
    )
    assert code == 0
    payload = json.loads(out_report.read_text(encoding="utf-8"))
    assert len(payload["iterations"]) == 5
    assert payload["chosen"]["index"] >= 1
    assert sum(a["n"] for a in payload["plan"]["allocations"]) == payload["plan"]["n"]

    with open(out_sample, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["likes", "type"]
    assert len(rows) - 1 == payload["plan"]["n"]

    # every sampled row exists verbatim in the input
    with open(population, newline="") as fh:
        source = {tuple(r) for r in csv.reader(fh)}
    for row in rows[1:]:
        assert tuple(row) in source


def test_sample_size_flag(tmp_path, capsys):
    population = tmp_path / "pop.csv"
    _write_population(population, n=300, seed=4)
    out_sample = tmp_path / "s.csv"
    code, _, _ = run_cli(
        ["sample", "--input", str(population), "--var", "type:categorical",
         "--sample-size", "60", "--seed", "1", "--out-sample", str(out_sample)],
        capsys,
    )
    assert code == 0
    with open(out_sample, newline="") as fh:
        assert len(list(csv.reader(fh))) - 1 == 60


def test_byte_reproducibility(tmp_path, capsys):
    population = tmp_path / "pop.csv"
    _write_population(population, n=500, seed=8)
    outputs = []
    for run in ("a", "b"):
        out_sample = tmp_path / f"sample_{run}.csv"
        out_report = tmp_path / f"report_{run}.json"
        code, _, _ = run_cli(
            ["sample", "--input", str(population),
             "--var", "type:categorical", "--var", "likes:numerical",
             "--epsilon", "0.05", "--k", "2", "--seed", "7",
             "--out-sample", str(out_sample), "--out-report", str(out_report)],
            capsys,
        )
        assert code == 0
        outputs.append((out_sample.read_bytes(), out_report.read_bytes()))
    assert outputs[0][0] == outputs[1][0]
    # reports embed only config-determined fields, so they match byte for byte
    ra = json.loads(outputs[0][1])
    rb = json.loads(outputs[1][1])
    assert ra == rb
    assert outputs[0][1] == outputs[1][1]


def test_config_file_with_flag_override(tmp_path, capsys):
    population = tmp_path / "pop.csv"
    _write_population(population, n=400, seed=2)
    config = tmp_path / "run.json"
    config.write_text(
        json.dumps(
            {
                "input": str(population),
                "vars": ["type:categorical"],
                "sample_size": 40,
                "seed": 5,
                "out_report": str(tmp_path / "from_config.json"),
            }
        )
    )
    code, _, _ = run_cli(
        ["sample", "--config", str(config), "--sample-size", "25"], capsys
    )
    assert code == 0
    payload = json.loads((tmp_path / "from_config.json").read_text())
    assert payload["plan"]["n"] == 25  # flag wins over config file


def test_validate_command(tmp_path, capsys):
    out_report = tmp_path / "coverage.json"
    code, out, _ = run_cli(
        ["validate", "--population-size", "4000", "--r", "150", "--seed", "3",
         "--out-report", str(out_report)],
        capsys,
    )
    assert code == 0
    payload = json.loads(out_report.read_text())
    assert payload["repetitions"] == 150
    assert "coverage" in out


def test_validate_census(capsys):
    code, out, _ = run_cli(
        ["validate", "--population-size", "1500", "--r", "100", "--census"], capsys
    )
    assert code == 0
    assert "coverage: 1.0000" in out


def test_table1_pipeline(table1_csv, tmp_path, capsys):
    out_report = tmp_path / "table1_report.json"
    code, _, _ = run_cli(
        ["sample", "--input", str(table1_csv),
         "--var", "type:categorical", "--var", "likes:numerical",
         "--epsilon", "0.05", "--confidence", "0.95", "--k", "3", "--seed", "0",
         "--iterations", "5", "--out-report", str(out_report)],
        capsys,
    )
    assert code == 0
    payload = json.loads(out_report.read_text(encoding="utf-8"))
    assert payload["population_size"] == 674_827
    assert [s["size"] for s in payload["strata"]] == [
        101_667, 13, 1, 456_149, 143, 11, 116_804, 38, 1
    ]
    assert payload["plan"]["n"] == 385
    assert [a["n"] for a in payload["plan"]["allocations"]] == [
        58, 0, 0, 260, 0, 0, 67, 0, 0
    ]
