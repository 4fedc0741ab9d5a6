"""CLI commands run against the in-process service transport."""

import json

import pytest
from click.testing import CliRunner

from torusqi.cli import main
from torusqi.experiments import config_hash


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def config_file(tmp_path):
    cfg = {
        "label": "cliunit",
        "kernel": {"variant": "dirichlet", "params": {}},
        "functional": {"variant": "delta", "params": {}},
        "lattice": {"diag": [2]},
        "j_range": [2, 4],
        "p_values": [2.0],
        "test_function": {"kind": "power", "alpha": 2.0, "cutoff": 64},
        "comparators": ["best_approx"],
    }
    path = tmp_path / "study.json"
    path.write_text(json.dumps(cfg))
    return path


def test_ratecheck_writes_csv(runner, config_file, tmp_path):
    out = tmp_path / "out"
    result = runner.invoke(
        main, ["ratecheck", "--config", str(config_file), "--out", str(out)]
    )
    assert result.exit_code == 0, result.output
    assert "wrote" in result.output and "decay order" in result.output
    text = (out / "cliunit.csv").read_text()
    lines = text.splitlines()
    assert lines[0] == "j,p,error,comparator,ratio,slope,tag"
    assert len(lines) == 1 + 3 + 1  # header, three cells, one slope row


def test_ratecheck_json_format(runner, config_file, tmp_path):
    out = tmp_path / "out"
    result = runner.invoke(
        main,
        ["ratecheck", "--config", str(config_file), "--out", str(out), "--format", "json"],
    )
    assert result.exit_code == 0, result.output
    body = json.loads((out / "cliunit.json").read_text())
    assert body["metadata"]["study"] == "rate"
    assert body["metadata"]["config_hash"] == config_hash(body["metadata"]["config"])


def test_seed_and_oversample_flags(runner, config_file, tmp_path):
    out = tmp_path / "out"
    result = runner.invoke(
        main,
        [
            "ratecheck", "--config", str(config_file), "--out", str(out),
            "--format", "json", "--seed", "42", "--oversample", "8",
        ],
    )
    assert result.exit_code == 0, result.output
    cfg = json.loads((out / "cliunit.json").read_text())["metadata"]["config"]
    assert (cfg["seed"], cfg["oversample"]) == (42, 8)


def test_equivcheck_echoes_brackets(runner, config_file, tmp_path):
    result = runner.invoke(
        main, ["equivcheck", "--config", str(config_file), "--out", str(tmp_path)]
    )
    assert result.exit_code == 0, result.output
    assert "bracket-min" in result.output and "bracket-max" in result.output
    assert (tmp_path / "cliunit.csv").exists()


def test_symbolcheck_runs(runner, tmp_path):
    cfg = {
        "label": "symunit",
        "kernel": {"variant": "dirichlet", "params": {}},
        "functional": {"variant": "average", "params": {"sigma": 0.5}},
        "lattice": {"diag": [2]},
        "j_range": [4, 5],
        "p_values": [2.0],
        "test_function": {"kind": "pure", "frequency": [1]},
    }
    path = tmp_path / "sym.json"
    path.write_text(json.dumps(cfg))
    result = runner.invoke(
        main, ["symbolcheck", "--config", str(path), "--out", str(tmp_path)]
    )
    assert result.exit_code == 0, result.output
    lines = (tmp_path / "symunit.csv").read_text().splitlines()
    assert any("compat_radius" in line for line in lines[1:])


def test_invalid_config_is_a_clean_error(runner, tmp_path):
    path = tmp_path / "bad.json"
    cfg = {
        "label": "bad",
        "kernel": {"variant": "dirichlet", "params": {}},
        "functional": {"variant": "delta", "params": {}},
        "lattice": {"diag": [2]},
        "j_range": [0, 3],
        "p_values": [2.0],
        "test_function": {"kind": "pure", "frequency": [1]},
    }
    path.write_text(json.dumps(cfg))
    result = runner.invoke(main, ["ratecheck", "--config", str(path)])
    assert result.exit_code == 1
    assert "422" in result.output


def test_missing_config_file(runner):
    result = runner.invoke(main, ["ratecheck", "--config", "nope.json"])
    assert result.exit_code == 2


def test_reproduce_single_example(runner, tmp_path):
    result = runner.invoke(
        main, ["reproduce", "--example", "e1_dirichlet_rate", "--out", str(tmp_path)]
    )
    assert result.exit_code == 0, result.output
    text = (tmp_path / "e1_dirichlet_rate.csv").read_text()
    assert text.startswith("j,p,error,comparator,ratio,slope,tag")


def test_reproduce_unknown_example(runner, tmp_path):
    result = runner.invoke(
        main, ["reproduce", "--example", "e0_bogus", "--out", str(tmp_path)]
    )
    assert result.exit_code == 1
    assert "e0_bogus" in result.output


def test_reproduce_all_examples(runner, tmp_path):
    result = runner.invoke(
        main, ["reproduce", "--out", str(tmp_path), "--format", "json"]
    )
    assert result.exit_code == 0, result.output
    written = sorted(p.name for p in tmp_path.glob("*.json"))
    assert written == [
        "e1_dirichlet_rate.json",
        "e2_corrected_vs_best.json",
        "e3_average_vs_modulus.json",
        "e4_average_plane.json",
        "e5_discrete_weights.json",
        "e6_riesz_k_functional.json",
    ]
