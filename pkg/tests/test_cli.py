"""End-to-end tests of the command-line interface and its exit codes."""

import json

import numpy as np
import pytest

from copula_mi import GaussianSpec, gaussian_sample, to_csv
from copula_mi.cli import main
from copula_mi.sweep import WORKERS_ENV_VAR


@pytest.fixture()
def gauss_csv(tmp_path):
    """A rho = 0.9 bivariate Gaussian sample on disk."""
    m = gaussian_sample(GaussianSpec(rho=0.9, T=1000, seed=41))
    path = tmp_path / "gauss.csv"
    path.write_text(to_csv(m, header=["x", "y"]))
    return path


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEstimate:
    def test_copent_near_analytic(self, gauss_csv, capsys):
        code, out, _ = run_cli(capsys, "estimate", str(gauss_csv), "--header", "--k", "3")
        assert code == 0
        fields = dict(line.split(": ") for line in out.strip().splitlines())
        assert fields["method"] == "copent"
        assert abs(float(fields["mi_nats"]) - 0.8304) < 0.15
        assert fields["T"] == "1000"
        assert fields["N"] == "2"
        assert fields["k"] == "3"
        assert "mi_bits" not in fields

    def test_ksg_method(self, gauss_csv, capsys):
        code, out, _ = run_cli(capsys, "estimate", str(gauss_csv), "--header", "--method", "ksg")
        assert code == 0
        fields = dict(line.split(": ") for line in out.strip().splitlines())
        assert fields["method"] == "ksg"
        assert abs(float(fields["mi_nats"]) - 0.8304) < 0.15

    def test_bits_flag(self, gauss_csv, capsys):
        code, out, _ = run_cli(capsys, "estimate", str(gauss_csv), "--header", "--bits")
        assert code == 0
        fields = dict(line.split(": ") for line in out.strip().splitlines())
        assert float(fields["mi_bits"]) == pytest.approx(
            float(fields["mi_nats"]) / np.log(2.0), rel=1e-12
        )

    def test_json_format(self, gauss_csv, capsys):
        code, out, _ = run_cli(capsys, "estimate", str(gauss_csv), "--header", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["method"] == "copent"
        assert payload["T"] == 1000

    def test_columns_by_name(self, gauss_csv, capsys):
        code, out, _ = run_cli(
            capsys, "estimate", str(gauss_csv), "--header", "--columns", "y,x"
        )
        assert code == 0

    def test_columns_by_index_without_header(self, tmp_path, capsys):
        m = gaussian_sample(GaussianSpec(rho=0.5, T=200, seed=1))
        path = tmp_path / "plain.csv"
        path.write_text(to_csv(m))
        code, _, _ = run_cli(capsys, "estimate", str(path), "--columns", "0,1")
        assert code == 0

    def test_duplicate_columns_rejected(self, gauss_csv, capsys):
        code, _, err = run_cli(capsys, "estimate", str(gauss_csv), "--header", "--columns", "0,0")
        assert code == 1
        assert "duplicate column selection yields coincident ranks" in err

    def test_unknown_column_name(self, gauss_csv, capsys):
        code, _, err = run_cli(capsys, "estimate", str(gauss_csv), "--header", "--columns", "x,z")
        assert code == 1
        assert "no column named" in err

    def test_ksg_rejects_three_columns(self, tmp_path, capsys):
        rng = np.random.default_rng(2)
        rows = "\n".join(",".join(repr(float(v)) for v in row) for row in rng.standard_normal((60, 3)))
        path = tmp_path / "three.csv"
        path.write_text(rows + "\n")
        code, _, err = run_cli(capsys, "estimate", str(path), "--method", "ksg")
        assert code == 1
        assert "bivariate" in err

    def test_coincident_points_exit_code(self, tmp_path, capsys):
        """Duplicated raw rows reach the estimator under average ties and
        must surface as an estimation error, exit code 2."""
        path = tmp_path / "dups.csv"
        path.write_text("1,1\n1,1\n2,2\n3,4\n")
        code, _, err = run_cli(
            capsys, "estimate", str(path), "--ties", "average", "--k", "1"
        )
        assert code == 2
        assert "--ties occurrence" in err

    def test_missing_file(self, tmp_path, capsys):
        code, _, err = run_cli(capsys, "estimate", str(tmp_path / "nope.csv"))
        assert code == 1
        assert "error" in err.lower()

    def test_usage_error_exit_code(self, gauss_csv, capsys):
        with pytest.raises(SystemExit) as exc_info:
            main(["estimate", str(gauss_csv), "--method", "unknown"])
        assert exc_info.value.code == 1


class TestEntropy:
    def test_standard_normal_column(self, tmp_path, capsys):
        m = gaussian_sample(GaussianSpec(rho=0.0, T=5000, seed=13))
        path = tmp_path / "norm.csv"
        path.write_text(to_csv(m))
        code, out, _ = run_cli(capsys, "entropy", str(path), "--columns", "0")
        assert code == 0
        fields = dict(line.split(": ") for line in out.strip().splitlines())
        assert abs(float(fields["entropy_nats"]) - 1.4189385) < 0.05
        assert fields["method"] == "kozachenko_leonenko"
        assert fields["d"] == "1"

    def test_copula_flag_on_independent_data(self, tmp_path, capsys):
        m = gaussian_sample(GaussianSpec(rho=0.0, T=1000, seed=14))
        path = tmp_path / "indep.csv"
        path.write_text(to_csv(m))
        code, out, _ = run_cli(capsys, "entropy", str(path), "--copula")
        assert code == 0
        fields = dict(line.split(": ") for line in out.strip().splitlines())
        assert fields["method"] == "copula_entropy"
        assert abs(float(fields["entropy_nats"])) < 0.15

    def test_empty_file_is_parse_error(self, tmp_path, capsys):
        path = tmp_path / "empty.csv"
        path.write_text("")
        code, _, err = run_cli(capsys, "entropy", str(path))
        assert code == 1
        assert "at least 2" in err


class TestSweep:
    def test_writes_csv_with_exact_header(self, tmp_path, capsys):
        out_path = tmp_path / "sweep.csv"
        code, _, _ = run_cli(
            capsys, "sweep", "--rho-min", "0", "--rho-max", "0.2", "--rho-step", "0.1",
            "--samples", "120", "--trials", "3", "--seed", "5", "--output", str(out_path),
        )
        assert code == 0
        lines = out_path.read_text().splitlines()
        assert lines[1] == "rho,analytic_mi,copent_mean,copent_sd,ksg_mean,ksg_sd"
        assert len(lines) == 5

    def test_rho_grid_avoids_float_drift(self, tmp_path, capsys):
        out_path = tmp_path / "grid.csv"
        code, _, _ = run_cli(
            capsys, "sweep", "--rho-min", "0", "--rho-max", "0.9", "--rho-step", "0.1",
            "--samples", "50", "--trials", "1", "--seed", "5", "--output", str(out_path),
        )
        assert code == 0
        rhos = [line.split(",")[0] for line in out_path.read_text().splitlines()[2:]]
        assert rhos == ["0.0", "0.1", "0.2", "0.3", "0.4", "0.5", "0.6", "0.7", "0.8", "0.9"]

    def test_stdout_when_no_output_path(self, capsys):
        code, out, _ = run_cli(
            capsys, "sweep", "--rho-min", "0.5", "--rho-max", "0.5", "--rho-step", "0.1",
            "--samples", "80", "--trials", "2", "--seed", "9",
        )
        assert code == 0
        assert out.splitlines()[1] == "rho,analytic_mi,copent_mean,copent_sd,ksg_mean,ksg_sd"

    def test_json_format(self, tmp_path, capsys):
        out_path = tmp_path / "sweep.json"
        code, _, _ = run_cli(
            capsys, "sweep", "--rho-min", "0", "--rho-max", "0.1", "--rho-step", "0.1",
            "--samples", "100", "--trials", "2", "--seed", "3",
            "--format", "json", "--output", str(out_path),
        )
        assert code == 0
        payload = json.loads(out_path.read_text())
        assert [row["rho"] for row in payload["rows"]] == [0.0, 0.1]

    def test_byte_identical_across_runs_and_worker_counts(self, tmp_path, capsys, monkeypatch):
        paths = [tmp_path / f"run{i}.csv" for i in range(2)]
        for path, workers in zip(paths, ["1", "5"]):
            monkeypatch.setenv(WORKERS_ENV_VAR, workers)
            code, _, _ = run_cli(
                capsys, "sweep", "--rho-min", "0", "--rho-max", "0.3", "--rho-step", "0.1",
                "--samples", "100", "--trials", "3", "--seed", "77", "--output", str(path),
            )
            assert code == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_bad_step_rejected(self, capsys):
        code, _, err = run_cli(
            capsys, "sweep", "--rho-min", "0", "--rho-max", "0.5", "--rho-step", "-0.1"
        )
        assert code == 1
        assert "rho-step" in err

    def test_unwritable_output_path(self, tmp_path, capsys):
        code, _, err = run_cli(
            capsys, "sweep", "--rho-min", "0", "--rho-max", "0", "--rho-step", "0.1",
            "--samples", "60", "--trials", "1", "--seed", "2",
            "--output", str(tmp_path / "no" / "such" / "dir.csv"),
        )
        assert code == 1
        assert "error" in err.lower()


class TestParserBehavior:
    def test_unknown_subcommand_exits_one(self):
        with pytest.raises(SystemExit) as exc_info:
            main(["frobnicate"])
        assert exc_info.value.code == 1

    def test_missing_subcommand_exits_one(self):
        with pytest.raises(SystemExit) as exc_info:
            main([])
        assert exc_info.value.code == 1
