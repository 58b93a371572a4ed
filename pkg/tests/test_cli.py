"""Command-line interface: exit codes, output formats, determinism."""

from __future__ import annotations

import json

import pytest

from corrlab.cli import main
from corrlab.report import read_csv


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestExitCodes:
    def test_no_subcommand_is_usage_error(self, capsys):
        code, _, err = run(capsys)
        assert code == 1
        assert err.startswith("error: code=USAGE")

    def test_unknown_subcommand(self, capsys):
        code, _, err = run(capsys, "frobnicate")
        assert code == 1
        assert err.startswith("error: code=USAGE")

    def test_unknown_kind(self, capsys):
        code, _, err = run(capsys, "sieve", "--kind", "nope", "--limit", "10")
        assert code == 1
        assert "USAGE" in err

    def test_computation_error_is_exit_2(self, capsys):
        code, _, err = run(capsys, "minoverlap", "--n", "30", "--exact")
        assert code == 2
        assert err.startswith("error: code=CAP")
        assert err.count("\n") == 1  # exactly one stderr line

    def test_help_exits_zero(self, capsys):
        assert run(capsys, "--help")[0] == 0
        assert run(capsys, "sieve", "--help")[0] == 0

    def test_version(self, capsys):
        code, out, _ = run(capsys, "--version")
        assert code == 0


class TestSieve:
    def test_summary_line(self, capsys):
        code, out, _ = run(capsys, "sieve", "--kind", "musquared", "--limit", "100")
        assert code == 0
        assert "sum=61" in out

    def test_dump(self, capsys, tmp_path):
        out_file = tmp_path / "table.csv"
        code, _, _ = run(
            capsys, "sieve", "--kind", "one", "--limit", "5", "--out", str(out_file)
        )
        assert code == 0
        table = read_csv(out_file)
        assert table.header == ("n", "value")
        assert table.rows == ((1, 1), (2, 1), (3, 1), (4, 1), (5, 1))


class TestIdentityCheck:
    def test_exact_kind(self, capsys):
        code, out, _ = run(capsys, "identity-check", "--kind", "divisor", "--x", "100")
        assert code == 0
        assert "lhs=rhs" in out

    def test_float_kind(self, capsys):
        code, out, _ = run(
            capsys, "identity-check", "--kind", "vonmangoldt", "--x", "200"
        )
        assert code == 0

    def test_exact_flag_rejected_for_float_kind(self, capsys):
        code, _, err = run(
            capsys, "identity-check", "--kind", "vonmangoldt", "--x", "50", "--exact"
        )
        assert code == 1
        assert "USAGE" in err


class TestCorrelate:
    def test_requires_shift_or_type2(self, capsys):
        code, _, err = run(capsys, "correlate", "--kind", "one", "--x", "10")
        assert code == 1

    def test_csv_schema(self, capsys, tmp_path):
        out_file = tmp_path / "corr.csv"
        code, out, _ = run(
            capsys,
            "correlate",
            "--kind", "musquared",
            "--x", "100",
            "--shift", "1,2",
            "--type2",
            "--out", str(out_file),
        )
        assert code == 0
        table = read_csv(out_file)
        assert table.header == ("kind", "x", "shift", "value", "terms")
        shifts = [row[2] for row in table.rows]
        assert shifts == ["type2", 1, 2]

    def test_stdout_values(self, capsys):
        code, out, _ = run(
            capsys, "correlate", "--kind", "one", "--x", "10", "--shift", "1"
        )
        assert code == 0
        assert "value=10" in out


class TestConstants:
    def test_line(self, capsys):
        code, out, _ = run(capsys, "constants", "--kind", "one", "--x", "10")
        assert code == 0
        for token in ("c_min=", "c_max=", "local_density=", "d_of_x=", "diagonal_ratio="):
            assert token in out


class TestClaims:
    def test_small_run_writes_files(self, capsys, tmp_path):
        code, out, _ = run(
            capsys,
            "claims",
            "--claims", "thm3.1-twin,cor6.4-musq",
            "--grid", "100,1000,2000",
            "--out-dir", str(tmp_path),
            "--no-svg",
        )
        assert code == 0
        claims = read_csv(tmp_path / "claims.csv")
        assert claims.header == ("claim", "x", "computed", "bound", "constant", "verdict")
        assert len(claims.rows) == 6
        report = json.loads((tmp_path / "report.json").read_text())
        assert set(report) == {"meta", "tables", "claims"}
        assert len(report["claims"]) == 2

    def test_unknown_claim_is_computation_error(self, capsys, tmp_path):
        code, _, err = run(
            capsys,
            "claims",
            "--claims", "nope",
            "--grid", "100,1000,2000",
            "--out-dir", str(tmp_path),
        )
        assert code == 2
        assert "UNKNOWNCLAIM" in err

    def test_bad_grid_is_usage_error(self, capsys, tmp_path):
        code, _, err = run(
            capsys,
            "claims",
            "--grid", "100,50",
            "--out-dir", str(tmp_path),
        )
        assert code == 1

    def test_svg_emitted_by_default(self, capsys, tmp_path):
        code, _, _ = run(
            capsys,
            "claims",
            "--claims", "cor6.4-musq",
            "--grid", "100,1000,2000",
            "--out-dir", str(tmp_path),
        )
        assert code == 0
        assert (tmp_path / "claim-cor6.4-musq.svg").exists()


class TestMinoverlap:
    def test_exact(self, capsys, tmp_path):
        out_file = tmp_path / "mo.csv"
        code, out, _ = run(
            capsys, "minoverlap", "--n", "8", "--exact", "--out", str(out_file)
        )
        assert code == 0
        assert "method=exhaustive" in out
        table = read_csv(out_file)
        assert table.header == ("n", "method", "M", "witness", "bound", "bound_value", "ok")
        assert all(row[0] == 8 for row in table.rows)

    def test_heuristic_deterministic(self, capsys):
        _, out_a, _ = run(capsys, "minoverlap", "--n", "30", "--seed", "4", "--budget", "20000")
        _, out_b, _ = run(capsys, "minoverlap", "--n", "30", "--seed", "4", "--budget", "20000")
        assert out_a == out_b


class TestReport:
    def test_full_pipeline_deterministic(self, capsys, tmp_path):
        a_dir, b_dir = tmp_path / "a", tmp_path / "b"
        for d, threads in ((a_dir, "1"), (b_dir, "2")):
            code, _, _ = run(
                capsys,
                "report",
                "--grid", "100,1000,2000",
                "--out-dir", str(d),
                "--threads", threads,
                "--no-svg",
            )
            assert code == 0
        assert (a_dir / "correlations.csv").read_bytes() == (
            b_dir / "correlations.csv"
        ).read_bytes()
        assert (a_dir / "claims.csv").read_bytes() == (b_dir / "claims.csv").read_bytes()
        ja = json.loads((a_dir / "report.json").read_text())
        jb = json.loads((b_dir / "report.json").read_text())
        ja["meta"].pop("timestamp")
        jb["meta"].pop("timestamp")
        assert ja == jb

    def test_config_file(self, capsys, tmp_path):
        cfg = tmp_path / "exp.cfg"
        cfg.write_text("x_grid = 100,1000,2000\nkinds = musquared\nclaims = cor6.4-musq\n")
        code, out, _ = run(
            capsys,
            "report",
            "--config", str(cfg),
            "--out-dir", str(tmp_path / "out"),
            "--no-svg",
        )
        assert code == 0
        corr = read_csv(tmp_path / "out" / "correlations.csv")
        assert {row[0] for row in corr.rows} == {"musquared"}

    def test_missing_config_is_usage_error(self, capsys, tmp_path):
        code, _, err = run(capsys, "report", "--config", str(tmp_path / "nope.cfg"))
        assert code == 1
