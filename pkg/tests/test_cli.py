import csv
import io

import pytest

from geophase.cli import EXIT_OK, EXIT_OUTPUT, EXIT_USAGE, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse(text):
    return list(csv.reader(io.StringIO(text)))


class TestPhase:
    def test_theta_zero_row(self, capsys):
        code, out, _ = run_cli(capsys, "phase", "--model", "markovian", "--gamma2", "1", "--theta", "0")
        assert code == EXIT_OK
        assert out == (
            "model,params,theta_over_pi,gp_principal_over_pi,gp_unwrapped_over_pi,visibility\n"
            "markovian,gamma2=1;omega=1,0,0,0,1\n"
        )

    def test_weak_damping(self, capsys):
        code, out, _ = run_cli(
            capsys, "phase", "--model", "markovian", "--gamma2", "1e-12", "--theta", "0.333333pi",
        )
        assert code == EXIT_OK
        row = parse(out)[1]
        assert float(row[3]) == pytest.approx(-0.5, abs=1e-5)

    def test_fast_kernels_agree(self, capsys):
        values = []
        for model in ("post", "memory"):
            code, out, _ = run_cli(
                capsys, "phase", "--model", model, "--gamma0", "0.1", "--gamma", "10", "--theta", "0.5pi",
            )
            assert code == EXIT_OK
            values.append(float(parse(out)[1][3]))
        assert abs(values[0] - values[1]) < 0.01

    def test_writes_file(self, capsys, tmp_path):
        path = tmp_path / "phase.csv"
        code, out, _ = run_cli(
            capsys, "phase", "--model", "correlated", "--gamma", "0.1", "--theta", "1.0", "--output", str(path),
        )
        assert code == EXIT_OK
        assert out == ""
        assert parse(path.read_text())[1][:2] == ["correlated", "gamma=0.1;omega=1"]

    @pytest.mark.parametrize("argv", [
        ["--model", "markovian", "--theta", "0.5pi"],
        ["--model", "markovian", "--gamma2", "1", "--gamma", "1", "--theta", "0.5pi"],
        ["--model", "markovian", "--gamma2", "1", "--theta", "2pi"],
        ["--model", "lindblad", "--gamma2", "1", "--theta", "0.5pi"],
        ["--model", "markovian", "--gamma2", "1", "--theta", "0.5pi", "--steps", "2001"],
        ["--model", "markovian", "--gamma2", "-1", "--theta", "0.5pi"],
        ["--model", "markovian", "--gamma2", "1", "--theta", "half"],
    ])
    def test_bad_input_exits_two(self, capsys, argv):
        code, out, err = run_cli(capsys, "phase", *argv)
        assert code == EXIT_USAGE
        assert out == ""
        assert err

    def test_unwritable_output_exits_three(self, capsys, tmp_path):
        path = tmp_path / "missing" / "phase.csv"
        code, _, err = run_cli(
            capsys, "phase", "--model", "markovian", "--gamma2", "1", "--theta", "1", "--output", str(path),
        )
        assert code == EXIT_OUTPUT
        assert "geophase: error" in err


class TestSweep:
    def test_single_point(self, capsys):
        code, out, _ = run_cli(
            capsys, "sweep", "--model", "memory", "--gamma0", "1", "--gamma", "1",
            "--theta-start", "0.5pi", "--theta-end", "0.5pi", "--theta-count", "1",
        )
        assert code == EXIT_OK
        rows = parse(out)
        assert len(rows) == 2
        assert rows[1][2] == "0.5"

    def test_deterministic_across_threads(self, capsys):
        argv = ["sweep", "--model", "post", "--gamma0", "1", "--gamma", "0.1", "--theta-count", "25"]
        outputs = []
        for threads in ("1", "1", "4"):
            code, out, _ = run_cli(capsys, *argv, "--threads", threads)
            assert code == EXIT_OK
            outputs.append(out)
        assert outputs[0] == outputs[1] == outputs[2]
        assert len(parse(outputs[0])) == 26

    def test_threads_validated(self, capsys):
        code, _, _ = run_cli(capsys, "sweep", "--model", "markovian", "--gamma2", "1", "--threads", "0")
        assert code == EXIT_USAGE


class TestFigures:
    def test_writes_six_reproducible_datasets(self, capsys, tmp_path):
        first, second = tmp_path / "a", tmp_path / "b"
        for directory in (first, second):
            code, _, _ = run_cli(capsys, "figures", "--output", str(directory))
            assert code == EXIT_OK

        names = sorted(p.name for p in first.iterdir())
        assert names == [
            "fig2_bottom.csv", "fig2_top.csv", "fig3_bottom.csv", "fig3_top.csv", "fig4_bottom.csv", "fig4_top.csv",
        ]
        for name in names:
            text = (first / name).read_text()
            assert text == (second / name).read_text()
            rows = parse(text)
            assert len(rows) == 100
            assert rows[0][0] == "theta_over_pi"
            assert all(len(row) == len(rows[0]) for row in rows)

    def test_output_is_a_file(self, capsys, tmp_path):
        blocker = tmp_path / "taken"
        blocker.write_text("x")
        code, _, _ = run_cli(capsys, "figures", "--output", str(blocker))
        assert code == EXIT_OUTPUT


class TestValidate:
    def test_unknown_override(self, capsys):
        code, _, err = run_cli(capsys, "validate", "--set", "bogus=1")
        assert code == EXIT_USAGE
        assert "bogus" in err

    def test_malformed_override(self, capsys):
        code, _, _ = run_cli(capsys, "validate", "--set", "trace_drift")
        assert code == EXIT_USAGE

    @pytest.mark.slow
    def test_quick_run_passes(self, capsys):
        code, out, _ = run_cli(capsys, "validate", "--quick", "--threads", "4")
        assert code == EXIT_OK, out
        assert "PASS" in out


def test_usage_errors(capsys):
    assert main([]) == EXIT_USAGE
    assert main(["phase"]) == EXIT_USAGE
    assert main(["--version"]) == EXIT_OK
