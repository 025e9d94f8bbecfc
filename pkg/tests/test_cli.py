import subprocess
import sys
from pathlib import Path

from cantorshift.cli import main

PKG_ROOT = Path(__file__).resolve().parent.parent


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "cantorshift", *args],
        capture_output=True,
        text=True,
        cwd=PKG_ROOT,
    )


class TestEval:
    def test_identity_third(self):
        out = run_cli("eval", "q=2;p=0.5,0.5", "1/3")
        assert out.returncode == 0
        assert out.stdout.strip() == "0.333333333333"
        assert "truncation depth" in out.stderr

    def test_digit_notation_input(self):
        out = run_cli("eval", "q=2;p=0.3,0.7", "q2:[1]:zeros")
        assert out.returncode == 0
        assert out.stdout.strip() == "0.3"

    def test_weights_must_sum_to_one(self):
        out = run_cli("eval", "q=2;p=0.3,0.8", "1/2")
        assert out.returncode == 2
        assert "sum" in out.stderr

    def test_base_mismatch(self):
        out = run_cli("eval", "q=2;p=0.5,0.5", "q3:[1]:zeros")
        assert out.returncode == 2

    def test_bad_tol(self):
        out = run_cli("eval", "q=2;p=0.5,0.5", "1/2", "--tol", "0")
        assert out.returncode == 2


class TestCurve:
    def test_small_grid(self, tmp_path):
        out_path = tmp_path / "curve.csv"
        out = run_cli("curve", "q=2;p=0.3,0.7", "--grid", "2", "--out", str(out_path))
        assert out.returncode == 0
        lines = out_path.read_text().splitlines()
        assert lines[0].startswith("#")
        assert lines[1] == "x,g"
        assert lines[2:] == ["0,0", "0.5,0.3", "1,1"]

    def test_identity_grid(self, tmp_path):
        out_path = tmp_path / "curve.csv"
        run_cli("curve", "q=2;p=0.5,0.5", "--grid", "4", "--out", str(out_path))
        rows = [line.split(",") for line in out_path.read_text().splitlines()[2:]]
        assert rows == [["0", "0"], ["0.25", "0.25"], ["0.5", "0.5"], ["0.75", "0.75"], ["1", "1"]]

    def test_deterministic_bytes(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run_cli("curve", "q=3;p=1/5,2/5,2/5", "--grid", "7", "--out", str(a))
        run_cli("curve", "q=3;p=1/5,2/5,2/5", "--grid", "7", "--out", str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_grid_guard(self, tmp_path):
        out = run_cli("curve", "q=2;p=0.5,0.5", "--grid", "1", "--out", str(tmp_path / "x.csv"))
        assert out.returncode == 2

    def test_unwritable_path(self):
        out = run_cli("curve", "q=2;p=0.5,0.5", "--grid", "2", "--out", "/nonexistent-dir/x.csv")
        assert out.returncode == 3


class TestVerify:
    def test_known_suite_passes(self):
        out = run_cli("verify", "schedule")
        assert out.returncode == 0
        assert "PASS" in out.stdout and "FAIL" not in out.stdout

    def test_unknown_suite(self):
        out = run_cli("verify", "nosuchsuite")
        assert out.returncode == 2

    def test_integral_with_spec(self):
        out = run_cli("verify", "integral", "--spec", "q=2;p=0.3,0.7")
        assert out.returncode == 0
        assert "FAIL" not in out.stdout


class TestMeasure:
    def test_iter_shift_table(self, tmp_path):
        cfg = tmp_path / "exp.cfg"
        out_csv = tmp_path / "rows.csv"
        cfg.write_text(
            "family = itershift\nq = 2\nn = 1..5\nx = 1/3\nout = %s\n" % out_csv
        )
        out = run_cli("measure", str(cfg))
        assert out.returncode == 0
        lines = out_csv.read_text().strip().splitlines()
        assert len(lines) == 6
        assert all(line.split(",")[4:7] == ["1", "3", "exact"] for line in lines[1:])

    def test_compare_iter_row(self, tmp_path):
        cfg = tmp_path / "exp.cfg"
        out_csv = tmp_path / "rows.csv"
        cfg.write_text("family = compareiter\nq = 2\na = 2\nb = 1\nout = %s\n" % out_csv)
        out = run_cli("measure", str(cfg))
        assert out.returncode == 0
        lines = out_csv.read_text().strip().splitlines()
        assert len(lines) == 2
        assert lines[1].split(",")[4:7] == ["1", "2", "exact"]

    def test_threshold_from_shifted_point(self, tmp_path):
        cfg = tmp_path / "exp.cfg"
        out_csv = tmp_path / "rows.csv"
        cfg.write_text(
            "family = itershift\nq = 2\nn = 1..2\n"
            "threshold_point = q2:[1,0,1]:zeros\nthreshold_iter = 1\nout = %s\n" % out_csv
        )
        out = run_cli("measure", str(cfg))
        assert out.returncode == 0
        lines = out_csv.read_text().strip().splitlines()
        # sigma(0.101b) = 0.01b = 1/4; shifts preserve measure
        assert lines[1].split(",")[2:6] == ["1", "4", "1", "4"]

    def test_malformed_config(self, tmp_path):
        cfg = tmp_path / "exp.cfg"
        cfg.write_text("family = itershift\nq = 2\nn = 1..3\nbogus = 1\n")
        out = run_cli("measure", str(cfg))
        assert out.returncode == 2

    def test_budget_without_fallback(self, tmp_path):
        cfg = tmp_path / "exp.cfg"
        cfg.write_text(
            "family = itershift\nq = 2\nn = 9..9\nx = 1/3\nfallback = false\nout = %s\n"
            % (tmp_path / "r.csv")
        )
        out = run_cli("measure", str(cfg))
        assert out.returncode == 4

    def test_missing_config_is_io_error(self, tmp_path):
        out = run_cli("measure", str(tmp_path / "missing.cfg"))
        assert out.returncode == 3


class TestMainEntry:
    def test_in_process_eval(self, capsys):
        code = main(["eval", "q=2;p=0.5,0.5", "0.25"])
        captured = capsys.readouterr()
        assert code == 0
        assert captured.out.strip() == "0.25"
