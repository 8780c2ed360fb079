import csv
import io
import json

import pytest

from almosthilbert.cli import main
from almosthilbert.suites import list_checks

FAST = ["--trials", "5"]


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestExitCodes:
    def test_pass_is_zero(self, capsys):
        code, out, _ = run_cli(["--suite", "integral", *FAST, "--format", "text"],
                               capsys)
        assert code == 0
        assert "0 failing" in out

    def test_failure_is_one(self, capsys):
        code, out, _ = run_cli(["--suite", "integral", *FAST, "--tol", "1e-30"],
                               capsys)
        assert code == 1
        assert "FAIL" in out

    def test_bad_params_is_two(self, capsys):
        code, _, err = run_cli(["--dim", "0", *FAST], capsys)
        assert code == 2
        assert "dim" in err

    def test_unknown_suite_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["--suite", "fourier"])
        assert exc.value.code == 2

    def test_io_error_is_three(self, capsys, tmp_path):
        missing = tmp_path / "no" / "such" / "dir" / "r.json"
        code, _, err = run_cli(
            ["--suite", "integral", *FAST, "--out", str(missing)], capsys)
        assert code == 3
        assert "I/O" in err


class TestListing:
    def test_list_all(self, capsys):
        code, out, _ = run_cli(["--list"], capsys)
        assert code == 0
        assert tuple(out.splitlines()) == list_checks("all")

    def test_list_single_suite(self, capsys):
        code, out, _ = run_cli(["--list", "--suite", "ks2"], capsys)
        assert code == 0
        assert tuple(out.splitlines()) == list_checks("ks2")


class TestSeeds:
    def test_explicit_seed_lands_in_report(self, capsys):
        code, out, _ = run_cli(
            ["--suite", "integral", *FAST, "--seed", "77", "--format", "json"],
            capsys)
        assert code == 0
        assert json.loads(out)["seed"] == 77

    def test_env_fallback(self, capsys, monkeypatch):
        monkeypatch.setenv("ALMOST_HILBERT_SEED", "123")
        _, out, _ = run_cli(["--suite", "integral", *FAST, "--format", "json"],
                            capsys)
        assert json.loads(out)["seed"] == 123

    def test_flag_beats_env(self, capsys, monkeypatch):
        monkeypatch.setenv("ALMOST_HILBERT_SEED", "123")
        _, out, _ = run_cli(
            ["--suite", "integral", *FAST, "--seed", "9", "--format", "json"],
            capsys)
        assert json.loads(out)["seed"] == 9

    def test_bad_env_is_usage_error(self, capsys, monkeypatch):
        monkeypatch.setenv("ALMOST_HILBERT_SEED", "pi")
        code, _, err = run_cli(["--suite", "integral", *FAST], capsys)
        assert code == 2
        assert "ALMOST_HILBERT_SEED" in err

    def test_default_seed_zero(self, capsys):
        _, out, _ = run_cli(["--suite", "integral", *FAST, "--format", "json"],
                            capsys)
        assert json.loads(out)["seed"] == 0


class TestReportDocuments:
    def test_json_schema(self, capsys, tmp_path):
        out_path = tmp_path / "report.json"
        code, _, _ = run_cli(
            ["--suite", "embedding", *FAST, "--seed", "4",
             "--format", "json", "--out", str(out_path)], capsys)
        assert code == 0
        doc = json.loads(out_path.read_text())
        assert doc["schema"] == 1
        assert doc["suite"] == "embedding"
        names = [c["name"] for c in doc["checks"]]
        assert names == sorted(names)
        for entry in doc["checks"]:
            assert set(entry) == {"name", "status", "worst_violation",
                                  "samples", "params"}
            assert entry["status"] in ("pass", "fail", "measured")

    def test_json_byte_identical_across_runs(self, capsys, tmp_path):
        paths = [tmp_path / "a.json", tmp_path / "b.json"]
        for path in paths:
            code, _, _ = run_cli(
                ["--suite", "schatten", *FAST, "--seed", "42",
                 "--format", "json", "--out", str(path)], capsys)
            assert code == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_csv_has_row_per_check(self, capsys):
        code, out, _ = run_cli(
            ["--suite", "integral", *FAST, "--format", "csv"], capsys)
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["suite", "check", "status", "worst_violation",
                           "samples", "params"]
        assert len(rows) - 1 == len(list_checks("integral"))

    def test_text_summary_line(self, capsys):
        code, out, _ = run_cli(["--suite", "ks2", *FAST], capsys)
        assert code == 0
        assert "checks, 0 failing" in out


class TestDumpCubes:
    def test_one_dim_csv(self, capsys):
        code, out, _ = run_cli(["ks2", "dump-cubes", "--n", "1", "--count", "5"],
                               capsys)
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["k", "l", "i", "center0", "side"]
        assert rows[1] == ["1", "1", "1", "0.0", "0.5"]
        assert len(rows) == 6

    def test_two_dim_header(self, capsys):
        code, out, _ = run_cli(["ks2", "dump-cubes", "--n", "2", "--count", "3"],
                               capsys)
        assert code == 0
        assert out.splitlines()[0] == "k,l,i,center0,center1,side"

    def test_three_dim_rejected(self, capsys):
        code, _, err = run_cli(["ks2", "dump-cubes", "--n", "3"], capsys)
        assert code == 2
        assert "dimensions 1 and 2" in err

    def test_zero_count_rejected(self, capsys):
        code, _, _ = run_cli(["ks2", "dump-cubes", "--count", "0"], capsys)
        assert code == 2


class TestIntegralDemo:
    @pytest.mark.parametrize("op", ["hilbert", "hilbert-pv", "riesz"])
    def test_emits_sample_pairs(self, op, capsys):
        code, out, _ = run_cli(["integral", "demo", "--op", op, "--m", "64"],
                               capsys)
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["t", "in_re", "in_im", "out_re", "out_im"]
        assert len(rows) == 65
        floats = [float(v) for v in rows[1]]
        assert len(floats) == 5

    def test_hilbert_demo_first_sample(self, capsys):
        _, out, _ = run_cli(["integral", "demo", "--op", "hilbert", "--m", "32"],
                            capsys)
        first = next(csv.reader(io.StringIO(out.splitlines()[1])))
        # H(cos 2pi t) = sin, H(0.5 sin 6pi t) = -0.5 cos at t = 0
        assert float(first[0]) == 0.0
        assert float(first[3]) == pytest.approx(-0.5, abs=1e-12)

    def test_non_power_of_two_rejected(self, capsys):
        code, _, err = run_cli(["integral", "demo", "--m", "100"], capsys)
        assert code == 2
        assert "power of two" in err

    def test_writes_file(self, capsys, tmp_path):
        out_path = tmp_path / "demo.csv"
        code, _, _ = run_cli(
            ["integral", "demo", "--op", "riesz", "--m", "32",
             "--alpha", "0.25", "--out", str(out_path)], capsys)
        assert code == 0
        assert out_path.read_text().startswith("t,in_re")
