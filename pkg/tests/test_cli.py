import math
import subprocess
import sys

import pytest

from layered_bpsk.cli import main
from layered_bpsk.rates import LOG2_E


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _rows(text):
    lines = text.strip("\n").split("\n")
    header = lines[0].split(",")
    return header, [line.split(",") for line in lines[1:]]


class TestRateSweep:
    def test_header_and_shape(self, capsys):
        code, out, err = _run(capsys, "rate-sweep", "--min-db", "-4", "--max-db", "-2",
                              "--step-db", "1", "--ratio", "2", "--ratio", "4")
        assert code == 0 and err == ""
        header, rows = _rows(out)
        assert header == ["ebn0_db", "ratio", "r_z_bits_per_hz", "r_x_bits_per_hz",
                          "r_1_bits_per_hz", "r_2_bits_per_hz", "bpsk_rate_bits_per_hz",
                          "qpsk_rate_bits_per_hz", "capacity_bits_per_hz",
                          "exact_mi_bits_per_hz"]
        assert len(rows) == 4  # 2 ratios x 2 grid points, ratio-major
        assert [row[1] for row in rows] == ["2", "2", "4", "4"]

    def test_empty_grid_gives_header_only(self, capsys):
        code, out, _ = _run(capsys, "rate-sweep", "--min-db", "5", "--max-db", "5",
                            "--step-db", "1")
        assert code == 0
        assert out.count("\n") == 1
        assert out.endswith("\n")

    def test_layered_rate_beats_bpsk_at_low_snr(self, capsys):
        code, out, _ = _run(capsys, "rate-sweep", "--axis", "snr_db", "--min-db", "-20",
                            "--max-db", "-10", "--step-db", "2", "--ratio", "2",
                            "--ratio", "4")
        assert code == 0
        _, rows = _rows(out)
        for row in rows:
            assert float(row[4]) > float(row[6])  # r_1 > bpsk_rate

    def test_snr_axis_echoes_grid(self, capsys):
        _, out, _ = _run(capsys, "rate-sweep", "--axis", "snr_db", "--min-db", "0",
                         "--max-db", "2", "--step-db", "1", "--ratio", "2")
        _, rows = _rows(out)
        assert [row[0] for row in rows] == ["0", "1"]

    def test_rate_columns_internally_consistent(self, capsys):
        _, out, _ = _run(capsys, "rate-sweep", "--axis", "snr_db", "--min-db", "-10",
                         "--max-db", "0", "--step-db", "5", "--ratio", "4")
        _, rows = _rows(out)
        for row in rows:
            r_z, r_x, r_1, r_2 = (float(v) for v in row[2:6])
            assert r_1 == pytest.approx(r_z + r_x, abs=1e-10)
            assert r_2 == pytest.approx(2.0 * r_1, abs=1e-10)
            assert all(float(v) >= 0.0 for v in row[2:])

    def test_high_snr_saturation(self, capsys):
        # alpha/sigma >= 20 at ratio 2 corresponds to ~26.3 dB received SNR.
        _, out, _ = _run(capsys, "rate-sweep", "--axis", "snr_db", "--min-db", "28",
                         "--max-db", "29", "--step-db", "1", "--ratio", "2")
        _, rows = _rows(out)
        assert float(rows[0][4]) == pytest.approx(2.0, abs=1e-2)
        assert float(rows[0][5]) == pytest.approx(4.0, abs=2e-2)

    def test_determinism(self, capsys):
        argv = ("rate-sweep", "--min-db", "-6", "--max-db", "-4", "--step-db", "0.5")
        _, first, _ = _run(capsys, *argv)
        _, second, _ = _run(capsys, *argv)
        assert first == second

    def test_writes_file(self, capsys, tmp_path):
        out_path = tmp_path / "sweep.csv"
        code, out, _ = _run(capsys, "rate-sweep", "--min-db", "0", "--max-db", "1",
                            "--step-db", "1", "--ratio", "2", "--out", str(out_path))
        assert code == 0 and out == ""
        content = out_path.read_bytes()
        assert content.endswith(b"\n") and b"\r" not in content


class TestCapacityGap:
    def test_low_snr_gap_positive_for_ratio_four(self, capsys):
        code, out, _ = _run(capsys, "capacity-gap", "--axis", "snr_db", "--min-db",
                            "-20", "--max-db", "-14", "--step-db", "2", "--ratio", "4")
        assert code == 0
        _, rows = _rows(out)
        for row in rows:
            assert float(row[2]) > 0.0
            assert float(row[3]) > 0.0

    def test_high_snr_gap_negative(self, capsys):
        _, out, _ = _run(capsys, "capacity-gap", "--axis", "snr_db", "--min-db", "15",
                         "--max-db", "16", "--step-db", "1", "--ratio", "4")
        _, rows = _rows(out)
        assert float(rows[0][2]) < 0.0
        assert float(rows[0][3]) < 0.0

    def test_gaps_vanish_with_snr(self, capsys):
        _, out, _ = _run(capsys, "capacity-gap", "--axis", "snr_db", "--min-db", "-80",
                         "--max-db", "-79", "--step-db", "1", "--ratio", "4")
        _, rows = _rows(out)
        assert abs(float(rows[0][2])) < 1e-6
        assert abs(float(rows[0][3])) < 1e-6


class TestAppendix:
    def test_columns_and_slopes(self, capsys):
        code, out, _ = _run(capsys, "appendix", "--min-db", "-31", "--max-db", "-29",
                            "--step-db", "0.5")
        assert code == 0
        header, rows = _rows(out)
        assert header[0] == "snr_linear"
        # Around rho = 1e-3 every slope column sits within 1% of log2(e).
        for row in rows:
            for column in (4, 5, 6):
                assert abs(float(row[column]) - LOG2_E) / LOG2_E < 0.01

    def test_capacity_column_exact(self, capsys):
        _, out, _ = _run(capsys, "appendix", "--min-db", "-10", "--max-db", "-8",
                         "--step-db", "1")
        _, rows = _rows(out)
        for row in rows:
            rho = float(row[0])
            assert float(row[1]) == pytest.approx(math.log2(1.0 + rho), rel=1e-10)

    def test_rates_vanish_at_low_snr(self, capsys):
        _, out, _ = _run(capsys, "appendix", "--min-db", "-40", "--max-db", "-38",
                         "--step-db", "1")
        _, rows = _rows(out)
        for row in rows:
            for column in (1, 2, 3):
                assert 0.0 < float(row[column]) < 1e-3


class TestBer:
    ARGS = ("ber", "--min-db", "-2", "--max-db", "0", "--step-db", "1",
            "--symbols", "50000", "--mode", "genie-aided", "--seed", "99")

    def test_predictions_within_reported_ci(self, capsys):
        code, out, _ = _run(capsys, *self.ARGS)
        assert code == 0
        header, rows = _rows(out)
        assert header == ["snr_db", "mode", "ber_z", "ber_x", "ber_z_pred",
                          "ber_x_pred", "ci_radius", "seed"]
        for row in rows:
            assert row[1] == "genie-aided"
            assert row[7] == "99"
            ci = float(row[6])
            assert abs(float(row[2]) - float(row[4])) <= ci
            assert abs(float(row[3]) - float(row[5])) <= ci

    def test_seed_determinism(self, capsys):
        _, first, _ = _run(capsys, *self.ARGS)
        _, second, _ = _run(capsys, *self.ARGS)
        assert first == second

    def test_worker_count_does_not_change_bytes(self, capsys):
        _, first, _ = _run(capsys, *self.ARGS, "--workers", "1")
        _, second, _ = _run(capsys, *self.ARGS, "--workers", "4")
        assert first == second

    def test_small_symbol_count_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["ber", "--symbols", "100"])
        assert excinfo.value.code == 2


def test_module_entry_point_matches_in_process_output(capsys):
    argv = ["rate-sweep", "--min-db", "0", "--max-db", "1", "--step-db", "1",
            "--ratio", "2"]
    assert main(argv) == 0
    expected = capsys.readouterr().out
    result = subprocess.run([sys.executable, "-m", "layered_bpsk.cli", *argv],
                            capture_output=True, text=True, check=True)
    assert result.stdout == expected


class TestFailureModes:
    def test_zero_step_rejected(self, capsys):
        code, out, err = _run(capsys, "rate-sweep", "--step-db", "0")
        assert code == 1
        assert out == ""
        assert err.startswith("layered-bpsk: error:") and err.count("\n") == 1

    def test_min_above_max_rejected(self, capsys):
        code, _, err = _run(capsys, "rate-sweep", "--min-db", "5", "--max-db", "0")
        assert code == 1 and "min-db" in err

    def test_bad_ratio_rejected(self, capsys):
        code, _, err = _run(capsys, "rate-sweep", "--ratio", "1.0",
                            "--min-db", "0", "--max-db", "1", "--step-db", "1")
        assert code == 1 and "ratio" in err

    def test_bad_sigma2_rejected(self, capsys):
        code, _, err = _run(capsys, "rate-sweep", "--sigma2", "0",
                            "--min-db", "0", "--max-db", "1", "--step-db", "1")
        assert code == 1 and "sigma2" in err

    def test_unwritable_output_path(self, capsys):
        code, _, err = _run(capsys, "rate-sweep", "--min-db", "0", "--max-db", "1",
                            "--step-db", "1", "--ratio", "2",
                            "--out", "/nonexistent-dir/sweep.csv")
        assert code == 1
        assert err.startswith("layered-bpsk: error:")
