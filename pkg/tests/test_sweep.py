import math
from dataclasses import replace

import numpy as np
import pytest

from fwmpb import (
    ConfigError,
    CSV_HEADER,
    FockTruncation,
    ObservableRecord,
    SweepSpec,
    SystemParams,
    emit_csv,
    parse_config,
    parse_csv,
    run_sweep,
    solve_point,
)

GOOD_CONFIG = """\
# drive-detuning sweep at the blockade working point
g = 3
f_a = 0.01
delta_b = 1
delta_c = -1

axis = delta_a
start = -10
stop = 10
points = 401
"""

SMALL_TRUNC = FockTruncation(3, 1, 1)


class TestParseConfig:
    def test_full_document(self):
        base, spec = parse_config(GOOD_CONFIG)
        assert base == SystemParams(delta_a=0.0, delta_b=1.0, delta_c=-1.0,
                                    g=3.0, f_a=0.01)
        assert base.kappa_a == base.kappa_b == base.kappa_c == 1.0
        assert (spec.axis, spec.start, spec.stop, spec.points) == ("delta_a", -10.0, 10.0, 401)
        assert spec.scale == "linear"

    def test_inline_comment_and_blank_lines(self):
        text = "axis = g  # swept coupling\n\nstart = 0.1\nstop = 10\npoints = 5\nscale = log\n"
        _, spec = parse_config(text)
        assert spec.axis == "g"
        assert spec.scale == "log"

    def test_unknown_key_names_line(self):
        text = "axis = delta_a\nstart = 0\nwibble = 3\nstop = 1\npoints = 2\n"
        with pytest.raises(ConfigError, match="line 3"):
            parse_config(text)

    def test_malformed_line_names_line(self):
        with pytest.raises(ConfigError, match="line 2"):
            parse_config("axis = delta_a\nstart 0\nstop = 1\npoints = 2\n")

    def test_duplicate_key_names_line(self):
        with pytest.raises(ConfigError, match="line 3"):
            parse_config("axis = delta_a\nstart = 0\nstart = 1\nstop = 2\npoints = 2\n")

    def test_bad_number_names_line(self):
        with pytest.raises(ConfigError, match="line 2"):
            parse_config("axis = delta_a\nstart = abc\nstop = 1\npoints = 2\n")

    def test_out_of_range_value_names_line(self):
        text = "kappa_a = -1\naxis = delta_a\nstart = 0\nstop = 1\npoints = 2\n"
        with pytest.raises(ConfigError, match="line 1"):
            parse_config(text)
        text = "f_a = -0.5\naxis = delta_a\nstart = 0\nstop = 1\npoints = 2\n"
        with pytest.raises(ConfigError, match="line 1"):
            parse_config(text)

    def test_empty_document_requires_axis(self):
        with pytest.raises(ConfigError, match="axis is required"):
            parse_config("")

    def test_missing_grid_keys(self):
        with pytest.raises(ConfigError, match="start is required"):
            parse_config("axis = delta_a\n")
        with pytest.raises(ConfigError, match="points is required"):
            parse_config("axis = delta_a\nstart = 0\nstop = 1\n")

    def test_bad_axis_and_scale(self):
        with pytest.raises(ConfigError, match="line 1"):
            parse_config("axis = kappa_a\nstart = 0\nstop = 1\npoints = 2\n")
        with pytest.raises(ConfigError, match="scale"):
            parse_config("axis = g\nstart = 0.1\nstop = 1\npoints = 2\nscale = cubic\n")

    def test_reversed_range(self):
        with pytest.raises(ConfigError, match="start must be below stop"):
            parse_config("axis = delta_a\nstart = 1\nstop = -1\npoints = 2\n")

    def test_log_scale_needs_positive_start(self):
        with pytest.raises(ConfigError, match="positive start"):
            parse_config("axis = g\nstart = 0\nstop = 1\npoints = 2\nscale = log\n")

    def test_points_must_be_integer_at_least_two(self):
        with pytest.raises(ConfigError, match="integer"):
            parse_config("axis = g\nstart = 0.1\nstop = 1\npoints = 2.5\n")
        with pytest.raises(ConfigError, match="at least 2"):
            parse_config("axis = g\nstart = 0.1\nstop = 1\npoints = 1\n")

    def test_truncation_threaded_through(self):
        _, spec = parse_config(GOOD_CONFIG, trunc=SMALL_TRUNC)
        assert spec.trunc == SMALL_TRUNC


class TestSweepSpec:
    def test_linear_grid_endpoints(self):
        _, spec = parse_config("axis = delta_a\nstart = -1\nstop = 1\npoints = 5\n")
        assert np.allclose(spec.grid(), [-1.0, -0.5, 0.0, 0.5, 1.0])

    def test_log_grid(self):
        _, spec = parse_config("axis = g\nstart = 0.1\nstop = 10\npoints = 3\nscale = log\n")
        assert np.allclose(spec.grid(), [0.1, 1.0, 10.0])

    def test_direct_construction_validates(self):
        base = SystemParams(0, 1, -1, 3, 0.01)
        with pytest.raises(ValueError):
            SweepSpec(axis="kappa_a", start=0, stop=1, points=5, base=base)
        with pytest.raises(ValueError):
            SweepSpec(axis="g", start=-1, stop=1, points=5, base=base, scale="log")


class TestObservableRecord:
    def test_gap_row(self):
        rec = ObservableRecord.gap(0.5)
        assert rec.is_gap
        assert math.isnan(rec.g2_a) and math.isnan(rec.n_c)
        assert rec.x == 0.5

    def test_clamps_roundoff_negative(self):
        rec = ObservableRecord(x=0.0, g2_a=-1e-15, n_a=1e-3, n_b=0.0, n_c=0.0)
        assert rec.g2_a == 0.0

    def test_rejects_genuinely_negative(self):
        with pytest.raises(ValueError):
            ObservableRecord(x=0.0, g2_a=-1e-6, n_a=1e-3, n_b=0.0, n_c=0.0)


class TestRunSweep:
    def test_matches_single_point_solves(self):
        _, spec = parse_config(
            "g = 3\nf_a = 0.01\ndelta_b = 1\ndelta_c = -1\n"
            "axis = delta_a\nstart = -1\nstop = 1\npoints = 5\n",
            trunc=SMALL_TRUNC)
        records = run_sweep(spec)
        assert [r.x for r in records] == [-1.0, -0.5, 0.0, 0.5, 1.0]
        for rec in records:
            params = replace(spec.base, delta_a=rec.x)
            single = solve_point(params, SMALL_TRUNC, rec.x)
            assert single == rec  # bit-identical, no state leaks between points

    def test_parallel_equals_serial(self):
        _, spec = parse_config(
            "g = 2\nf_a = 0.01\ndelta_b = 1\ndelta_c = -1\n"
            "axis = delta_a\nstart = -1\nstop = 1\npoints = 6\n",
            trunc=SMALL_TRUNC)
        serial = run_sweep(spec, workers=1)
        parallel = run_sweep(spec, workers=2)
        assert emit_csv(serial) == emit_csv(parallel)

    def test_failed_points_become_gaps(self):
        # an undriven system has no occupation to normalize g2 against
        _, spec = parse_config(
            "g = 1\ndelta_b = 1\ndelta_c = -1\n"
            "axis = delta_a\nstart = -1\nstop = 1\npoints = 3\n",
            trunc=SMALL_TRUNC)
        records = run_sweep(spec)
        assert len(records) == 3
        assert all(rec.is_gap for rec in records)
        assert [rec.x for rec in records] == [-1.0, 0.0, 1.0]

    def test_deterministic_output(self):
        _, spec = parse_config(
            "g = 3\nf_a = 0.01\ndelta_b = 1\ndelta_c = -1\n"
            "axis = delta_a\nstart = 0\nstop = 1\npoints = 3\n",
            trunc=SMALL_TRUNC)
        assert emit_csv(run_sweep(spec)) == emit_csv(run_sweep(spec))

    def test_rejects_bad_worker_count(self):
        _, spec = parse_config(GOOD_CONFIG)
        with pytest.raises(ValueError):
            run_sweep(spec, workers=0)


class TestCsv:
    def test_header_and_line_endings(self):
        text = emit_csv([ObservableRecord(0.0, 1.0, 2.0, 3.0, 4.0)])
        assert text.startswith(CSV_HEADER + "\n")
        assert "\r" not in text
        assert text.endswith("\n")

    def test_ten_significant_digits(self):
        text = emit_csv([ObservableRecord(1 / 3, 2 / 3, 1e-12, 12345.6789, 1.0)])
        row = text.splitlines()[1]
        assert row == "3.333333333e-01,6.666666667e-01,1.000000000e-12,1.234567890e+04,1.000000000e+00"

    def test_gap_renders_nan(self):
        text = emit_csv([ObservableRecord.gap(-2.5)])
        assert text.splitlines()[1] == "-2.500000000e+00,nan,nan,nan,nan"

    def test_frozen_blockade_row(self):
        # values from the steady solve at the blockade working point
        rec = ObservableRecord(x=0.0, g2_a=2.773083861e-03, n_a=3.996811386e-04,
                               n_b=7.971630816e-09, n_c=7.971631263e-09)
        assert emit_csv([rec]) == (
            "x,g2_a,n_a,n_b,n_c\n"
            "0.000000000e+00,2.773083861e-03,3.996811386e-04,"
            "7.971630816e-09,7.971631263e-09\n")

    def test_blockade_solve_reproduces_frozen_values(self):
        params = SystemParams(delta_a=0.0, delta_b=1.0, delta_c=-1.0, g=3.0, f_a=0.01)
        rec = solve_point(params, FockTruncation(5, 2, 2), 0.0)
        assert rec.g2_a == pytest.approx(2.773083861e-03, rel=1e-6)
        assert rec.n_a == pytest.approx(3.996811386e-04, rel=1e-6)
        assert rec.n_b == pytest.approx(7.971630816e-09, rel=1e-6)
        assert rec.n_c == pytest.approx(7.971631263e-09, rel=1e-6)

    def test_round_trip_is_stable(self):
        records = [
            ObservableRecord(0.0, 1 / 3, 4e-4, 1e-9, 2e-9),
            ObservableRecord.gap(0.5),
            ObservableRecord(1.0, 0.0, 0.0, 0.0, 0.0),
        ]
        text = emit_csv(records)
        again = emit_csv(parse_csv(text))
        assert again == text

    def test_parse_rejects_bad_header(self):
        with pytest.raises(ValueError, match="header"):
            parse_csv("x,g2\n0,1\n")

    def test_parse_rejects_short_rows(self):
        with pytest.raises(ValueError, match="5 fields"):
            parse_csv(CSV_HEADER + "\n1.0,2.0\n")
