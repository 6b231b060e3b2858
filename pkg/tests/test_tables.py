"""Lossless table round-trips and parser diagnostics."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finopt.errors import ProfileFormatError
from finopt.tables import (
    format_float,
    read_profile_csv,
    write_profile_csv,
    write_temperature_csv,
)

finite_floats = st.floats(allow_nan=False, allow_infinity=False, width=64)


class TestFormatFloat:
    @given(value=finite_floats)
    @settings(max_examples=500)
    def test_seventeen_digits_round_trip(self, value):
        assert float(format_float(value)) == value

    def test_exact_examples(self):
        assert format_float(0.1) == "0.10000000000000001"
        assert format_float(1.0) == "1"


class TestProfileRoundTrip:
    def test_write_then_read_recovers_exact_floats(self, tmp_path):
        rng = np.random.default_rng(3)
        x = np.sort(rng.random(40))
        x[0] = 0.0
        t = rng.random(40)
        path = tmp_path / "profile.csv"
        write_profile_csv(path, x, t)
        x2, t2 = read_profile_csv(path)
        assert np.array_equal(x, x2)
        assert np.array_equal(t, t2)

    def test_write_read_write_is_byte_identical(self, tmp_path):
        x = np.linspace(0.0, 0.2, 25)
        t = np.linspace(3e-3, 0.0, 25) ** 2
        first = tmp_path / "a.csv"
        second = tmp_path / "b.csv"
        write_profile_csv(first, x, t)
        x2, t2 = read_profile_csv(first)
        write_profile_csv(second, x2, t2)
        assert first.read_bytes() == second.read_bytes()

    def test_header_and_half_profile_column(self, tmp_path):
        path = tmp_path / "profile.csv"
        write_profile_csv(path, np.array([0.0, 1.0]), np.array([2.0, 4.0]))
        lines = path.read_text().splitlines()
        assert lines[0] == "x,t,t_half"
        assert lines[1].split(",")[2] == "1"

    def test_temperature_header(self, tmp_path):
        path = tmp_path / "temp.csv"
        write_temperature_csv(path, np.array([0.0, 1.0]), np.array([5.0, 0.0]))
        assert path.read_text().splitlines()[0] == "x,theta"

    def test_extra_columns_ignored_on_read(self, tmp_path):
        path = tmp_path / "p.csv"
        path.write_text("t,junk,x\n1.0,9,0.0\n0.5,9,1.0\n")
        x, t = read_profile_csv(path)
        assert np.array_equal(x, [0.0, 1.0])
        assert np.array_equal(t, [1.0, 0.5])


class TestParserDiagnostics:
    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("")
        with pytest.raises(ProfileFormatError, match="line 1"):
            read_profile_csv(path)

    def test_missing_columns(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b\n1,2\n")
        with pytest.raises(ProfileFormatError, match="line 1"):
            read_profile_csv(path)

    def test_non_numeric_value_names_line(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("x,t\n0.0,1.0\nnope,2.0\n")
        with pytest.raises(ProfileFormatError, match="line 3"):
            read_profile_csv(path)

    def test_wrong_field_count_names_line(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("x,t\n0.0,1.0\n0.5\n")
        with pytest.raises(ProfileFormatError, match="line 3"):
            read_profile_csv(path)

    def test_decreasing_x_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("x,t\n0.0,1.0\n0.5,1.0\n0.25,1.0\n")
        with pytest.raises(ProfileFormatError, match="line 4"):
            read_profile_csv(path)

    def test_negative_thickness_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("x,t\n0.0,1.0\n0.5,-1.0\n")
        with pytest.raises(ProfileFormatError, match="negative"):
            read_profile_csv(path)

    def test_single_row_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("x,t\n0.0,1.0\n")
        with pytest.raises(ProfileFormatError, match="two data rows"):
            read_profile_csv(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ProfileFormatError, match="cannot read"):
            read_profile_csv(tmp_path / "nowhere.csv")

    def test_blank_lines_skipped(self, tmp_path):
        path = tmp_path / "ok.csv"
        path.write_text("x,t\n0.0,1.0\n\n1.0,2.0\n")
        x, t = read_profile_csv(path)
        assert len(x) == 2
