"""Trace log: append contract, file round trip, derived channels."""

import math
from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest

from armcorr import DEFAULT_CONFIG, run_simulation
from armcorr.trace import COLUMNS, TraceFormatError, TraceLog, derive_channels, quantize
from armcorr.world import Observation

from conftest import parked_config


def empty_log(dt=1 / 60, v_norm_max=10.0, speed_epsilon=1e-4):
    return TraceLog("deadbeef", seed=0, dt=dt, v_norm_max=v_norm_max, speed_epsilon=speed_epsilon)


def make_obs(points, haptics=None, visible6=True):
    return Observation(
        points=tuple(points),
        haptics=tuple(haptics) if haptics else (0.0,) * 7,
        visible=(True,) * 6 + (visible6,),
    )


def append_simple(log, t, points, visible6=True, haptics=None):
    zeros = ((0.0, 0.0, 0.0), (0.0, 0.0, 0.0))
    log.append_record(t, zeros, zeros, make_obs(points, haptics, visible6))


def grid_points(value):
    return [(value + 0.1 * i, value - 0.1 * i) for i in range(7)]


class TestAppend:
    def test_append_from_empty(self):
        log = empty_log()
        append_simple(log, 0, grid_points(0.0))
        assert len(log) == 1

    def test_gap_rejected(self):
        log = empty_log()
        append_simple(log, 0, grid_points(0.0))
        with pytest.raises(ValueError, match="out-of-order"):
            append_simple(log, 2, grid_points(0.0))

    def test_occluded_object_masked_but_haptic_kept(self):
        log = empty_log()
        h = [0.0] * 6 + [0.25]
        append_simple(log, 0, grid_points(1.0), visible6=False, haptics=h)
        assert math.isnan(log.x[6][0]) and math.isnan(log.y[6][0])
        assert log.h[6][0] == 0.25
        assert log.vis6 == [False]

    def test_values_quantized_to_nine_digits(self):
        log = empty_log()
        x = 0.123456789123456789
        append_simple(log, 0, grid_points(x))
        assert log.x[0][0] == quantize(x) == 0.123456789


@pytest.fixture(scope="module")
def occluding_run():
    """Short default run guaranteed to contain occlusion episodes."""
    log = run_simulation(DEFAULT_CONFIG, 3, 4000)
    vis = np.asarray(log.vis6)
    assert (~vis).any() and vis.any()
    return log


class TestFileFormat:
    def test_round_trip_equality(self, occluding_run, tmp_path):
        path = tmp_path / "trace.csv"
        occluding_run.write(path)
        back = TraceLog.read(path)
        assert back == occluding_run
        # canonical form: writing the reread log reproduces the bytes
        path2 = tmp_path / "again.csv"
        back.write(path2)
        assert path.read_bytes() == path2.read_bytes()

    def test_header_records_provenance(self, occluding_run, tmp_path):
        path = tmp_path / "trace.csv"
        occluding_run.write(path)
        text = path.read_text()
        assert f"# seed={occluding_run.seed}" in text
        assert f"# config_hash={occluding_run.config_hash}" in text
        assert text.splitlines()[8] == ",".join(COLUMNS)

    def test_truncated_final_row_names_row(self, tmp_path):
        log = empty_log()
        for t in range(5):
            append_simple(log, t, grid_points(0.1 * t))
        path = tmp_path / "trace.csv"
        log.write(path)
        raw = path.read_bytes()
        path.write_bytes(raw[:-30])
        with pytest.raises(TraceFormatError, match="row 4") as err:
            TraceLog.read(path)
        assert err.value.kind == "row-width"

    def test_checksum_mismatch_detected(self, tmp_path):
        log = empty_log()
        for t in range(5):
            append_simple(log, t, grid_points(0.1 * t + 0.111))
        path = tmp_path / "trace.csv"
        log.write(path)
        raw = path.read_bytes()
        # flip one digit in the data region, keeping the shape intact
        idx = raw.index(b"0.111")
        path.write_bytes(raw[:idx] + b"0.112" + raw[idx + 5 :])
        with pytest.raises(TraceFormatError) as err:
            TraceLog.read(path)
        assert err.value.kind == "checksum"

    def test_missing_header_key_rejected(self, tmp_path):
        log = empty_log()
        append_simple(log, 0, grid_points(0.0))
        path = tmp_path / "trace.csv"
        log.write(path)
        lines = path.read_text().splitlines(keepends=True)
        path.write_text("".join(line for line in lines if not line.startswith("# seed")))
        with pytest.raises(TraceFormatError) as err:
            TraceLog.read(path)
        assert err.value.kind == "header"

    def test_wrong_columns_rejected(self, tmp_path):
        log = empty_log()
        append_simple(log, 0, grid_points(0.0))
        path = tmp_path / "trace.csv"
        log.write(path)
        text = path.read_text().replace(",".join(COLUMNS), ",".join(COLUMNS[:-1]))
        path.write_text(text)
        with pytest.raises(TraceFormatError) as err:
            TraceLog.read(path)
        assert err.value.kind in ("columns", "row-width")

    def test_row_count_mismatch_rejected(self, tmp_path):
        log = empty_log()
        for t in range(5):
            append_simple(log, t, grid_points(0.1 * t))
        path = tmp_path / "trace.csv"
        log.write(path)
        text = path.read_text().replace("# n_rows=5", "# n_rows=6")
        path.write_text(text)
        with pytest.raises(TraceFormatError) as err:
            TraceLog.read(path)
        assert err.value.kind in ("row-count", "checksum")


class TestDerivedChannels:
    def test_too_short(self):
        log = empty_log()
        append_simple(log, 0, grid_points(0.0))
        with pytest.raises(ValueError, match="too short"):
            derive_channels(log)

    def test_stationary_point_zero_velocity_undefined_angle(self):
        log = empty_log()
        for t in range(10):
            append_simple(log, t, grid_points(0.5))
        d = derive_channels(log)
        assert np.all(d.vx_raw[:, 1:] == 0.0) and np.all(d.vy_raw[:, 1:] == 0.0)
        assert not d.angle_mask.any()
        assert not d.v_mask[:, 0].any()

    def test_pure_x_motion_angle_zero(self):
        log = empty_log()
        for t in range(10):
            pts = [(0.01 * t + 0.1 * i, 0.0) for i in range(7)]
            append_simple(log, t, pts)
        d = derive_channels(log)
        assert d.angle_mask[:, 1:].all()
        assert np.all(d.angle[:, 1:] == 0.0)

    def test_finite_difference_matches_exact_arithmetic(self):
        # positions 0, 0.1, 0.3 at dt=1/60: velocities 6 and 12 units/s
        dt = 1 / 60
        log = empty_log(dt=dt)
        for t, x in enumerate([0.0, 0.1, 0.3]):
            append_simple(log, t, [(x, 0.0)] * 7)
        d = derive_channels(log)
        exact = [Fraction(1, 10) * 60, Fraction(3, 10) * 60 - Fraction(1, 10) * 60]
        assert not d.v_mask[0, 0]
        np.testing.assert_allclose(d.vx_raw[0, 1:], [float(v) for v in exact], rtol=1e-12)

    def test_velocity_integral_consistency(self, occluding_run):
        d = derive_channels(occluding_run)
        arr = occluding_run.arrays()
        dt = occluding_run.dt
        for i in range(6):  # arm points are never masked
            total = dt * d.vx_raw[i, 1:].sum()
            assert abs(total - (arr["x"][i][-1] - arr["x"][i][0])) < 1e-9

    def test_normalization_clamps_norm_preserving_direction(self):
        log = empty_log(v_norm_max=1.0)  # tiny scale so everything clamps
        for t in range(5):
            pts = [(0.2 * t, 0.1 * t)] * 7
            append_simple(log, t, pts)
        d = derive_channels(log)
        speeds = d.speed[:, 1:]
        assert np.all(speeds <= 1.0 + 1e-12)
        norms = np.hypot(d.vx[:, 1:], d.vy[:, 1:])
        np.testing.assert_allclose(norms, speeds, atol=1e-12)
        np.testing.assert_allclose(
            np.arctan2(d.vy[:, 1:], d.vx[:, 1:]), np.arctan2(0.1, 0.2), atol=1e-12
        )

    def test_masks_follow_occlusion(self, occluding_run):
        d = derive_channels(occluding_run)
        vis = np.asarray(occluding_run.vis6)
        expected = np.zeros(len(occluding_run), dtype=bool)
        expected[1:] = vis[1:] & vis[:-1]
        np.testing.assert_array_equal(d.v_mask[6], expected)

    def test_angle_missing_below_speed_floor(self):
        log = empty_log(speed_epsilon=1e-4)
        for t in range(5):
            pts = [(1e-7 * t, 0.0)] * 7  # 6e-6 units/s, below the floor
            append_simple(log, t, pts)
        d = derive_channels(log)
        assert d.v_mask[:, 1:].all()
        assert not d.angle_mask.any()

    def test_derivation_is_pure(self, occluding_run):
        d1 = derive_channels(occluding_run)
        d2 = derive_channels(occluding_run)
        np.testing.assert_array_equal(d1.vx, d2.vx)
        np.testing.assert_array_equal(d1.angle_mask, d2.angle_mask)
        np.testing.assert_array_equal(
            np.nan_to_num(d1.angle, nan=9.0), np.nan_to_num(d2.angle, nan=9.0)
        )
