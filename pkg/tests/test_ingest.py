"""Interval CSV parsing, daily aggregation, synthetic generation, round-trip."""

from __future__ import annotations

from datetime import date, datetime, timedelta

import numpy as np
import pytest

from nemsizer import (
    ColumnMap,
    InvalidLawParameters,
    MalformedRow,
    MeterSample,
    MissingColumn,
    NonMonotonicTimestamp,
    PeriodPartition,
    aggregate_daily,
    parse_interval_csv,
    read_dataset_csv,
    synth_dataset,
    write_dataset_csv,
)
from conftest import PARTITION


def write_raw_csv(path, rows, header="timestamp,load_kwh,irradiance_wm2"):
    with open(path, "w") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(str(v) for v in row) + "\n")


def quarter_hour_rows(n_days, load=1.0, irradiance=0.0, start=datetime(2016, 1, 1)):
    rows = []
    for i in range(n_days * 96):
        ts = start + timedelta(minutes=15 * i)
        irr = irradiance(ts) if callable(irradiance) else irradiance
        rows.append((ts.isoformat(), load, irr))
    return rows


class TestParseIntervalCsv:
    def test_full_year_row_count(self, tmp_path):
        # 96 quarter-hours per day over a 366-day year
        path = tmp_path / "year.csv"
        write_raw_csv(path, quarter_hour_rows(366))
        parsed = parse_interval_csv(path)
        assert len(parsed.samples) == 35_136
        assert parsed.clamped_rows == 0

    def test_negative_irradiance_clamped_and_counted(self, tmp_path):
        path = tmp_path / "neg.csv"
        write_raw_csv(
            path,
            [
                ("2016-01-01T00:00", 1.0, -0.2),
                ("2016-01-01T00:15", 1.0, 5.0),
            ],
        )
        parsed = parse_interval_csv(path)
        assert parsed.clamped_rows == 1
        assert parsed.samples[0].irradiance == 0.0
        assert parsed.samples[1].irradiance == 5.0

    def test_shuffled_row_rejected(self, tmp_path):
        path = tmp_path / "shuffled.csv"
        write_raw_csv(
            path,
            [
                ("2016-01-01T00:00", 1.0, 0.0),
                ("2016-01-01T00:30", 1.0, 0.0),
                ("2016-01-01T00:15", 1.0, 0.0),
            ],
        )
        with pytest.raises(NonMonotonicTimestamp, match="line 4"):
            parse_interval_csv(path)

    def test_missing_column(self, tmp_path):
        path = tmp_path / "cols.csv"
        write_raw_csv(path, [("2016-01-01T00:00", 1.0, 0.0)], header="timestamp,kwh,irradiance_wm2")
        with pytest.raises(MissingColumn, match="load_kwh"):
            parse_interval_csv(path)
        # explicit mapping resolves it
        parsed = parse_interval_csv(path, ColumnMap(load="kwh"))
        assert parsed.samples[0].load == 1.0

    @pytest.mark.parametrize(
        "bad_row, line",
        [
            (("not-a-time", 1.0, 0.0), 3),
            (("2016-01-01T00:15", "x", 0.0), 3),
            (("2016-01-01T00:15", -1.0, 0.0), 3),
        ],
    )
    def test_malformed_rows_carry_line_numbers(self, tmp_path, bad_row, line):
        path = tmp_path / "bad.csv"
        write_raw_csv(path, [("2016-01-01T00:00", 1.0, 0.0), bad_row])
        with pytest.raises(MalformedRow, match=f"line {line}"):
            parse_interval_csv(path)


class TestAggregateDaily:
    def test_constant_load_splits_56_40(self, tmp_path):
        path = tmp_path / "const.csv"
        write_raw_csv(path, quarter_hour_rows(2, load=1.0))
        dataset = aggregate_daily(parse_interval_csv(path).samples, PARTITION)
        assert len(dataset) == 2
        for r in dataset:
            assert r.h_peak == pytest.approx(56.0)
            assert r.h_offpeak == pytest.approx(40.0)

    def test_peak_only_irradiance(self, tmp_path):
        path = tmp_path / "irr.csv"
        irr = lambda ts: 1000.0 if PARTITION.is_peak(ts.hour + ts.minute / 60) else 0.0
        write_raw_csv(path, quarter_hour_rows(1, irradiance=irr))
        record = aggregate_daily(parse_interval_csv(path).samples, PARTITION).records[0]
        assert record.s_peak == pytest.approx(1000.0)
        assert record.s_offpeak == 0.0

    def test_partition_is_exhaustive_and_disjoint(self):
        rng = np.random.default_rng(5)
        samples = []
        ts = datetime(2016, 3, 1)
        loads = rng.uniform(0.0, 2.0, 96 * 3)
        for load in loads:
            samples.append(MeterSample(ts, float(load), 0.0))
            ts += timedelta(minutes=15)
        dataset = aggregate_daily(samples, PARTITION)
        for day_idx, r in enumerate(dataset):
            day_total = loads[day_idx * 96 : (day_idx + 1) * 96].sum()
            assert abs((r.h_peak + r.h_offpeak) - day_total) < 1e-9

    def test_invariant_to_sample_interval(self):
        # profile piecewise constant on the 15-min grid, re-sampled at 1 min
        rng = np.random.default_rng(9)
        levels = rng.uniform(0.0, 1.5, 96)
        irr_levels = rng.uniform(0.0, 900.0, 96)
        start = datetime(2016, 6, 1)
        coarse = [
            MeterSample(start + timedelta(minutes=15 * i), float(levels[i]), float(irr_levels[i]))
            for i in range(96)
        ]
        fine = [
            MeterSample(
                start + timedelta(minutes=m),
                float(levels[m // 15] / 15.0),
                float(irr_levels[m // 15]),
            )
            for m in range(1440)
        ]
        rc = aggregate_daily(coarse, PARTITION).records[0]
        rf = aggregate_daily(fine, PARTITION).records[0]
        assert abs(rc.h_peak - rf.h_peak) < 1e-9
        assert abs(rc.h_offpeak - rf.h_offpeak) < 1e-9
        assert rc.s_peak == pytest.approx(rf.s_peak, rel=1e-12)
        assert rc.s_offpeak == pytest.approx(rf.s_offpeak, rel=1e-12)

    def test_clamping_only_raises_values(self, tmp_path):
        path = tmp_path / "clamp.csv"
        rows = [
            ("2016-01-01T00:00", 1.0, -3.0),
            ("2016-01-01T00:15", 1.0, 10.0),
            ("2016-01-01T00:30", 1.0, -0.5),
            ("2016-01-01T00:45", 1.0, 20.0),
        ]
        write_raw_csv(path, rows)
        parsed = parse_interval_csv(path)
        raw_values = np.array([r[2] for r in rows])
        clamped = np.array([s.irradiance for s in parsed.samples])
        assert np.all(clamped >= raw_values)
        assert np.all(clamped[raw_values >= 0] == raw_values[raw_values >= 0])
        assert clamped.mean() >= raw_values.mean()

    def test_low_coverage_day_dropped_and_reported(self):
        start = datetime(2016, 1, 1)
        samples = [MeterSample(start + timedelta(minutes=15 * i), 1.0, 0.0) for i in range(96)]
        # second day only half covered
        day2 = datetime(2016, 1, 2)
        samples += [MeterSample(day2 + timedelta(minutes=15 * i), 1.0, 0.0) for i in range(48)]
        day3 = datetime(2016, 1, 3)
        samples += [MeterSample(day3 + timedelta(minutes=15 * i), 1.0, 0.0) for i in range(96)]
        dataset = aggregate_daily(samples, PARTITION)
        assert [r.date for r in dataset] == [date(2016, 1, 1), date(2016, 1, 3)]
        assert dataset.dropped_dates == (date(2016, 1, 2),)

    def test_calendar_gap_reported(self):
        start = datetime(2016, 1, 1)
        samples = [MeterSample(start + timedelta(minutes=15 * i), 1.0, 0.0) for i in range(96)]
        day3 = datetime(2016, 1, 3)
        samples += [MeterSample(day3 + timedelta(minutes=15 * i), 1.0, 0.0) for i in range(96)]
        dataset = aggregate_daily(samples, PARTITION)
        assert dataset.missing_dates == (date(2016, 1, 2),)


class TestSynthDataset:
    def test_deterministic_for_a_seed(self):
        a = synth_dataset(366, seed=7)
        b = synth_dataset(366, seed=7)
        assert a.records == b.records
        assert a.records != synth_dataset(366, seed=8).records

    def test_lognormal_moments_land_near_targets(self):
        ds = synth_dataset(10_000, seed=1)
        assert abs(np.mean(ds.h_peak) - 19.61) / 19.61 < 0.05
        assert abs(np.mean(ds.h_offpeak) - 12.56) / 12.56 < 0.05
        assert abs(np.std(ds.h_peak, ddof=1) - 8.40) / 8.40 < 0.10

    def test_records_satisfy_invariants(self):
        ds = synth_dataset(500, seed=2)
        assert np.all(ds.h_peak >= 0.0) and np.all(ds.s_offpeak >= 0.0)
        dates = [r.date for r in ds]
        assert dates == sorted(dates)

    @pytest.mark.parametrize("kwargs", [{"mean_h_peak": -1.0}, {"sd_s_peak": -0.1}])
    def test_bad_law_parameters(self, kwargs):
        with pytest.raises(InvalidLawParameters):
            synth_dataset(10, **kwargs)

    def test_zero_days_rejected(self):
        with pytest.raises(InvalidLawParameters):
            synth_dataset(0)


class TestDatasetCsvRoundTrip:
    def test_exact_round_trip(self, tmp_path):
        ds = synth_dataset(60, seed=4, partition=PeriodPartition(7, 21))
        path = tmp_path / "daily.csv"
        write_dataset_csv(ds, path)
        back = read_dataset_csv(path, PeriodPartition(7, 21))
        assert back.records == ds.records

    def test_malformed_daily_csv(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("date,h_peak,h_offpeak,s_peak,s_offpeak\n2016-01-01,1.0,oops,0,0\n")
        with pytest.raises(MalformedRow):
            read_dataset_csv(path, PARTITION)
        path.write_text("date,h_peak\n")
        with pytest.raises(MissingColumn):
            read_dataset_csv(path, PARTITION)
