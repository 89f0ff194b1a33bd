"""Interval meter/irradiance ingestion and daily aggregation.

Input is a headered CSV with one row per interval: ISO-8601 local
timestamp, load in kWh over the interval, irradiance in W/m2.  Rows are
partitioned into the peak window and its in-day complement, then reduced
to one record per calendar date: total load per period (kWh) and mean
irradiance per period (W/m2).

Daily datasets round-trip through a five-column CSV
(``date,h_peak,h_offpeak,s_peak,s_offpeak``) so aggregation results can
be inspected and re-imported without re-parsing the raw file.
"""

from __future__ import annotations

import csv
import math
import statistics
from dataclasses import dataclass, field
from datetime import date, datetime, timedelta

import numpy as np

from .errors import (
    InvalidLawParameters,
    MalformedRow,
    MissingColumn,
    NonMonotonicTimestamp,
)
from .tariffs import PeriodPartition


@dataclass(frozen=True)
class MeterSample:
    """One meter interval: load is kWh over the interval, irradiance W/m2."""

    timestamp: datetime
    load: float
    irradiance: float


@dataclass(frozen=True)
class DailyRecord:
    """One day's peak/off-peak load totals (kWh) and mean irradiances (W/m2)."""

    date: date
    h_peak: float
    h_offpeak: float
    s_peak: float
    s_offpeak: float

    def __post_init__(self):
        for name in ("h_peak", "h_offpeak", "s_peak", "s_offpeak"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0.0):
                raise ValueError(f"{name} must be finite and >= 0, got {v}")


@dataclass(frozen=True)
class Dataset:
    """Ordered daily records plus the partition they were aggregated under.

    Calendar gaps are never silent: dates absent from the span are listed
    in ``missing_dates`` and days dropped for poor coverage in
    ``dropped_dates``.
    """

    records: tuple[DailyRecord, ...]
    partition: PeriodPartition
    source: str = ""
    missing_dates: tuple[date, ...] = ()
    dropped_dates: tuple[date, ...] = ()

    def __post_init__(self):
        if not self.records:
            raise ValueError("a Dataset needs at least one daily record")
        dates = [r.date for r in self.records]
        if len(set(dates)) != len(dates):
            raise ValueError("duplicate dates in daily records")
        if any(b <= a for a, b in zip(dates, dates[1:])):
            raise ValueError("daily records must be in date order")

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    @property
    def h_peak(self) -> np.ndarray:
        return np.array([r.h_peak for r in self.records])

    @property
    def h_offpeak(self) -> np.ndarray:
        return np.array([r.h_offpeak for r in self.records])

    @property
    def s_peak(self) -> np.ndarray:
        return np.array([r.s_peak for r in self.records])

    @property
    def s_offpeak(self) -> np.ndarray:
        return np.array([r.s_offpeak for r in self.records])


@dataclass(frozen=True)
class ColumnMap:
    """Explicit header-name mapping for the raw interval CSV."""

    timestamp: str = "timestamp"
    load: str = "load_kwh"
    irradiance: str = "irradiance_wm2"


@dataclass(frozen=True)
class ParsedSeries:
    """Parsed interval samples plus the count of negative-irradiance clamps."""

    samples: tuple[MeterSample, ...]
    clamped_rows: int = 0


def parse_interval_csv(path, columns: ColumnMap = ColumnMap()) -> ParsedSeries:
    """Parse a raw interval CSV into timestamp-ordered samples.

    Negative irradiance readings (sensor noise) are clamped to 0 and
    counted.  Raises :class:`MissingColumn`, :class:`MalformedRow` (with
    the 1-based line number) or :class:`NonMonotonicTimestamp`.
    """
    samples: list[MeterSample] = []
    clamped = 0
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for name in (columns.timestamp, columns.load, columns.irradiance):
            if name not in header:
                raise MissingColumn(
                    f"column {name!r} not found in header {header} of {path}"
                )
        prev: datetime | None = None
        for row in reader:
            line_no = reader.line_num
            try:
                ts = datetime.fromisoformat(row[columns.timestamp].strip())
            except (ValueError, AttributeError) as exc:
                raise MalformedRow(line_no, f"bad timestamp: {exc}") from exc
            try:
                load = float(row[columns.load])
                irradiance = float(row[columns.irradiance])
            except (TypeError, ValueError) as exc:
                raise MalformedRow(line_no, f"bad numeric field: {exc}") from exc
            if not (math.isfinite(load) and math.isfinite(irradiance)):
                raise MalformedRow(line_no, "non-finite load or irradiance")
            if load < 0.0:
                raise MalformedRow(line_no, f"negative load {load}")
            if prev is not None and ts <= prev:
                raise NonMonotonicTimestamp(
                    line_no, f"timestamp {ts.isoformat()} not after {prev.isoformat()}"
                )
            prev = ts
            if irradiance < 0.0:
                irradiance = 0.0
                clamped += 1
            samples.append(MeterSample(ts, load, irradiance))
    return ParsedSeries(tuple(samples), clamped)


def _hour_of_day(ts: datetime) -> float:
    return ts.hour + ts.minute / 60.0 + ts.second / 3600.0


def aggregate_daily(
    samples,
    partition: PeriodPartition,
    *,
    min_coverage: float = 0.95,
    source: str = "",
) -> Dataset:
    """Reduce interval samples to one :class:`DailyRecord` per calendar date.

    Off-peak intervals belong to the calendar day they fall in (the
    overnight block is not re-attributed to the previous evening).  Days
    with fewer than ``min_coverage`` of the expected samples are dropped
    and reported via ``Dataset.dropped_dates``; values are never rescaled
    for partially covered days.
    """
    samples = list(samples)
    if not samples:
        raise ValueError("no samples to aggregate")

    by_day: dict[date, list[MeterSample]] = {}
    for s in samples:
        by_day.setdefault(s.timestamp.date(), []).append(s)

    # Expected samples/day from the median inter-sample gap; with a single
    # sample there is nothing to infer and coverage checks are skipped.
    expected_per_day = None
    if len(samples) >= 2:
        gaps = [
            (b.timestamp - a.timestamp).total_seconds()
            for a, b in zip(samples, samples[1:])
        ]
        med = statistics.median(gaps)
        if med > 0:
            expected_per_day = 86400.0 / med

    records = []
    dropped = []
    for day in sorted(by_day):
        day_samples = by_day[day]
        if expected_per_day is not None and len(day_samples) < min_coverage * expected_per_day:
            dropped.append(day)
            continue
        peak = [s for s in day_samples if partition.is_peak(_hour_of_day(s.timestamp))]
        off = [s for s in day_samples if not partition.is_peak(_hour_of_day(s.timestamp))]
        records.append(
            DailyRecord(
                date=day,
                h_peak=math.fsum(s.load for s in peak),
                h_offpeak=math.fsum(s.load for s in off),
                s_peak=math.fsum(s.irradiance for s in peak) / len(peak) if peak else 0.0,
                s_offpeak=math.fsum(s.irradiance for s in off) / len(off) if off else 0.0,
            )
        )
    if not records:
        raise ValueError("all days dropped: no day met the coverage threshold")

    kept = {r.date for r in records}
    first, last = records[0].date, records[-1].date
    missing = []
    d = first
    while d <= last:
        if d not in kept and d not in dropped:
            missing.append(d)
        d += timedelta(days=1)

    return Dataset(
        records=tuple(records),
        partition=partition,
        source=source,
        missing_dates=tuple(missing),
        dropped_dates=tuple(dropped),
    )


def _lognormal_params(mean: float, sd: float) -> tuple[float, float]:
    """Moment-match a lognormal law to a target mean and standard deviation."""
    sigma2 = math.log(1.0 + (sd / mean) ** 2)
    mu = math.log(mean) - sigma2 / 2.0
    return mu, math.sqrt(sigma2)


def synth_dataset(
    n_days: int,
    *,
    mean_h_peak: float = 19.61,
    sd_h_peak: float = 8.40,
    mean_h_offpeak: float = 12.56,
    sd_h_offpeak: float = 6.32,
    mean_s_peak: float = 324.74,
    sd_s_peak: float = 122.21,
    mean_s_offpeak: float = 2.32,
    sd_s_offpeak: float = 2.02,
    partition: PeriodPartition = PeriodPartition(8, 22),
    start: date = date(2016, 1, 1),
    seed: int = 0,
) -> Dataset:
    """Generate a synthetic daily dataset from lognormal laws.

    Defaults are moment-matched to a real Texas household year (monthly
    consumption around 1 MWh), so sweeps over the synthetic data land in a
    realistic cost range.  Deterministic for a given seed.
    """
    if n_days < 1:
        raise InvalidLawParameters(f"n_days must be >= 1, got {n_days}")
    laws = {
        "h_peak": (mean_h_peak, sd_h_peak),
        "h_offpeak": (mean_h_offpeak, sd_h_offpeak),
        "s_peak": (mean_s_peak, sd_s_peak),
        "s_offpeak": (mean_s_offpeak, sd_s_offpeak),
    }
    for name, (mean, sd) in laws.items():
        if mean <= 0.0 or sd < 0.0 or not (math.isfinite(mean) and math.isfinite(sd)):
            raise InvalidLawParameters(f"{name} law needs mean > 0 and sd >= 0, got {mean}, {sd}")

    rng = np.random.default_rng(seed)
    draws = {}
    for name, (mean, sd) in laws.items():
        if sd == 0.0:
            draws[name] = np.full(n_days, mean)
        else:
            mu, sigma = _lognormal_params(mean, sd)
            draws[name] = rng.lognormal(mu, sigma, n_days)

    records = tuple(
        DailyRecord(
            date=start + timedelta(days=i),
            h_peak=float(draws["h_peak"][i]),
            h_offpeak=float(draws["h_offpeak"][i]),
            s_peak=float(draws["s_peak"][i]),
            s_offpeak=float(draws["s_offpeak"][i]),
        )
        for i in range(n_days)
    )
    return Dataset(records=records, partition=partition, source=f"synthetic(seed={seed})")


DATASET_FIELDS = ("date", "h_peak", "h_offpeak", "s_peak", "s_offpeak")


def write_dataset_csv(dataset: Dataset, path) -> None:
    """Serialize daily records; floats use repr so a round-trip is exact."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(DATASET_FIELDS)
        for r in dataset.records:
            writer.writerow(
                [r.date.isoformat(), repr(r.h_peak), repr(r.h_offpeak), repr(r.s_peak), repr(r.s_offpeak)]
            )


def read_dataset_csv(path, partition: PeriodPartition, source: str = "") -> Dataset:
    """Re-import a daily-record CSV written by :func:`write_dataset_csv`.

    The partition is not stored in the file; the caller supplies the one
    the records were aggregated under (normally from the run config).
    """
    records = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for name in DATASET_FIELDS:
            if name not in header:
                raise MissingColumn(f"column {name!r} not found in header {header} of {path}")
        for row in reader:
            line_no = reader.line_num
            try:
                records.append(
                    DailyRecord(
                        date=date.fromisoformat(row["date"].strip()),
                        h_peak=float(row["h_peak"]),
                        h_offpeak=float(row["h_offpeak"]),
                        s_peak=float(row["s_peak"]),
                        s_offpeak=float(row["s_offpeak"]),
                    )
                )
            except (TypeError, ValueError) as exc:
                raise MalformedRow(line_no, str(exc)) from exc
    if not records:
        raise MalformedRow(1, f"no daily records in {path}")
    return Dataset(records=tuple(records), partition=partition, source=source or str(path))
