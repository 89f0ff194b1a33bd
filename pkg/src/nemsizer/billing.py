"""Realized-cost engine: daily settlement, monthly/annual report.

Settlement follows the daily model literally: each day, each price
period nets on its own (purchase or sale, never both), and the amortized
capital charge accrues per day.  An alternative end-of-month netting
total (meter runs backward across the whole month within each period) is
reported as a diagnostic alongside, since utility billing prose often
describes that variant; the two coincide only when no day flips sign.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from datetime import date as _date

import numpy as np

from .ingest import Dataset, DailyRecord
from .tariffs import AmortizedCosts, PanelModel, PeriodPartition, TariffSchedule, pv_energy


@dataclass(frozen=True)
class DailyCost:
    """One day's settled cost split into the four hinge terms plus capital."""

    date: _date
    peak_purchase: float
    peak_sale: float
    offpeak_purchase: float
    offpeak_sale: float
    capital: float
    total: float


@dataclass(frozen=True)
class MonthlyCost:
    year: int
    month: int
    days: int
    operational: float  # purchases - sales, capital excluded
    capital: float
    total: float

    @property
    def label(self) -> str:
        return f"{self.year:04d}-{self.month:02d}"


@dataclass(frozen=True)
class CostReport:
    """Monthly and annual cost totals with savings against the no-asset baseline.

    ``annual_total == annual_operational + annual_capital`` by
    construction, so the two savings rows always differ by exactly the
    annual capital cost.  Totals cover the days present in the dataset
    (a full year for annual figures).
    """

    b: float
    a: float
    days: int
    months: tuple[MonthlyCost, ...]
    annual_operational: float
    annual_capital: float
    annual_total: float
    baseline_total: float
    savings_excluding_capital: float
    savings_including_capital: float
    period_netting_total: float  # diagnostic: end-of-month netting variant


def daily_cost(
    record: DailyRecord,
    b: float,
    a: float,
    tariff: TariffSchedule,
    costs: AmortizedCosts,
    panel: PanelModel,
    partition: PeriodPartition,
) -> DailyCost:
    """Settle one day: storage fully discharges in peak, recharges off-peak."""
    if b < 0.0 or a < 0.0:
        raise ValueError(f"storage and panel area must be >= 0, got b={b}, a={a}")
    eh = pv_energy(record.s_peak, partition.peak_hours, a, panel)
    el = pv_energy(record.s_offpeak, partition.offpeak_hours, a, panel)
    peak_purchase = tariff.lambda_h * max(record.h_peak - eh - b, 0.0)
    peak_sale = tariff.mu_h * max(eh + b - record.h_peak, 0.0)
    offpeak_purchase = tariff.lambda_l * max(record.h_offpeak + b - el, 0.0)
    offpeak_sale = tariff.mu_l * max(el - b - record.h_offpeak, 0.0)
    capital = costs.lambda_b * b + costs.lambda_a * a
    total = peak_purchase - peak_sale + offpeak_purchase - offpeak_sale + capital
    return DailyCost(
        date=record.date,
        peak_purchase=peak_purchase,
        peak_sale=peak_sale,
        offpeak_purchase=offpeak_purchase,
        offpeak_sale=offpeak_sale,
        capital=capital,
        total=total,
    )


def baseline_cost(dataset: Dataset, tariff: TariffSchedule) -> float:
    """Total cost over the dataset with no storage and no solar."""
    return math.fsum(
        tariff.lambda_h * r.h_peak + tariff.lambda_l * r.h_offpeak for r in dataset
    )


def _monthly(dataset: Dataset, dailies) -> tuple[MonthlyCost, ...]:
    buckets: dict[tuple[int, int], list[DailyCost]] = {}
    for d in dailies:
        buckets.setdefault((d.date.year, d.date.month), []).append(d)
    months = []
    for (year, month), items in sorted(buckets.items()):
        operational = math.fsum(d.total - d.capital for d in items)
        capital = math.fsum(d.capital for d in items)
        months.append(
            MonthlyCost(
                year=year,
                month=month,
                days=len(items),
                operational=operational,
                capital=capital,
                total=operational + capital,
            )
        )
    return tuple(months)


def period_netting_total(
    dataset: Dataset,
    b: float,
    a: float,
    tariff: TariffSchedule,
    costs: AmortizedCosts,
    panel: PanelModel,
) -> float:
    """End-of-month netting variant: each period nets over the whole month."""
    part = dataset.partition
    buckets: dict[tuple[int, int], list[DailyRecord]] = {}
    for r in dataset:
        buckets.setdefault((r.date.year, r.date.month), []).append(r)
    total = 0.0
    for _, records in sorted(buckets.items()):
        net_h = math.fsum(
            r.h_peak - pv_energy(r.s_peak, part.peak_hours, a, panel) - b for r in records
        )
        net_l = math.fsum(
            r.h_offpeak + b - pv_energy(r.s_offpeak, part.offpeak_hours, a, panel)
            for r in records
        )
        total += tariff.lambda_h * max(net_h, 0.0) - tariff.mu_h * max(-net_h, 0.0)
        total += tariff.lambda_l * max(net_l, 0.0) - tariff.mu_l * max(-net_l, 0.0)
        total += (costs.lambda_b * b + costs.lambda_a * a) * len(records)
    return total


def simulate(
    dataset: Dataset,
    b: float,
    a: float,
    tariff: TariffSchedule,
    costs: AmortizedCosts,
    panel: PanelModel,
) -> CostReport:
    """Settle every day in the dataset and aggregate to a monthly report.

    The baseline is recomputed through the identical daily path with
    b=0, a=0 and zero capital, so a b=0, a=0 simulation reports savings
    of exactly 0.
    """
    part = dataset.partition
    dailies = [daily_cost(r, b, a, tariff, costs, panel, part) for r in dataset]
    months = _monthly(dataset, dailies)
    annual_operational = math.fsum(m.operational for m in months)
    annual_capital = math.fsum(m.capital for m in months)
    annual_total = annual_operational + annual_capital

    zero_costs = AmortizedCosts(0.0, 0.0)
    base_months = _monthly(
        dataset, [daily_cost(r, 0.0, 0.0, tariff, zero_costs, panel, part) for r in dataset]
    )
    baseline_total = math.fsum(m.operational for m in base_months) + math.fsum(
        m.capital for m in base_months
    )

    return CostReport(
        b=b,
        a=a,
        days=len(dataset),
        months=months,
        annual_operational=annual_operational,
        annual_capital=annual_capital,
        annual_total=annual_total,
        baseline_total=baseline_total,
        savings_excluding_capital=baseline_total - annual_operational,
        savings_including_capital=baseline_total - annual_total,
        period_netting_total=period_netting_total(dataset, b, a, tariff, costs, panel),
    )


def cost_matrix(
    dataset: Dataset,
    b_values,
    a_values,
    tariff: TariffSchedule,
    costs: AmortizedCosts,
    panel: PanelModel,
) -> np.ndarray:
    """Dataset-total cost for every (b, a) pair, shape (len(b), len(a)).

    Vectorized equivalent of summing :func:`daily_cost` totals; grid
    scans call this instead of the scalar path.
    """
    part = dataset.partition
    b_values = np.asarray(b_values, dtype=float)
    a_values = np.asarray(a_values, dtype=float)
    hh = dataset.h_peak
    hl = dataset.h_offpeak
    yld = panel.effective_yield
    eh = dataset.s_peak * yld * part.peak_hours / 1000.0  # kWh per m2 per day
    el = dataset.s_offpeak * yld * part.offpeak_hours / 1000.0
    n_days = len(dataset)

    out = np.empty((b_values.size, a_values.size))
    pv_h = a_values[:, None] * eh[None, :]  # (na, n_days)
    pv_l = a_values[:, None] * el[None, :]
    for i, b in enumerate(b_values):
        d_h = hh[None, :] - pv_h - b
        d_l = hl[None, :] + b - pv_l
        day_cost = (
            tariff.lambda_h * np.maximum(d_h, 0.0)
            - tariff.mu_h * np.maximum(-d_h, 0.0)
            + tariff.lambda_l * np.maximum(d_l, 0.0)
            - tariff.mu_l * np.maximum(-d_l, 0.0)
        )
        out[i, :] = day_cost.sum(axis=1) + n_days * (
            costs.lambda_b * b + costs.lambda_a * a_values
        )
    return out


# ---------------------------------------------------------------------------
# Report rendering
# ---------------------------------------------------------------------------

SUMMARY_LABELS = (
    ("baseline (no storage, no solar)", "baseline_total"),
    ("total", "annual_total"),
    ("capital", "annual_capital"),
    ("total excluding capital", "annual_operational"),
    ("savings excluding capital", "savings_excluding_capital"),
    ("savings including capital", "savings_including_capital"),
)


def report_rows(report: CostReport) -> list[tuple[str, float]]:
    """Flatten a report to (label, dollars) rows: months first, then summary."""
    rows = [(m.label, m.total) for m in report.months]
    rows.extend((label, getattr(report, attr)) for label, attr in SUMMARY_LABELS)
    rows.append(("diagnostic: end-of-month netting total", report.period_netting_total))
    return rows


def report_to_text(report: CostReport) -> str:
    lines = [
        f"cost report  (b = {report.b:g} kWh, a = {report.a:g} m2, {report.days} days)",
        "",
        f"{'month':<38}{'total $':>12}",
    ]
    for m in report.months:
        lines.append(f"{m.label:<38}{m.total:>12.2f}")
    lines.append("-" * 50)
    for label, attr in SUMMARY_LABELS:
        lines.append(f"{label:<38}{getattr(report, attr):>12.2f}")
    lines.append("")
    lines.append(
        f"diagnostic: end-of-month netting total {report.period_netting_total:>11.2f}"
    )
    return "\n".join(lines) + "\n"


def report_to_json(report: CostReport) -> str:
    payload = {
        "b_kwh": report.b,
        "a_m2": report.a,
        "days": report.days,
        "months": [
            {
                "month": m.label,
                "days": m.days,
                "operational": m.operational,
                "capital": m.capital,
                "total": m.total,
            }
            for m in report.months
        ],
        "summary": {attr: getattr(report, attr) for _, attr in SUMMARY_LABELS},
        "diagnostics": {"period_netting_total": report.period_netting_total},
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def report_to_csv(report: CostReport) -> str:
    lines = ["label,dollars"]
    lines.extend(f"{label},{value!r}" for label, value in report_rows(report))
    return "\n".join(lines) + "\n"
