"""Shared fixtures: worked-example prices and dataset builders."""

from __future__ import annotations

from datetime import date, timedelta

import numpy as np
import pytest

from nemsizer import (
    AmortizedCosts,
    DailyRecord,
    Dataset,
    PanelModel,
    PeriodPartition,
    TariffSchedule,
)

# Texas worked-example parameters: 54/30/22/13 c/kWh prices, storage at
# 323 $/kWh over 10 years, panels at 3 $/W over 25 years.
TARIFF = TariffSchedule(lambda_h=0.54, mu_h=0.30, lambda_l=0.22, mu_l=0.13)
COSTS = AmortizedCosts(lambda_b=0.0884, lambda_a=0.0558)
PARITY_TARIFF = TariffSchedule(lambda_h=0.54, mu_h=0.54, lambda_l=0.22, mu_l=0.22)
PANEL = PanelModel(rated_output=183.0, reference_irradiance=1000.0, system_efficiency=0.93)
# Panel behaving as the rounded 170 W/m2 effective figure the cost walkthroughs use.
PANEL_170 = PanelModel(rated_output=170.0, reference_irradiance=1000.0, system_efficiency=1.0)
PARTITION = PeriodPartition(8, 22)


@pytest.fixture
def tariff():
    return TARIFF


@pytest.fixture
def costs():
    return COSTS


@pytest.fixture
def parity_tariff():
    return PARITY_TARIFF


@pytest.fixture
def panel():
    return PANEL


@pytest.fixture
def partition():
    return PARTITION


def dataset_from_arrays(
    h_peak,
    h_offpeak=None,
    s_peak=None,
    s_offpeak=None,
    partition: PeriodPartition = PARTITION,
    start: date = date(2016, 1, 1),
) -> Dataset:
    """Wrap plain arrays as a Dataset (zeros for whatever is omitted)."""
    h_peak = np.asarray(h_peak, dtype=float)
    n = h_peak.size

    def col(values):
        if values is None:
            return np.zeros(n)
        v = np.asarray(values, dtype=float)
        return np.full(n, float(v)) if v.ndim == 0 else v

    h_offpeak, s_peak, s_offpeak = col(h_offpeak), col(s_peak), col(s_offpeak)
    records = tuple(
        DailyRecord(
            date=start + timedelta(days=i),
            h_peak=float(h_peak[i]),
            h_offpeak=float(h_offpeak[i]),
            s_peak=float(s_peak[i]),
            s_offpeak=float(s_offpeak[i]),
        )
        for i in range(n)
    )
    return Dataset(records=records, partition=partition, source="arrays")
