"""Tariff, capital-cost, period and PV-panel parameter types.

All prices are plain decimal $/kWh; energies are kWh; panel areas are m2.
Every type is a frozen dataclass validated on construction, so instances
can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateTariff, NegativeIrradiance
from .validation import check_nonnegative


@dataclass(frozen=True)
class TariffSchedule:
    """Buy/sell prices for the two daily price periods, $/kWh.

    The constructor enforces the weak chain
    ``lambda_h >= mu_h >= lambda_l >= mu_l`` (all positive).  The strict
    chain needed by the storage rule and the buy==sell parity needed by
    the closed-form solar rule are reported by predicates, not enforced,
    so both use cases share one type.
    """

    lambda_h: float  # peak buy
    mu_h: float  # peak sell
    lambda_l: float  # off-peak buy
    mu_l: float  # off-peak sell

    def __post_init__(self):
        prices = (self.lambda_h, self.mu_h, self.lambda_l, self.mu_l)
        if not all(p > 0.0 for p in prices):
            raise ValueError(f"all four prices must be > 0, got {prices}")
        if not (self.lambda_h >= self.mu_h >= self.lambda_l >= self.mu_l):
            raise ValueError(
                "prices must satisfy lambda_h >= mu_h >= lambda_l >= mu_l, "
                f"got {prices}"
            )

    def is_strict(self) -> bool:
        """True when the full chain is strict (storage-rule precondition)."""
        return self.lambda_h > self.mu_h > self.lambda_l > self.mu_l

    def is_parity(self) -> bool:
        """True when buy == sell in both periods (solar-rule precondition)."""
        return self.lambda_h == self.mu_h and self.lambda_l == self.mu_l


@dataclass(frozen=True)
class AmortizedCosts:
    """Daily amortized capital costs: storage $/kWh/day, panel $/m2/day."""

    lambda_b: float
    lambda_a: float = 0.0

    def __post_init__(self):
        check_nonnegative(self.lambda_b, "lambda_b")
        check_nonnegative(self.lambda_a, "lambda_a")


@dataclass(frozen=True)
class PeriodPartition:
    """Fixed daily peak window ``[peak_start_hour, peak_end_hour)``.

    Off-peak is the complement within the same calendar day, so the two
    durations always sum to 24 h.
    """

    peak_start_hour: int
    peak_end_hour: int

    def __post_init__(self):
        s, e = self.peak_start_hour, self.peak_end_hour
        if not (isinstance(s, int) and isinstance(e, int)):
            raise ValueError("partition hours must be integers")
        if not 0 <= s < e <= 24:
            raise ValueError(f"need 0 <= peak_start < peak_end <= 24, got [{s}, {e})")

    @property
    def peak_hours(self) -> float:
        return float(self.peak_end_hour - self.peak_start_hour)

    @property
    def offpeak_hours(self) -> float:
        return 24.0 - self.peak_hours

    def is_peak(self, hour_of_day: float) -> bool:
        """Membership test for the half-open peak window."""
        return self.peak_start_hour <= hour_of_day < self.peak_end_hour


@dataclass(frozen=True)
class PanelModel:
    """PV panel rating: W/m2 of output at a reference irradiance.

    The effective yield (kW of output per kW/m2 of irradiance per m2 of
    panel) is ``rated_output * system_efficiency / reference_irradiance``.
    """

    rated_output: float  # W/m2 at reference irradiance
    reference_irradiance: float = 1000.0  # W/m2
    system_efficiency: float = 1.0

    def __post_init__(self):
        if self.rated_output <= 0.0:
            raise ValueError(f"rated_output must be > 0, got {self.rated_output}")
        if self.reference_irradiance <= 0.0:
            raise ValueError(
                f"reference_irradiance must be > 0, got {self.reference_irradiance}"
            )
        if not 0.0 < self.system_efficiency <= 1.0:
            raise ValueError(
                f"system_efficiency must be in (0, 1], got {self.system_efficiency}"
            )

    @property
    def effective_yield(self) -> float:
        """kW produced per m2 of panel per kW/m2 of irradiance."""
        return self.rated_output * self.system_efficiency / self.reference_irradiance


def fractile(tariff: TariffSchedule, costs: AmortizedCosts) -> float:
    """Critical fractile of the storage decision, unclamped.

    ``(lambda_h - lambda_l - lambda_b) / (lambda_h - mu_h)``.  Values
    outside [0, 1] signal the zero-storage / unbounded regimes; the caller
    interprets them (see :func:`nemsizer.sizing.optimal_storage`).
    """
    denom = tariff.lambda_h - tariff.mu_h
    if denom <= 0.0:
        raise DegenerateTariff(
            "fractile undefined: lambda_h must exceed mu_h "
            f"(got lambda_h={tariff.lambda_h}, mu_h={tariff.mu_h})"
        )
    return (tariff.lambda_h - tariff.lambda_l - costs.lambda_b) / denom


def arbitrage_viable(tariff: TariffSchedule, costs: AmortizedCosts) -> bool:
    """True when buying off-peak to sell peak covers the daily capital cost.

    ``mu_h - lambda_l >= lambda_b``; algebraically equivalent to
    ``fractile >= 1`` (the unbounded-storage regime).
    """
    return tariff.mu_h - tariff.lambda_l >= costs.lambda_b


def pv_energy(
    irradiance_mean: float, duration_hours: float, area: float, panel: PanelModel
) -> float:
    """Energy (kWh) from ``area`` m2 of panel over one price period.

    Uses the period-mean irradiance (W/m2) times the period duration; the
    daily aggregation layer produces exactly those means.
    """
    if irradiance_mean < 0.0:
        raise NegativeIrradiance(
            f"irradiance must be >= 0 after ingest clamping, got {irradiance_mean}"
        )
    if duration_hours <= 0.0:
        raise ValueError(f"duration_hours must be > 0, got {duration_hours}")
    check_nonnegative(area, "area")
    return area * irradiance_mean * panel.effective_yield * duration_hours / 1000.0
