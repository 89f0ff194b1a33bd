"""Optimal storage and solar sizing for a net-metered, time-of-use household.

Closed-form investment rules (newsvendor-style storage fractile, bang-bang
panel area), an empirical-distribution estimator backing them, numeric
grid-scan oracles, and a daily billing simulator that reproduces the
monthly/annual cost breakdown from interval meter data.
"""

from .billing import (
    CostReport,
    DailyCost,
    MonthlyCost,
    baseline_cost,
    cost_matrix,
    daily_cost,
    period_netting_total,
    simulate,
)
from .config import RunConfig, load_config
from .distribution import EmpiricalDistribution, silverman_bandwidth
from .errors import (
    ConfigError,
    DegenerateSamples,
    DegenerateTariff,
    InputError,
    InvalidLawParameters,
    MalformedRow,
    MissingColumn,
    ModelError,
    NegativeIrradiance,
    NemsizerError,
    NonMonotonicTimestamp,
    ParityRequired,
    ProbabilityOutOfRange,
)
from .ingest import (
    ColumnMap,
    DailyRecord,
    Dataset,
    MeterSample,
    ParsedSeries,
    aggregate_daily,
    parse_interval_csv,
    read_dataset_csv,
    synth_dataset,
    write_dataset_csv,
)
from .sizing import (
    CostSurface,
    JointScanResult,
    Regime,
    SequentialPoint,
    SizingResult,
    SolarSizer,
    StorageSizer,
    default_a_grid,
    default_b_grid,
    expected_cost_storage,
    joint_scan,
    optimal_cost_identity,
    optimal_solar,
    optimal_storage,
    storage_scan,
)
from .tariffs import (
    AmortizedCosts,
    PanelModel,
    PeriodPartition,
    TariffSchedule,
    arbitrage_viable,
    fractile,
    pv_energy,
)

__version__ = "0.1.0"

__all__ = [
    "AmortizedCosts",
    "ColumnMap",
    "ConfigError",
    "CostReport",
    "CostSurface",
    "DailyCost",
    "DailyRecord",
    "Dataset",
    "DegenerateSamples",
    "DegenerateTariff",
    "EmpiricalDistribution",
    "InputError",
    "InvalidLawParameters",
    "JointScanResult",
    "MalformedRow",
    "MeterSample",
    "MissingColumn",
    "ModelError",
    "MonthlyCost",
    "NegativeIrradiance",
    "NemsizerError",
    "NonMonotonicTimestamp",
    "PanelModel",
    "ParityRequired",
    "ParsedSeries",
    "PeriodPartition",
    "ProbabilityOutOfRange",
    "Regime",
    "RunConfig",
    "SequentialPoint",
    "SizingResult",
    "SolarSizer",
    "StorageSizer",
    "TariffSchedule",
    "aggregate_daily",
    "arbitrage_viable",
    "baseline_cost",
    "cost_matrix",
    "daily_cost",
    "default_a_grid",
    "default_b_grid",
    "expected_cost_storage",
    "fractile",
    "joint_scan",
    "load_config",
    "optimal_cost_identity",
    "optimal_solar",
    "optimal_storage",
    "parse_interval_csv",
    "period_netting_total",
    "pv_energy",
    "read_dataset_csv",
    "silverman_bandwidth",
    "simulate",
    "storage_scan",
    "synth_dataset",
    "write_dataset_csv",
]
