"""Key/value run configuration.

The config file is plain text, one ``key = value`` per line, ``#``
comments allowed.  Prices are required (no hidden defaults: a silently
assumed tariff is how sizing tools mislead people); column-name keys are
optional and default to the documented raw-CSV header names.

Keys
----
lambda_h, mu_h, lambda_l, mu_l   prices, $/kWh
lambda_b                         storage capital, $/kWh/day
lambda_a                         panel capital, $/m2/day
peak_start, peak_end             peak window hours, integers in [0, 24]
panel_rated_w                    panel output at reference irradiance, W/m2
panel_ref_irradiance             reference irradiance, W/m2
panel_efficiency                 system efficiency, fraction in (0, 1]
col_timestamp, col_load, col_irradiance   optional raw-CSV column names
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError
from .ingest import ColumnMap
from .tariffs import AmortizedCosts, PanelModel, PeriodPartition, TariffSchedule

_REQUIRED = (
    "lambda_h",
    "mu_h",
    "lambda_l",
    "mu_l",
    "lambda_b",
    "lambda_a",
    "peak_start",
    "peak_end",
    "panel_rated_w",
    "panel_ref_irradiance",
    "panel_efficiency",
)
_OPTIONAL = ("col_timestamp", "col_load", "col_irradiance")


@dataclass(frozen=True)
class RunConfig:
    """Validated model parameters shared by every CLI command."""

    tariff: TariffSchedule
    costs: AmortizedCosts
    partition: PeriodPartition
    panel: PanelModel
    columns: ColumnMap
    path: str = ""


def _parse_pairs(path) -> dict[str, str]:
    pairs: dict[str, str] = {}
    with open(path) as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{line_no}: expected 'key = value', got {raw!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if key in pairs:
                raise ConfigError(f"{path}:{line_no}: duplicate key {key!r}")
            if key not in _REQUIRED and key not in _OPTIONAL:
                raise ConfigError(f"{path}:{line_no}: unknown key {key!r}")
            pairs[key] = value
    return pairs


def load_config(path) -> RunConfig:
    """Parse and validate a config file; raises :class:`ConfigError`."""
    try:
        pairs = _parse_pairs(path)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc

    missing = [k for k in _REQUIRED if k not in pairs]
    if missing:
        raise ConfigError(f"{path}: missing required keys: {', '.join(missing)}")

    def number(key: str) -> float:
        try:
            return float(pairs[key])
        except ValueError as exc:
            raise ConfigError(f"{path}: key {key!r}: not a number: {pairs[key]!r}") from exc

    def hour(key: str) -> int:
        value = number(key)
        if value != int(value):
            raise ConfigError(f"{path}: key {key!r} must be a whole hour, got {pairs[key]!r}")
        return int(value)

    try:
        tariff = TariffSchedule(
            lambda_h=number("lambda_h"),
            mu_h=number("mu_h"),
            lambda_l=number("lambda_l"),
            mu_l=number("mu_l"),
        )
        costs = AmortizedCosts(lambda_b=number("lambda_b"), lambda_a=number("lambda_a"))
        partition = PeriodPartition(peak_start_hour=hour("peak_start"), peak_end_hour=hour("peak_end"))
        panel = PanelModel(
            rated_output=number("panel_rated_w"),
            reference_irradiance=number("panel_ref_irradiance"),
            system_efficiency=number("panel_efficiency"),
        )
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc

    columns = ColumnMap(
        timestamp=pairs.get("col_timestamp", ColumnMap.timestamp),
        load=pairs.get("col_load", ColumnMap.load),
        irradiance=pairs.get("col_irradiance", ColumnMap.irradiance),
    )
    return RunConfig(
        tariff=tariff,
        costs=costs,
        partition=partition,
        panel=panel,
        columns=columns,
        path=str(path),
    )
