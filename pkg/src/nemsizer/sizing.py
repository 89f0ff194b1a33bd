"""Investment sizing: storage fractile rule, solar bang-bang rule, grid scans.

The storage capacity decision is a newsvendor-style quantile: the CDF of
daily peak consumption is inverted at the critical fractile
``(lambda_h - lambda_l - lambda_b) / (lambda_h - mu_h)``.  Fractiles at
or outside [0, 1] are surfaced as explicit regimes instead of clamped
silently, because realistic prices do reach them.  The solar decision
under buy==sell parity is bang-bang: everything or nothing depending on
whether the mean PV revenue per m2 covers the amortized panel cost.
Brute-force scans over (b, a) validate both rules and handle the
non-parity solar case, for which no closed form exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .billing import cost_matrix
from .distribution import EmpiricalDistribution
from .errors import DegenerateTariff, ParityRequired
from .ingest import Dataset
from .tariffs import (
    AmortizedCosts,
    PanelModel,
    PeriodPartition,
    TariffSchedule,
    fractile,
    pv_energy,
)
from .validation import as_sample_array, check_nonnegative


class Regime(str, Enum):
    """Where the storage fractile lands: inside (0,1) or at a boundary."""

    INTERIOR = "interior"
    ZERO_STORAGE = "zero_storage"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class SizingResult:
    """Outcome of a closed-form sizing rule (storage part, solar part or both)."""

    b_opt: float | None = None
    fractile_value: float | None = None
    regime: Regime | None = None
    a_opt: float | None = None
    solar_condition_lhs: float | None = None  # $/m2/day mean PV revenue
    solar_condition_rhs: float | None = None  # $/m2/day amortized panel cost
    warning: str | None = None


@dataclass(frozen=True, eq=False)
class CostSurface:
    """Dataset-total cost ($ over the dataset's days) on a (b, a) grid."""

    b_grid: np.ndarray
    a_grid: np.ndarray
    costs: np.ndarray  # shape (len(b_grid), len(a_grid))

    def __post_init__(self):
        if self.costs.shape != (self.b_grid.size, self.a_grid.size):
            raise ValueError("cost matrix shape does not match the grids")
        if not np.all(np.isfinite(self.costs)):
            raise ValueError("cost matrix contains non-finite values")

    @property
    def argmin_indices(self) -> tuple[int, int]:
        # np.argmin takes the first minimum in row-major order, which is the
        # lexicographically smallest (b, a) pair for ascending grids.
        i, j = np.unravel_index(int(np.argmin(self.costs)), self.costs.shape)
        return int(i), int(j)

    @property
    def argmin(self) -> tuple[float, float]:
        i, j = self.argmin_indices
        return float(self.b_grid[i]), float(self.a_grid[j])

    @property
    def min_cost(self) -> float:
        i, j = self.argmin_indices
        return float(self.costs[i, j])

    def rows(self):
        """Yield (b, a, cost) triples for CSV export."""
        for i, b in enumerate(self.b_grid):
            for j, a in enumerate(self.a_grid):
                yield float(b), float(a), float(self.costs[i, j])


@dataclass(frozen=True)
class SequentialPoint:
    """One-after-the-other decision: storage rule first, then panel area."""

    storage: SizingResult
    b_rounded: float  # nearest whole kWh, the figure a buyer would order
    a_opt: float  # scan argmin over the a grid at the exact b
    cost: float  # dataset total at (storage.b_opt, a_opt)
    cost_rounded: float  # dataset total at (b_rounded, a_opt)


@dataclass(frozen=True, eq=False)
class JointScanResult:
    """Joint grid search plus the sequential point for comparison.

    ``sequential`` is None when the tariff does not admit the storage
    rule (non-strict price chain).
    """

    surface: CostSurface
    sequential: SequentialPoint | None


def optimal_storage(
    dist_hh: EmpiricalDistribution,
    tariff: TariffSchedule,
    costs: AmortizedCosts,
    b_max: float,
) -> SizingResult:
    """Storage capacity decision: invert the consumption CDF at the fractile.

    Fractile <= 0 means storage never pays (b = 0); fractile >= 1 means
    the model sees unbounded arbitrage value, so the caller's ``b_max``
    is returned with a warning rather than pretending a finite optimum
    exists.
    """
    if not tariff.is_strict():
        raise DegenerateTariff(
            "storage sizing needs strictly ordered prices "
            "lambda_h > mu_h > lambda_l > mu_l, got "
            f"({tariff.lambda_h}, {tariff.mu_h}, {tariff.lambda_l}, {tariff.mu_l})"
        )
    if not b_max > 0.0:
        raise ValueError(f"b_max must be > 0, got {b_max}")
    f = fractile(tariff, costs)
    if f <= 0.0:
        return SizingResult(b_opt=0.0, fractile_value=f, regime=Regime.ZERO_STORAGE)
    if f >= 1.0:
        return SizingResult(
            b_opt=float(b_max),
            fractile_value=f,
            regime=Regime.UNBOUNDED,
            warning=(
                f"fractile {f:.4f} >= 1: peak-sell minus off-peak-buy covers the "
                "daily capital cost, so the model value of storage grows without "
                f"bound; reporting the caller's cap b_max = {b_max:g} kWh"
            ),
        )
    return SizingResult(
        b_opt=dist_hh.quantile(f), fractile_value=f, regime=Regime.INTERIOR
    )


def expected_cost_storage(
    dist_hh: EmpiricalDistribution,
    mean_hl: float,
    tariff: TariffSchedule,
    costs: AmortizedCosts,
    b: float,
) -> float:
    """Expected daily cost with storage ``b``: capital + hinge expectations.

    Exact sample arithmetic in ECDF mode; the smoothed (KDE) variant is
    what the first-order-condition checks differentiate.
    """
    check_nonnegative(b, "b")
    return (
        costs.lambda_b * b
        + tariff.lambda_h * dist_hh.expected_shortage(b)
        - tariff.mu_h * dist_hh.expected_surplus(b)
        + tariff.lambda_l * (mean_hl + b)
    )


def optimal_cost_identity(
    dist_hh: EmpiricalDistribution,
    mean_hl: float,
    tariff: TariffSchedule,
    costs: AmortizedCosts,
    b_opt: float,
) -> tuple[float, float]:
    """Both sides of the optimal-cost identity at ``b_opt``.

    Returns (tail-expectation form, direct expected-cost form).  The tail
    form prices the peak consumption above ``b_opt`` at the buy price and
    the rest at the sell price, with a threshold tie belonging to the
    sell side: that is the split under which the two forms agree exactly
    whenever the CDF at ``b_opt`` equals the fractile, including on step
    ECDFs where ties carry mass.
    """
    above = dist_hh.partial_expectation(b_opt, "above", inclusive=False)
    below = dist_hh.partial_expectation(b_opt, "below", inclusive=True)
    tail_form = (
        tariff.lambda_h * above + tariff.mu_h * below + tariff.lambda_l * mean_hl
    )
    direct_form = expected_cost_storage(dist_hh, mean_hl, tariff, costs, b_opt)
    return tail_form, direct_form


def optimal_solar(
    mean_sh_energy: float,
    mean_sl_energy: float,
    tariff: TariffSchedule,
    costs: AmortizedCosts,
    a_max: float,
) -> SizingResult:
    """Panel-area decision under buy==sell parity: all of ``a_max`` or nothing.

    Inputs are mean PV energies per m2 per day (apply :func:`pv_energy`
    to the period-mean irradiances first).  Raises
    :class:`~nemsizer.errors.ParityRequired` for non-parity tariffs,
    which only the numeric scans can size.
    """
    if not tariff.is_parity():
        raise ParityRequired(
            "the closed-form solar rule needs lambda_h == mu_h and "
            "lambda_l == mu_l; size the panel area with a numeric scan "
            "(joint_scan) under asymmetric prices"
        )
    if not a_max > 0.0:
        raise ValueError(f"a_max must be > 0, got {a_max}")
    check_nonnegative(mean_sh_energy, "mean_sh_energy")
    check_nonnegative(mean_sl_energy, "mean_sl_energy")
    lhs = tariff.lambda_h * mean_sh_energy + tariff.lambda_l * mean_sl_energy
    rhs = costs.lambda_a
    return SizingResult(
        a_opt=float(a_max) if lhs >= rhs else 0.0,
        solar_condition_lhs=lhs,
        solar_condition_rhs=rhs,
    )


def _check_grid(grid, name: str) -> np.ndarray:
    g = np.asarray(grid, dtype=float)
    if g.ndim != 1 or g.size == 0:
        raise ValueError(f"{name} must be a nonempty 1-D grid")
    if np.any(np.diff(g) < 0.0):
        raise ValueError(f"{name} must be nondecreasing")
    if np.any(g < 0.0) or not np.all(np.isfinite(g)):
        raise ValueError(f"{name} values must be finite and >= 0")
    return g


def default_b_grid(h_peak_samples, step: float = 0.5) -> np.ndarray:
    """0 to 1.5x the 0.999 consumption quantile (desk-scale sweep in seconds)."""
    dist = EmpiricalDistribution(mode="ecdf").fit(as_sample_array(h_peak_samples))
    top = 1.5 * dist.quantile(0.999)
    return np.arange(0.0, top + step, step)


def default_a_grid(a_max: float, step: float = 0.5) -> np.ndarray:
    """0 to ``a_max`` inclusive; the endpoint matters for the bang-bang check."""
    if not a_max > 0.0:
        raise ValueError(f"a_max must be > 0, got {a_max}")
    grid = np.arange(0.0, a_max, step)
    return np.append(grid, a_max)


def storage_scan(
    dataset: Dataset,
    tariff: TariffSchedule,
    costs: AmortizedCosts,
    b_grid,
) -> CostSurface:
    """Numeric oracle for the storage rule: exact ECDF cost at each grid b.

    Costs are dataset totals (expected daily cost times the day count),
    matching the units of :func:`joint_scan`.
    """
    b_grid = _check_grid(b_grid, "b_grid")
    dist = EmpiricalDistribution(mode="ecdf").fit(dataset.h_peak)
    mean_hl = float(np.mean(dataset.h_offpeak))
    n = len(dataset)
    col = np.array(
        [n * expected_cost_storage(dist, mean_hl, tariff, costs, b) for b in b_grid]
    )
    return CostSurface(b_grid=b_grid, a_grid=np.array([0.0]), costs=col[:, None])


def joint_scan(
    dataset: Dataset,
    tariff: TariffSchedule,
    costs: AmortizedCosts,
    panel: PanelModel,
    b_grid,
    a_grid,
    *,
    mode: str = "kde",
    bandwidth: float | None = None,
) -> JointScanResult:
    """Brute-force (b, a) search over dataset-total realized cost.

    The evaluated b values are the caller's grid augmented with the
    sequential point's exact and rounded b, so the grid minimum can never
    exceed the sequential cost.  ``mode`` selects how the sequential
    storage quantile is inverted (smoothed CDF by default).
    """
    b_grid = _check_grid(b_grid, "b_grid")
    a_grid = _check_grid(a_grid, "a_grid")

    sequential_storage = None
    if tariff.is_strict():
        dist = EmpiricalDistribution(mode=mode, bandwidth=bandwidth).fit(dataset.h_peak)
        b_cap = float(b_grid[-1]) if b_grid[-1] > 0.0 else 1.0
        sequential_storage = optimal_storage(dist, tariff, costs, b_max=b_cap)

    b_eval = b_grid
    if sequential_storage is not None:
        b_seq = sequential_storage.b_opt
        b_rounded = float(round(b_seq))
        b_eval = np.unique(np.concatenate([b_grid, [b_seq, b_rounded]]))

    cost = cost_matrix(dataset, b_eval, a_grid, tariff, costs, panel)
    surface = CostSurface(b_grid=b_eval, a_grid=a_grid, costs=cost)

    sequential = None
    if sequential_storage is not None:
        i_exact = int(np.searchsorted(b_eval, b_seq))
        i_round = int(np.searchsorted(b_eval, b_rounded))
        j = int(np.argmin(cost[i_exact, :]))
        sequential = SequentialPoint(
            storage=sequential_storage,
            b_rounded=b_rounded,
            a_opt=float(a_grid[j]),
            cost=float(cost[i_exact, j]),
            cost_rounded=float(cost[i_round, j]),
        )
    return JointScanResult(surface=surface, sequential=sequential)


# ---------------------------------------------------------------------------
# Estimator layer
# ---------------------------------------------------------------------------


class StorageSizer(BaseEstimator):
    """Estimator wrapper around the storage rule.

    ``fit(X)`` accepts a :class:`~nemsizer.ingest.Dataset` or a 1-D array
    of daily peak consumption (kWh) and exposes ``b_opt_``, ``fractile_``,
    ``regime_``, ``distribution_`` and ``result_``.

    Parameters
    ----------
    tariff, costs : model prices; required at fit time.
    b_max : cap reported in the unbounded regime (does not bind otherwise).
    mode, bandwidth : CDF estimate used for the quantile inversion.
    """

    def __init__(
        self,
        tariff: TariffSchedule | None = None,
        costs: AmortizedCosts | None = None,
        b_max: float = 100.0,
        mode: str = "kde",
        bandwidth: float | None = None,
    ):
        self.tariff = tariff
        self.costs = costs
        self.b_max = b_max
        self.mode = mode
        self.bandwidth = bandwidth

    def fit(self, X, y=None):
        if self.tariff is None or self.costs is None:
            raise ValueError("StorageSizer requires tariff and costs")
        x = X.h_peak if isinstance(X, Dataset) else as_sample_array(X)
        dist = EmpiricalDistribution(mode=self.mode, bandwidth=self.bandwidth).fit(x)
        result = optimal_storage(dist, self.tariff, self.costs, self.b_max)
        self.distribution_ = dist
        self.result_ = result
        self.b_opt_ = result.b_opt
        self.fractile_ = result.fractile_value
        self.regime_ = result.regime
        return self

    def quantile(self, p: float) -> float:
        """Consumption quantile from the fitted distribution."""
        check_is_fitted(self, "distribution_")
        return self.distribution_.quantile(p)


class SolarSizer(BaseEstimator):
    """Estimator wrapper around the parity bang-bang solar rule.

    ``fit(X)`` accepts a :class:`~nemsizer.ingest.Dataset` (its partition
    is used unless one is given) or an (n, 2) array of daily mean
    irradiances [peak, off-peak] in W/m2, and exposes ``a_opt_``,
    ``condition_lhs_``, ``condition_rhs_`` and ``result_``.
    """

    def __init__(
        self,
        tariff: TariffSchedule | None = None,
        costs: AmortizedCosts | None = None,
        panel: PanelModel | None = None,
        partition: PeriodPartition | None = None,
        a_max: float | None = None,
    ):
        self.tariff = tariff
        self.costs = costs
        self.panel = panel
        self.partition = partition
        self.a_max = a_max

    def fit(self, X, y=None):
        if self.tariff is None or self.costs is None or self.panel is None:
            raise ValueError("SolarSizer requires tariff, costs and panel")
        if self.a_max is None:
            raise ValueError("SolarSizer requires a_max (no sensible default)")
        if isinstance(X, Dataset):
            sh, sl = X.s_peak, X.s_offpeak
            partition = self.partition or X.partition
        else:
            arr = np.asarray(X, dtype=float)
            if arr.ndim != 2 or arr.shape[1] != 2:
                raise ValueError(
                    f"expected an (n, 2) array of [s_peak, s_offpeak], got {arr.shape}"
                )
            if self.partition is None:
                raise ValueError("partition is required with array input")
            sh, sl = arr[:, 0], arr[:, 1]
            partition = self.partition
        mean_sh_energy = pv_energy(float(np.mean(sh)), partition.peak_hours, 1.0, self.panel)
        mean_sl_energy = pv_energy(float(np.mean(sl)), partition.offpeak_hours, 1.0, self.panel)
        result = optimal_solar(mean_sh_energy, mean_sl_energy, self.tariff, self.costs, self.a_max)
        self.result_ = result
        self.a_opt_ = result.a_opt
        self.condition_lhs_ = result.solar_condition_lhs
        self.condition_rhs_ = result.solar_condition_rhs
        return self
