"""Command-line front end.

Subcommands: ``ingest`` (raw interval CSV -> daily records + summary),
``size`` (closed-form decisions + CDF dump), ``simulate`` (billing
report), ``sweep`` (joint grid search), ``synth`` (synthetic dataset).

Exit codes: 0 success, 2 input error (files, config, CLI usage),
3 model-precondition violation (e.g. degenerate tariff).
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .billing import report_to_csv, report_to_json, report_to_text, simulate
from .config import RunConfig, load_config
from .distribution import EmpiricalDistribution
from .errors import InputError, ModelError
from .ingest import (
    aggregate_daily,
    parse_interval_csv,
    read_dataset_csv,
    synth_dataset,
    write_dataset_csv,
)
from .sizing import (
    Regime,
    default_a_grid,
    default_b_grid,
    joint_scan,
    optimal_cost_identity,
    optimal_solar,
    optimal_storage,
)
from .tariffs import arbitrage_viable, pv_energy


def _parse_grid(spec: str, name: str) -> np.ndarray:
    try:
        start, stop, step = (float(part) for part in spec.split(":"))
    except ValueError:
        raise InputError(f"--{name} expects start:stop:step, got {spec!r}") from None
    if step <= 0 or stop < start:
        raise InputError(f"--{name}: need stop >= start and step > 0, got {spec!r}")
    return np.arange(start, stop + step * 0.5, step)


def _load_dataset(args, cfg: RunConfig):
    return read_dataset_csv(args.data, cfg.partition)


def _print_summary(dataset) -> None:
    cols = (
        ("peak load (kWh/day)", dataset.h_peak),
        ("off-peak load (kWh/day)", dataset.h_offpeak),
        ("peak irradiance (W/m2)", dataset.s_peak),
        ("off-peak irradiance (W/m2)", dataset.s_offpeak),
    )
    stats = ("mean", "std", "min", "25%", "50%", "75%", "max")
    print(f"{'':<10}" + "".join(f"{label:>26}" for label, _ in cols))
    for stat in stats:
        row = []
        for _, values in cols:
            if stat == "mean":
                v = np.mean(values)
            elif stat == "std":
                v = np.std(values, ddof=1)
            elif stat == "min":
                v = np.min(values)
            elif stat == "max":
                v = np.max(values)
            else:
                v = np.percentile(values, float(stat.rstrip("%")))
            row.append(f"{v:>26.2f}")
        print(f"{stat:<10}" + "".join(row))


def cmd_ingest(args) -> int:
    cfg = load_config(args.config)
    parsed = parse_interval_csv(args.data, cfg.columns)
    dataset = aggregate_daily(parsed.samples, cfg.partition, source=str(args.data))
    write_dataset_csv(dataset, args.out)
    print(f"{len(parsed.samples)} samples -> {len(dataset)} daily records -> {args.out}")
    print(f"negative-irradiance rows clamped to 0: {parsed.clamped_rows}")
    if dataset.dropped_dates:
        print(f"days dropped for poor coverage: {', '.join(map(str, dataset.dropped_dates))}")
    if dataset.missing_dates:
        print(f"calendar days missing from the span: {', '.join(map(str, dataset.missing_dates))}")
    print()
    _print_summary(dataset)
    return 0


def cmd_size(args) -> int:
    cfg = load_config(args.config)
    dataset = _load_dataset(args, cfg)
    dist = EmpiricalDistribution(mode=args.mode).fit(dataset.h_peak)

    storage = optimal_storage(dist, cfg.tariff, cfg.costs, b_max=args.b_max)
    print(f"storage fractile        {storage.fractile_value:.6f}")
    print(f"regime                  {storage.regime.value}")
    print(f"optimal storage b       {storage.b_opt:.4f} kWh")
    print(f"arbitrage viable        {arbitrage_viable(cfg.tariff, cfg.costs)}")
    if storage.warning:
        print(f"warning: {storage.warning}")
    if storage.regime is Regime.INTERIOR:
        tail_form, direct_form = optimal_cost_identity(
            dist, float(np.mean(dataset.h_offpeak)), cfg.tariff, cfg.costs, storage.b_opt
        )
        print(f"optimal daily cost      {direct_form:.6f} $/day (direct)")
        print(f"                        {tail_form:.6f} $/day (tail-expectation form)")

    part = dataset.partition
    sh_energy = pv_energy(float(np.mean(dataset.s_peak)), part.peak_hours, 1.0, cfg.panel)
    sl_energy = pv_energy(float(np.mean(dataset.s_offpeak)), part.offpeak_hours, 1.0, cfg.panel)
    lhs = cfg.tariff.lambda_h * sh_energy + cfg.tariff.lambda_l * sl_energy
    print(f"solar condition         {lhs:.6f} $/m2/day (mean PV revenue) vs {cfg.costs.lambda_a:.6f} (lambda_a)")
    if cfg.tariff.is_parity():
        if args.a_max is None:
            print("pass --a-max to size the panel area (bang-bang rule)")
        else:
            solar = optimal_solar(sh_energy, sl_energy, cfg.tariff, cfg.costs, args.a_max)
            print(f"optimal panel area a    {solar.a_opt:g} m2 (of a_max {args.a_max:g})")
    else:
        print("panel area: no closed form without buy==sell parity; use `nemsizer sweep`")

    if args.out:
        if args.grid_b:
            grid = _parse_grid(args.grid_b, "grid-b")
        else:
            grid = np.linspace(dist.samples_[0], dist.samples_[-1], 1000)
        with open(args.out, "w") as fh:
            fh.write("x,cdf\n")
            for x, p in zip(grid, dist.cdf(grid)):
                fh.write(f"{x!r},{p!r}\n")
        print(f"cdf dump ({len(grid)} points) -> {args.out}")
    return 0


def cmd_simulate(args) -> int:
    cfg = load_config(args.config)
    dataset = _load_dataset(args, cfg)
    report = simulate(dataset, args.b, args.a, cfg.tariff, cfg.costs, cfg.panel)
    print(report_to_text(report), end="")
    if args.out:
        renderer = {"csv": report_to_csv, "json": report_to_json, "text": report_to_text}[args.format]
        with open(args.out, "w") as fh:
            fh.write(renderer(report))
        print(f"report -> {args.out}")
    return 0


def cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    dataset = _load_dataset(args, cfg)
    if args.grid_b:
        b_grid = _parse_grid(args.grid_b, "grid-b")
    else:
        b_grid = default_b_grid(dataset.h_peak)
        if args.b_max is not None:
            b_grid = b_grid[b_grid <= args.b_max]
    if args.grid_a:
        a_grid = _parse_grid(args.grid_a, "grid-a")
    elif args.a_max is not None:
        a_grid = default_a_grid(args.a_max)
    else:
        raise InputError("sweep needs --grid-a or --a-max")

    result = joint_scan(
        dataset, cfg.tariff, cfg.costs, cfg.panel, b_grid, a_grid, mode=args.mode
    )
    surface = result.surface
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("b_kwh,a_m2,cost\n")
            for b, a, cost in surface.rows():
                fh.write(f"{b!r},{a!r},{cost!r}\n")
        print(f"cost surface ({surface.b_grid.size} x {surface.a_grid.size}) -> {args.out}")

    b_at, a_at = surface.argmin
    print(f"joint argmin            b = {b_at:g} kWh, a = {a_at:g} m2, cost = {surface.min_cost:.2f} $")
    seq = result.sequential
    if seq is None:
        print("sequential point        not available (price chain not strict)")
    else:
        print(
            f"sequential (exact b)    b = {seq.storage.b_opt:.4f} kWh, a = {seq.a_opt:g} m2, "
            f"cost = {seq.cost:.2f} $"
        )
        print(
            f"sequential (rounded b)  b = {seq.b_rounded:g} kWh, a = {seq.a_opt:g} m2, "
            f"cost = {seq.cost_rounded:.2f} $"
        )
        print(f"joint improvement       {seq.cost - surface.min_cost:.2f} $ vs exact sequential")
    return 0


def cmd_synth(args) -> int:
    partition = load_config(args.config).partition if args.config else None
    kwargs = {"seed": args.seed}
    if partition is not None:
        kwargs["partition"] = partition
    dataset = synth_dataset(args.days, **kwargs)
    write_dataset_csv(dataset, args.out)
    print(f"{len(dataset)} synthetic daily records (seed {args.seed}) -> {args.out}")
    _print_summary(dataset)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nemsizer",
        description="storage and solar sizing under net metering with time-of-use prices",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="aggregate a raw interval CSV to daily records")
    p.add_argument("--config", required=True)
    p.add_argument("--data", required=True, help="raw interval CSV")
    p.add_argument("--out", required=True, help="daily-record CSV to write")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("size", help="closed-form storage/solar sizing")
    p.add_argument("--config", required=True)
    p.add_argument("--data", required=True, help="daily-record CSV")
    p.add_argument("--b-max", type=float, default=100.0, help="cap for the unbounded regime")
    p.add_argument("--a-max", type=float, default=None, help="roof bound for the solar rule")
    p.add_argument("--mode", choices=("ecdf", "kde"), default="kde")
    p.add_argument("--grid-b", default=None, help="cdf dump grid start:stop:step")
    p.add_argument("--out", default=None, help="write (x, cdf) CSV here")
    p.set_defaults(func=cmd_size)

    p = sub.add_parser("simulate", help="billing report for a given (b, a)")
    p.add_argument("--config", required=True)
    p.add_argument("--data", required=True, help="daily-record CSV")
    p.add_argument("--b", type=float, default=0.0, help="storage capacity, kWh")
    p.add_argument("--a", type=float, default=0.0, help="panel area, m2")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json", "text"), default="csv")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="joint (b, a) grid search")
    p.add_argument("--config", required=True)
    p.add_argument("--data", required=True, help="daily-record CSV")
    p.add_argument("--grid-b", default=None, help="start:stop:step, kWh")
    p.add_argument("--grid-a", default=None, help="start:stop:step, m2")
    p.add_argument("--b-max", type=float, default=None, help="trim the default b grid")
    p.add_argument("--a-max", type=float, default=None, help="default a grid is 0..a_max")
    p.add_argument("--mode", choices=("ecdf", "kde"), default="kde")
    p.add_argument("--out", default=None, help="surface CSV to write")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("synth", help="generate a synthetic daily dataset")
    p.add_argument("--out", required=True)
    p.add_argument("--days", type=int, default=366)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--config", default=None, help="optional, for the peak window")
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ModelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
