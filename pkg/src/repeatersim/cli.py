"""Command-line front end: run, sweep, plan, boundary, and plot subcommands.

Configs are flat JSON documents using the exact ChainConfig field names;
unknown fields are rejected to keep sweep studies honest. Results are
emitted as RFC-4180-style CSV with a header row, LF line endings, and
floats at 17 significant digits so files round-trip exactly.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import math
import sys

from .chain import ChainConfig, RunMetrics, build_plan, noise_tolerance_search, run_chain
from .exceptions import BoundaryNotFoundError, InfeasiblePlanError
from .plotting import write_line_chart
from .purification import cost_total

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2

CONFIG_FIELDS = [f.name for f in dataclasses.fields(ChainConfig)]
REQUIRED_FIELDS = ("total_length", "n_nodes", "t_depol", "f_target")
SWEEP_AXES = ("t_depol", "n_nodes", "total_length")

METRIC_COLUMNS = [
    "generation_time",
    "final_fidelity",
    "swap_rounds",
    "feasible",
    "cost_sum_total",
    "cost_chain_product",
    "layer_costs",
]
CSV_COLUMNS = CONFIG_FIELDS + METRIC_COLUMNS


class ConfigError(ValueError):
    pass


def config_from_mapping(data: dict) -> ChainConfig:
    """Build and validate a ChainConfig from a parsed JSON object."""
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    unknown = sorted(set(data) - set(CONFIG_FIELDS))
    if unknown:
        raise ConfigError(f"unknown config field {unknown[0]!r}")
    missing = [name for name in REQUIRED_FIELDS if name not in data]
    if missing:
        raise ConfigError(f"missing required config field {missing[0]!r}")
    values = dict(data)
    if isinstance(values.get("t_depol"), str):
        if values["t_depol"].strip().lower() != "inf":
            raise ConfigError("t_depol must be a number or the string \"inf\"")
        values["t_depol"] = math.inf
    try:
        config = ChainConfig(**values)
        config.validate()
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    return config


def load_config(path: str, overrides: dict | None = None) -> ChainConfig:
    with open(path) as fh:
        data = json.load(fh)
    if overrides:
        data.update(overrides)
    return config_from_mapping(data)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def result_row(config: ChainConfig, metrics: RunMetrics) -> dict:
    """Flatten one run into the fixed CSV column set."""
    row = {name: getattr(config, name) for name in CONFIG_FIELDS}
    row["generation_time"] = metrics.generation_time
    row["final_fidelity"] = metrics.final_fidelity
    row["swap_rounds"] = metrics.swap_rounds
    row["feasible"] = metrics.feasible
    row["cost_sum_total"] = metrics.cost.total
    row["cost_chain_product"] = metrics.cost.chain_product
    row["layer_costs"] = ";".join(_fmt(c) for c in metrics.cost.layer_costs)
    return row


def write_rows(rows: list[dict], fh) -> None:
    writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _fmt(v) for k, v in row.items()})


def _overrides(args) -> dict:
    out = {}
    if args.seed is not None:
        out["seed"] = args.seed
    if args.mode is not None:
        out["attempt_mode"] = args.mode
    if args.time_model is not None:
        out["time_model"] = args.time_model
    if args.pairing is not None:
        out["pairing_mode"] = args.pairing
    return out


def cmd_run(args) -> int:
    config = load_config(args.config, _overrides(args))
    metrics = run_chain(config)
    write_rows([result_row(config, metrics)], sys.stdout)
    print(
        f"# end-to-end time {metrics.generation_time:.4f} ms | "
        f"final fidelity {metrics.final_fidelity:.6f} "
        f"({'feasible' if metrics.feasible else 'infeasible'}, target {config.f_target}) | "
        f"swap rounds {metrics.swap_rounds} | "
        f"pair cost: product {metrics.cost.chain_product:.6g}, "
        f"sum {metrics.cost.total:.6g}"
    )
    if args.strict and not metrics.feasible:
        return EXIT_INFEASIBLE
    return EXIT_OK


def load_sweep(path: str, overrides: dict | None = None):
    with open(path) as fh:
        data = json.load(fh)
    extra = sorted(set(data) - {"base", "axis", "values", "repetitions"})
    if extra:
        raise ConfigError(f"unknown sweep field {extra[0]!r}")
    for name in ("base", "axis", "values"):
        if name not in data:
            raise ConfigError(f"missing required sweep field {name!r}")
    axis = data["axis"]
    if axis not in SWEEP_AXES:
        raise ConfigError(f"axis must be one of {SWEEP_AXES}, got {axis!r}")
    values = data["values"]
    if not values:
        raise ConfigError("values must be non-empty")
    increasing = all(b > a for a, b in zip(values, values[1:]))
    decreasing = all(b < a for a, b in zip(values, values[1:]))
    if not (increasing or decreasing):
        raise ConfigError("values must be strictly monotone")
    repetitions = data.get("repetitions", 1)
    if not isinstance(repetitions, int) or repetitions < 1:
        raise ConfigError("repetitions must be a positive integer")
    base = dict(data["base"])
    if overrides:
        base.update(overrides)
    base_config = config_from_mapping(base)
    return base_config, axis, values, repetitions


def cmd_sweep(args) -> int:
    base, axis, values, repetitions = load_sweep(args.sweep, _overrides(args))
    rows = []
    for value in values:
        for rep in range(repetitions):
            config = dataclasses.replace(base, **{axis: value}, seed=base.seed + rep)
            config.validate()
            rows.append(result_row(config, run_chain(config)))
    with open(args.out, "w", newline="") as fh:
        write_rows(rows, fh)
    print(f"wrote {len(rows)} rows to {args.out}")
    return EXIT_OK


def cmd_plan(args) -> int:
    config = ChainConfig(
        total_length=1.0, n_nodes=args.n_nodes, t_depol=math.inf, f_target=args.f_target
    )
    try:
        config.validate()
        plan = build_plan(config, input_fidelity=args.input_fidelity)
    except (ValueError, InfeasiblePlanError) as exc:
        print(f"infeasible plan: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"elementary links: {plan.n_ent}")
    print(f"swap layers K: {plan.k_layers}")
    print("layer  min_fidelity  ideal_rounds")
    for k, threshold in enumerate(plan.layer_min_fidelity):
        rounds = ""
        if plan.ideal_rounds is not None and k < plan.k_layers:
            rounds = str(plan.ideal_rounds[k])
        print(f"{k:5d}  {threshold:.6f}      {rounds}")
    if plan.ideal_rounds is not None:
        # per-layer pair counts: surviving links times (rounds + 1) under pumping
        n_links = plan.n_ent
        layer_costs = []
        for rounds in plan.ideal_rounds:
            layer_costs.append(n_links * (rounds + 1.0))
            n_links = (n_links + 1) // 2
        layer_costs.append(float(n_links))
        ledger = cost_total(layer_costs)
        print(f"pair cost from input fidelity {args.input_fidelity}:")
        print(f"  per-layer pairs: {[f'{c:g}' for c in ledger.layer_costs]}")
        print(f"  product form: {ledger.chain_product:g}")
        print(f"  sum-of-partial-products form: {ledger.total:g}")
        print("  (the two readings differ by construction; both are reported)")
    return EXIT_OK


def cmd_boundary(args) -> int:
    config = load_config(args.config, _overrides(args))
    grid = sorted(args.grid)
    print("t_depol_ms  final_fidelity  feasible")
    results = []
    for t_depol in grid:
        trial = dataclasses.replace(
            config,
            t_depol=t_depol,
            attempt_mode="expected",
            purification_success_mode="deterministic",
        )
        metrics = run_chain(trial)
        results.append((t_depol, metrics))
        print(f"{t_depol:<11g} {metrics.final_fidelity:<15.6f} {str(metrics.feasible).lower()}")
    try:
        boundary = noise_tolerance_search(config, config.f_target, grid)
    except BoundaryNotFoundError:
        print("no feasible point")
        return EXIT_INFEASIBLE
    print(f"noise-tolerance boundary: {boundary:g} ms")
    return EXIT_OK


def _group_key(row: dict, x_column: str, y_columns: list[str]) -> tuple:
    return tuple(
        (name, row[name])
        for name in CONFIG_FIELDS
        if name in row and name != x_column and name not in y_columns
    )


def cmd_plot(args) -> int:
    with open(args.csv, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            print("error: no data rows", file=sys.stderr)
            return EXIT_USAGE
        rows = list(reader)
    if not rows:
        print("error: no data rows", file=sys.stderr)
        return EXIT_USAGE
    available = list(rows[0].keys())
    y_columns = args.y.split(",")
    for column in [args.x, *y_columns]:
        if column not in available:
            print(
                f"error: unknown column {column!r}; available: {', '.join(available)}",
                file=sys.stderr,
            )
            return EXIT_USAGE
    # one polyline per y-column per distinct config group (config columns that vary)
    keys = {_group_key(row, args.x, y_columns) for row in rows}
    varying = sorted(
        {name for key in keys for name, _ in key}
        & {name for name in CONFIG_FIELDS if len({dict(k).get(name) for k in keys}) > 1}
    )
    series: dict[str, list[tuple[float, float]]] = {}
    for row in rows:
        suffix = ",".join(f"{name}={dict(_group_key(row, args.x, y_columns))[name]}" for name in varying)
        for column in y_columns:
            name = column if not suffix else f"{column} ({suffix})"
            series.setdefault(name, []).append((float(row[args.x]), float(row[column])))
    try:
        write_line_chart(series, args.x, ",".join(y_columns), args.out, log_y=args.log_y)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"wrote {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="repeatersim",
        description="Quantum repeater chain simulator with purification and memory noise",
    )
    parser.add_argument("--seed", type=int, default=None, help="override the config seed")
    parser.add_argument("--mode", choices=("sampled", "expected"), default=None,
                        help="override the attempt mode")
    parser.add_argument("--time-model", choices=("paper_faithful", "distance_aware"),
                        default=None, help="override the round-duration model")
    parser.add_argument("--pairing", choices=("pumping", "nesting"), default=None,
                        help="override the purification pairing mode")
    parser.add_argument("--strict", action="store_true",
                        help="exit with status 2 when the run misses its fidelity target")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one chain configuration")
    p_run.add_argument("config", help="path to a JSON config file")
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", help="run a parameter sweep to CSV")
    p_sweep.add_argument("sweep", help="path to a JSON sweep spec")
    p_sweep.add_argument("out", help="output CSV path")
    p_sweep.set_defaults(func=cmd_sweep)

    p_plan = sub.add_parser("plan", help="print the purification threshold plan")
    p_plan.add_argument("f_target", type=float)
    p_plan.add_argument("n_nodes", type=int)
    p_plan.add_argument("--input-fidelity", type=float, default=0.95,
                        help="raw link fidelity used for ideal round counts")
    p_plan.set_defaults(func=cmd_plan)

    p_boundary = sub.add_parser("boundary", help="search the noise-tolerance boundary")
    p_boundary.add_argument("config", help="path to a JSON config file")
    p_boundary.add_argument("grid", type=float, nargs="+", help="t_depol grid values in ms")
    p_boundary.set_defaults(func=cmd_boundary)

    p_plot = sub.add_parser("plot", help="render a sweep CSV as an SVG line chart")
    p_plot.add_argument("csv", help="input CSV path")
    p_plot.add_argument("x", help="x-axis column name")
    p_plot.add_argument("y", help="comma-separated y-axis column names")
    p_plot.add_argument("out", help="output SVG path")
    p_plot.add_argument("--log-y", action="store_true", help="log-scale the y axis")
    p_plot.set_defaults(func=cmd_plot)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
