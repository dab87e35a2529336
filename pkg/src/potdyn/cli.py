"""Command-line entry point: ``potdyn <command> [options]``.

Exit codes: 0 success, 2 usage error, 3 domain/validation error, 4 file I/O
error.  JSON numbers carry 17 significant digits, CSV numbers 12.
"""

import argparse
import csv
import dataclasses
import enum
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from . import dynamics, econ, energy, price, scenarios, units
from .data import TABLE1, data_path
from .dynamics import PiecewiseSystem
from .errors import DomainError, TableParseError

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_IO = 0, 2, 3, 4

SYSTEM_FIELDS = ("p_plus", "p_minus", "t_plus", "t_minus")


class UsageError(Exception):
    pass


# -- output -----------------------------------------------------------------

def _plain(obj):
    """Reduce dataclasses, enums and arrays to JSON-shaped values."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: _plain(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, Fraction)):
        return float(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def _json_number(v):
    if isinstance(v, bool) or v is None:
        return "true" if v is True else "false" if v is False else "null"
    if isinstance(v, int):
        return str(v)
    if not math.isfinite(v):
        return "null"
    return format(v, ".17g")


def to_json(obj, indent=0):
    """JSON text with fixed 17-digit floats and stable key order."""
    pad, inner = "  " * indent, "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{_json_str(k)}: {to_json(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list)) for v in obj):
            return "[" + ", ".join(to_json(v) for v in obj) + "]"
        return "[\n" + ",\n".join(inner + to_json(v, indent + 1) for v in obj) + "\n" + pad + "]"
    if isinstance(obj, str):
        return _json_str(obj)
    return _json_number(obj)


def _json_str(s):
    return json.dumps(s, ensure_ascii=False)


def _csv_cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return format(v, ".12g") if math.isfinite(v) else str(v)
    return str(v)


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else k)
    elif isinstance(obj, list) and any(isinstance(v, (dict, list)) for v in obj):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}.{i}")
    elif isinstance(obj, list):
        yield prefix, ";".join(_csv_cell(v) for v in obj)
    else:
        yield prefix, obj


def to_csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_csv_cell(v) for v in row])
    return buf.getvalue()


@dataclasses.dataclass
class Result:
    """What a command hands back: a report or a table, plus provenance."""

    report: dict = None
    header: tuple = None
    rows: list = None
    preset: str = None
    input_file: str = None

    def render(self, fmt, constants, command):
        if fmt == "csv":
            if self.header is not None:
                return to_csv(self.header, self.rows)
            return to_csv(("field", "value"), _flatten(_plain(self.report)))
        doc = {"command": command}
        if self.header is not None:
            doc["columns"] = list(self.header)
            doc["rows"] = [list(r) for r in self.rows]
        if self.report is not None:
            doc.update(_plain(self.report))
        doc["provenance"] = {"preset": self.preset, "input_file": self.input_file,
                             "constants": constants}
        return to_json(doc) + "\n"


# -- argument helpers -------------------------------------------------------

def _sweep(text):
    try:
        name, rng = text.split("=", 1)
        start, stop, n = rng.split(":")
        start, stop, n = float(start), float(stop), int(n)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected PARAM=START:STOP:N, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"sweep count must be at least 1, got {n}")
    return name.strip().replace("-", "_"), np.linspace(start, stop, n)


def _grid(text):
    try:
        return scenarios.Grid.parse(text)
    except DomainError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _add_system_flags(p):
    p.add_argument("--preset", help="named parameter set (see preset-list)")
    for name in SYSTEM_FIELDS:
        p.add_argument("--" + name.replace("_", "-"), type=float, dest=name)
    p.add_argument("--stock-unit", default="")


def _system(args):
    explicit = {k: getattr(args, k) for k in SYSTEM_FIELDS if getattr(args, k) is not None}
    if args.preset:
        if explicit:
            raise UsageError(f"--preset cannot be combined with {', '.join(sorted(explicit))}")
        p = scenarios.preset(args.preset)
        if p.kind is not scenarios.PresetKind.ECOSYSTEM:
            raise UsageError(f"preset {p.id!r} is a {p.kind.value} preset, not an ecosystem")
        return p.parameters
    missing = [k for k in SYSTEM_FIELDS if k not in explicit]
    if missing:
        raise UsageError("give --preset or all of " + ", ".join("--" + m.replace("_", "-") for m in missing))
    return PiecewiseSystem(**explicit, stock_unit=args.stock_unit)


def _run_sweep(fn, values):
    # callees are pure; map keeps grid order
    with ThreadPoolExecutor() as pool:
        return list(pool.map(fn, values))


# -- commands ---------------------------------------------------------------

def cmd_classify(args):
    sys_ = _system(args)
    d = dynamics.derive(sys_)
    rc = dynamics.classify_regime(sys_)
    report = dict(dataclasses.asdict(d), regime=rc.tag,
                  stationary_points=dynamics.stationary_points(sys_))
    return Result(report, preset=args.preset)


def _series(fn, args, sys_):
    return [(float(x), fn(float(x), sys_)) for x in args.grid.values()]


def cmd_potential(args):
    sys_ = _system(args)
    return Result(header=("m", "potential"), rows=_series(dynamics.potential, args, sys_),
                  preset=args.preset)


def cmd_flux(args):
    sys_ = _system(args)
    return Result(header=("m", "flux"), rows=_series(dynamics.flux, args, sys_),
                  preset=args.preset)


def _trajectory_rows(tr, label):
    return [(float(t), float(y), label) for t, y in zip(tr.t, tr.y)]


def cmd_simulate(args):
    sys_ = _system(args)
    if args.steps < 0:
        raise DomainError(f"steps must be non-negative, got {args.steps}", "steps")

    def one(overrides):
        s = dataclasses.replace(sys_, **{k: v for k, v in overrides.items() if k in SYSTEM_FIELDS})
        m0 = overrides.get("m0", args.m0)
        dt = overrides.get("dt", args.dt)
        if args.steps == 0:
            dynamics._check_stock(m0, "m0")
            return None
        return dynamics.integrate(s, m0, dt, args.steps)

    if args.sweep:
        name, values = args.sweep
        if name not in SYSTEM_FIELDS + ("m0", "dt"):
            raise UsageError(f"cannot sweep {name!r}; choose from m0, dt, " + ", ".join(SYSTEM_FIELDS))
        runs = [(f"{name}={_csv_cell(float(v))}", {name: float(v)}) for v in values]
    else:
        runs = [("run", {})]
    trajs = _run_sweep(lambda r: one(r[1]), runs)
    rows, events = [], []
    for (label, _), tr in zip(runs, trajs):
        if tr is None:
            continue
        rows.extend(_trajectory_rows(tr, label))
        events.extend(dict(label=label, kind=e.kind, t=e.t, direction=e.direction) for e in tr.events)
    return Result(report={"events": events}, header=("t", "m", "label"), rows=rows,
                  preset=args.preset)


def cmd_price(args):
    if args.preset:
        p = scenarios.preset(args.preset)
        if p.kind is scenarios.PresetKind.PRICE:
            if any(getattr(args, k) is not None for k in SYSTEM_FIELDS + ("c", "d_max")):
                raise UsageError("--preset cannot be combined with explicit price parameters")
            psys = p.parameters.build()
        else:
            psys = price.build_price_system(_system(args), _required(args, "c"), args.d_max)
    else:
        psys = price.build_price_system(_system(args), _required(args, "c"), args.d_max)
    report = dict(dataclasses.asdict(psys), r_d=psys.r_d,
                  stationary_points=price.price_stationary_points(psys))
    if args.at:
        report["flux"] = [dict(d=d, value=f.value, breakdown=f.breakdown)
                          for d, f in ((d, price.price_flux(d, psys)) for d in args.at)]
        report["potential"] = [dict(d=d, value=price.price_potential(d, psys)) for d in args.at]
    return Result(report, preset=args.preset)


def _required(args, name):
    v = getattr(args, name)
    if v is None:
        raise UsageError(f"--{name.replace('_', '-')} is required")
    return v


def cmd_calibrate(args):
    c, a = price.calibrate(args.d_s, args.n_s, args.p_s_minus, args.t_minus)
    return Result({"c": c, "a": a})


def _economy_preset(args, kind):
    if not args.preset:
        return None
    p = scenarios.preset(args.preset)
    if not isinstance(p.parameters, kind):
        raise UsageError(f"preset {p.id!r} does not hold a {kind.__name__}")
    return p.parameters


def cmd_markup(args):
    world = _economy_preset(args, scenarios.WorldEconomy2005)
    if world is not None:
        e = world.two_sector(args.sector2_revenue)
    else:
        e = econ.TwoSectorEconomy.from_ratio(
            _required(args, "gdp"), _required(args, "n1_over_n2"), _required(args, "sector2_revenue"))
    report = {"markup": econ.markup_ratio(e), "gdp": e.gdp, "sector2_revenue": e.sector2_revenue,
              "n1_over_n2": e.n1 / e.n2, "cost_price_output": e.cost_price_output,
              "marked_up_output": e.marked_up_output}
    if world is not None:
        report["mean_wage"] = econ.mean_wage(world.gdp, world.population,
                                             world.working_fraction, world.hours_per_year)
        f = econ.money_energy_factor(world.real_production_value, world.energy_consumption_gj * 1e9)
        report["mj_per_usd"] = f.mj_per_currency
        report["usd_per_gj"] = f.currency_per_gj
        report["computed_energy_revenue"] = world.computed_energy_revenue()
    return Result(report, preset=args.preset)


def cmd_three_sector(args):
    base = _economy_preset(args, econ.ThreeSectorEconomy)
    if base is None:
        base = econ.ThreeSectorEconomy(gdp=_required(args, "gdp"))
    changes = {k: v for k, v in (("gdp", args.gdp), ("energy_revenue_share", args.share),
                                 ("energy_employment_share", args.employment_share),
                                 ("markup", args.markup)) if v is not None}
    e = dataclasses.replace(base, **changes)
    return Result(econ.three_sector_report(e), preset=args.preset)


def cmd_ingest(args):
    path = args.input or str(data_path(TABLE1))
    with open(path, encoding="utf-8", newline="") as fh:
        records, agg = econ.ingest_table(fh)
    if args.records:
        if args.format != "csv":
            raise UsageError("--records needs --format csv")
        return econ.serialize_records(records)
    split = econ.energy_sector_split(agg, args.energy_fraction)
    low, high = econ.food_sector_groups(records, args.food_threshold)
    report = {"aggregates": agg, "energy_split": split,
              "food_threshold": args.food_threshold,
              "food_low": low, "food_high": high}
    return Result(report, input_file=args.input or TABLE1)


def cmd_budget(args):
    tables = energy.budget_table()
    report = {
        "thermohaline": energy.thermohaline_power(),
        "wind_upwelling": energy.wind_upwelling_power(),
        "wind_dissipation": energy.wind_dissipation_power(),
        "hydropower": energy.hydropower(),
        "economic_hydropower": energy.economic_hydropower(),
        "osmotic": energy.osmotic_power(),
        "biotic_disturbance": energy.biotic_disturbance(100, Fraction(2, 3), Fraction(3, 5)) * energy.TW,
        "checks": energy.estimator_checks(tables),
    }
    for region in args.region:
        report["nuclear_" + region.lower()] = energy.nuclear_usable(energy.mix_from_tables(region, tables))
    return Result(report, preset="appendix_budget")


def cmd_convert(args):
    value = units.convert(args.value, args.from_unit, args.to_unit, args.constants)
    u_from = units.lookup(args.from_unit, args.constants)
    u_to = units.lookup(args.to_unit, args.constants)
    return Result({"value": value, "from": args.from_unit, "to": args.to_unit,
                   "factor": float(units.factor(args.from_unit, args.to_unit, args.constants)),
                   "from_citation": u_from.citation, "to_citation": u_to.citation})


def cmd_preset_list(args):
    rows = [(p.id, p.kind.value, p.inconsistent, p.citation) for p in scenarios.PRESETS.values()]
    return Result(header=("id", "kind", "inconsistent", "citation"), rows=rows)


def cmd_emit(args):
    if args.curve == "trajectory":
        if args.x0 is None or args.dt is None or args.steps is None:
            raise UsageError("trajectory needs --x0, --dt and --steps")
        if args.steps < 0:
            raise DomainError(f"steps must be non-negative, got {args.steps}", "steps")
        spec = scenarios.TrajectorySpec(args.x0, args.dt, args.steps)
    else:
        if args.grid is None:
            raise UsageError(f"{args.curve} needs --grid START:STOP:STEP")
        spec = args.grid

    def one(override):
        name, value = override
        if name is None:
            return scenarios.emit_curve(args.preset, args.curve, spec)
        if name in ("x0", "dt"):
            if args.curve != "trajectory":
                raise UsageError(f"{name} sweeps need --curve trajectory")
            return scenarios.emit_curve(args.preset, args.curve, dataclasses.replace(spec, **{name: value}))
        return scenarios.emit_curve(args.preset, args.curve, spec, **{name: value})

    if args.sweep:
        name, values = args.sweep
        jobs = [(name, float(v)) for v in values]
    else:
        jobs = [(None, None)]
    scenarios.preset(args.preset)
    series = _run_sweep(one, jobs)
    rows = []
    for (name, value), s in zip(jobs, series):
        label = s.label if name is None else f"{s.label}:{name}={_csv_cell(value)}"
        rows.extend((float(x), float(y), label) for x, y in zip(s.x, s.y))
    units_ = {"x_unit": series[0].x_unit, "y_unit": series[0].y_unit}
    return Result(report=units_, header=("x", "y", "label"), rows=rows, preset=args.preset)


# -- parser -----------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="json")
    common.add_argument("--output", help="write to this file instead of stdout")
    common.add_argument("--constants", choices=units.CONSTANT_SETS, default=units.EXACT,
                        help="unit-conversion constant set")

    parser = argparse.ArgumentParser(prog="potdyn", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=fn)
        return p

    p = add("classify", cmd_classify, "derived stocks, regime and stationary points")
    _add_system_flags(p)

    for name, fn in (("potential", cmd_potential), ("flux", cmd_flux)):
        p = add(name, fn, f"{name} on a stock grid")
        _add_system_flags(p)
        p.add_argument("--grid", type=_grid, required=True, metavar="START:STOP:STEP")

    p = add("simulate", cmd_simulate, "RK4 trajectory with junction/absorption events")
    _add_system_flags(p)
    p.add_argument("--m0", type=float, required=True)
    p.add_argument("--dt", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--sweep", type=_sweep, metavar="PARAM=START:STOP:N")

    p = add("price", cmd_price, "price landscape from an ecosystem-form system")
    _add_system_flags(p)
    p.add_argument("--c", type=float, help="cost constant linking price and amount (d = c/m)")
    p.add_argument("--d-max", type=float, dest="d_max")
    p.add_argument("--at", type=float, nargs="+", help="prices at which to report flux and potential")

    p = add("calibrate", cmd_calibrate, "cost constant and labor productivity from cost-price data")
    p.add_argument("--d-s", type=float, dest="d_s", required=True)
    p.add_argument("--n-s", type=float, dest="n_s", required=True)
    p.add_argument("--p-s-minus", type=float, dest="p_s_minus", required=True)
    p.add_argument("--t-minus", type=float, dest="t_minus", required=True)

    p = add("markup", cmd_markup, "two-sector markup ratio")
    p.add_argument("--preset")
    p.add_argument("--gdp", type=float)
    p.add_argument("--sector2-revenue", type=float, dest="sector2_revenue")
    p.add_argument("--n1-over-n2", type=float, dest="n1_over_n2")

    p = add("three-sector", cmd_three_sector, "vacant population and green-share equivalences")
    p.add_argument("--preset")
    p.add_argument("--gdp", type=float)
    p.add_argument("--share", type=float, help="energy revenue share of GDP")
    p.add_argument("--employment-share", type=float, dest="employment_share")
    p.add_argument("--markup", type=float)

    p = add("ingest", cmd_ingest, "country table totals, energy split and food groups")
    p.add_argument("--input", help="CSV file (default: bundled 2005 table)")
    p.add_argument("--food-threshold", type=float, default=econ.DEFAULT_FOOD_THRESHOLD)
    p.add_argument("--energy-fraction", type=float, default=econ.DEFAULT_ENERGY_FRACTION_OF_MINING,
                   help="share of mining employment counted as energy production")
    p.add_argument("--records", action="store_true",
                   help="emit the parsed records re-serialized (CSV only)")

    p = add("budget", cmd_budget, "global energy budget estimators and nuclear accounting")
    p.add_argument("--region", nargs="*", default=["France", "World"])

    p = add("convert", cmd_convert, "unit conversion")
    p.add_argument("--value", type=float, required=True)
    p.add_argument("--from", dest="from_unit", required=True)
    p.add_argument("--to", dest="to_unit", required=True)

    add("preset-list", cmd_preset_list, "list named presets")

    p = add("emit", cmd_emit, "plot-ready series for a preset")
    p.add_argument("--preset", required=True)
    p.add_argument("--curve", choices=scenarios.CURVES, required=True)
    p.add_argument("--grid", type=_grid, metavar="START:STOP:STEP")
    p.add_argument("--x0", type=float)
    p.add_argument("--dt", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--sweep", type=_sweep, metavar="PARAM=START:STOP:N")
    return parser


def _write(text, path):
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        result = args.func(args)
        if isinstance(result, str):
            text = result
        else:
            text = result.render(args.format, args.constants, args.command)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"potdyn {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, TableParseError) as e:
        field = getattr(e, "field", None) or (f"row {e.row}" if getattr(e, "row", None) else None)
        print(f"potdyn {args.command}: {field + ': ' if field else ''}{e}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as e:
        print(f"potdyn {args.command}: {e}", file=sys.stderr)
        return EXIT_IO
    try:
        _write(text, args.output)
    except OSError as e:
        print(f"potdyn {args.command}: cannot write output: {e}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
