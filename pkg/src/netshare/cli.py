"""Command-line front end: solve scenarios, sample curves, run sweeps.

Machine output is canonical JSON (sorted keys, NaN encoded as null) for
`solve` and comma-separated values for `curves` and `sweep`, so identical
invocations produce byte-identical files.
"""

import csv
import dataclasses
import io
import json
import math
import sys

import click

from . import multiregion
from .bertrand import (
    InformedFraction,
    bertrand_basic,
    bertrand_informed,
    bertrand_shared_cost,
)
from .config import (
    ANALYSES,
    PRESETS,
    ScenarioSpec,
    parse_scenario,
    serialize_scenario,
    sweep_grid,
)
from .cournot import aggression_quantity, best_response, nash_cournot, payoff_table
from .errors import ConfigError, NetshareError
from .market import demand, monopoly_solution, profit
from .sharing import ShapleyBasis, sharing_monopoly, sharing_regulated

CURVE_KINDS = ("best-response", "profit-vs-q1", "profit-vs-q2", "profit-vs-price")


def _load_spec(preset, config, analysis, informed, undercut, shapley) -> ScenarioSpec:
    if preset and config:
        raise click.UsageError("--preset and --config are mutually exclusive")
    if preset:
        if preset not in PRESETS:
            raise click.UsageError(
                f"unknown preset {preset!r} (available: {', '.join(sorted(PRESETS))})"
            )
        spec = PRESETS[preset]
    elif config:
        try:
            with open(config, encoding="utf-8") as fh:
                spec = parse_scenario(fh.read())
        except OSError as exc:
            raise click.UsageError(f"cannot read {config}: {exc}")
        except ConfigError as exc:
            raise click.UsageError(f"{config}: {exc}")
    else:
        raise click.UsageError("one of --preset or --config is required")
    updates = {}
    if analysis:
        names = tuple(a for a in analysis.replace(",", " ").split() if a)
        for a in names:
            if a not in ANALYSES:
                raise click.UsageError(
                    f"unknown analysis {a!r} (known: {', '.join(ANALYSES)})"
                )
        updates["analyses"] = names
    if informed is not None:
        if not 0.0 <= informed <= 1.0:
            raise click.UsageError("--informed must lie in [0, 1]")
        updates["informed"] = informed
    if undercut is not None:
        if undercut <= 0:
            raise click.UsageError("--undercut must be positive")
        updates["undercut"] = undercut
    if shapley is not None:
        updates["shapley"] = shapley
    if updates:
        spec = dataclasses.replace(spec, **updates)
    return spec


def _plain(value):
    """Recursively convert dataclasses/enums/NaN into JSON-encodable values."""
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {k: _plain(v) for k, v in dataclasses.asdict(value).items()}
    if isinstance(value, dict):
        out = {}
        for k, v in value.items():
            if isinstance(k, tuple):
                k = "|".join(str(p) for p in k)
            out[str(k)] = _plain(v)
        return out
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)


def _require_informed(spec: ScenarioSpec) -> InformedFraction:
    if spec.informed is None:
        raise ConfigError("this analysis needs the informed user fraction (--informed)")
    return InformedFraction(spec.informed)


def _require_regions(spec: ScenarioSpec):
    if spec.regions is None:
        raise ConfigError("this analysis needs a [regions] section in the scenario")
    return spec.regions


def _run_analysis(name: str, spec: ScenarioSpec) -> dict:
    d = spec.duopoly()
    cfg = spec.solver
    basis = ShapleyBasis(spec.shapley)
    if name == "monopoly":
        return {
            "sp1": _plain(monopoly_solution(spec.sp1, spec.market)),
            "sp2": _plain(monopoly_solution(spec.sp2, spec.market)),
        }
    if name == "cournot":
        return _plain(nash_cournot(d, cfg))
    if name == "sharing":
        return _plain(sharing_monopoly(d, basis, cfg))
    if name == "regulated-sharing":
        return _plain(sharing_regulated(d, basis, cfg))
    if name == "payoff-table":
        sharing_entries = {}
        try:
            sharing_entries["sharing"] = sharing_monopoly(d, basis, cfg).split
            sharing_entries["regulated-sharing"] = sharing_regulated(d, basis, cfg).split
        except NetshareError:
            sharing_entries = sharing_entries or None
        table = payoff_table(d, sharing_entries, cfg)
        out = {"cells": _plain(table.entries)}
        for sp in (1, 2):
            try:
                out[f"drive_out_q{sp}"] = aggression_quantity(sp, d, cfg)
            except NetshareError as exc:
                out[f"drive_out_q{sp}"] = None
                out[f"drive_out_q{sp}_error"] = str(exc)
        return out
    if name == "bertrand":
        return _plain(bertrand_basic(d, spec.undercut, cfg))
    if name == "bertrand-informed":
        return _plain(bertrand_informed(d, _require_informed(spec), cfg))
    if name == "bertrand-shared":
        return _plain(bertrand_shared_cost(d, _require_informed(spec), cfg))
    if name == "multiregion-standalone":
        return _plain(multiregion.regional_standalone(_require_regions(spec), d))
    if name == "multiregion-coop":
        return _plain(multiregion.regional_cooperation(_require_regions(spec), d))
    if name == "multiregion-cournot":
        return _plain(
            multiregion.regional_competition(_require_regions(spec), d, "cournot", cfg)
        )
    if name == "multiregion-bertrand":
        return _plain(
            multiregion.regional_competition(_require_regions(spec), d, "bertrand", cfg)
        )
    raise ConfigError(f"unknown analysis {name!r}")


def run_scenario(spec: ScenarioSpec) -> tuple[dict, bool]:
    """Run every requested analysis; returns (document, any_failed)."""
    results = {}
    failed = False
    for name in spec.analyses:
        try:
            results[name] = _run_analysis(name, spec)
        except NetshareError as exc:
            results[name] = {"error": str(exc), "error_type": type(exc).__name__}
            failed = True
    document = {
        "scenario": {
            "market": _plain(spec.market),
            "sp1": _plain(spec.sp1),
            "sp2": _plain(spec.sp2),
            "analysis": {
                "run": list(spec.analyses),
                "informed": spec.informed,
                "undercut": spec.undercut,
                "shapley": spec.shapley,
            },
            "regions": _plain(spec.regions) if spec.regions else None,
        },
        "results": results,
    }
    return document, failed


def _fmt(x, places=2):
    if x is None or (isinstance(x, float) and not math.isfinite(x)):
        return "-"
    if isinstance(x, float):
        return f"{x:.{places}f}"
    return str(x)


def _render_human(document: dict) -> str:
    lines = []
    for name, block in document["results"].items():
        lines.append(f"== {name} ==")
        if "error" in block:
            lines.append(f"  ERROR ({block['error_type']}): {block['error']}")
            lines.append("")
            continue
        lines.extend(_render_block(block, indent="  "))
        lines.append("")
    return "\n".join(lines)


def _render_block(block, indent):
    lines = []
    for key, value in block.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.extend(_render_block(value, indent + "  "))
        elif isinstance(value, list):
            lines.append(f"{indent}{key}: ({', '.join(_fmt(v) for v in value)})")
        else:
            lines.append(f"{indent}{key}: {_fmt(value)}")
    return lines


def _emit(text: str, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=not text.endswith("\n"))


def _spec_options(fn):
    fn = click.option("--preset", default=None, help="built-in scenario name")(fn)
    fn = click.option("--config", default=None, help="scenario document path")(fn)
    fn = click.option("--analysis", default=None, help="comma-separated analyses to run")(fn)
    fn = click.option("--informed", type=float, default=None, help="informed user fraction")(fn)
    fn = click.option("--undercut", type=float, default=None, help="price granularity")(fn)
    fn = click.option(
        "--shapley", type=click.Choice(["mon", "nc"]), default=None, help="profit-split basis"
    )(fn)
    return fn


@click.group()
def main():
    """Two-firm market games: solve scenarios, sample curves, run sweeps."""


@main.command()
@_spec_options
@click.option("--format", "fmt", type=click.Choice(["machine", "human"]), default="human")
@click.option("--out", default=None, help="write results to this path instead of stdout")
def solve(preset, config, analysis, informed, undercut, shapley, fmt, out):
    """Run the scenario's analyses and print or write the results."""
    spec = _load_spec(preset, config, analysis, informed, undercut, shapley)
    document, failed = run_scenario(spec)
    if fmt == "machine":
        text = json.dumps(document, sort_keys=True, indent=2) + "\n"
    else:
        text = _render_human(document) + "\n"
    _emit(text, out)
    if failed:
        click.echo("one or more analyses failed; see results", err=True)
        sys.exit(1)


def _curve_rows(spec: ScenarioSpec, which: str, samples: int):
    """Sample one of the documented curves; returns (header, annotations, rows)."""
    d = spec.duopoly()
    m = spec.market
    cfg = spec.solver
    annotations = []
    try:
        sol = nash_cournot(d, cfg)
    except NetshareError:
        sol = None
    if sol is not None and not math.isnan(sol.q1_star):
        q_ref = sol.q1_star + sol.q2_star
        annotations.append(f"ne: q1={sol.q1_star!r} q2={sol.q2_star!r} p={sol.price!r}")
    else:
        q_ref = max(
            monopoly_solution(spec.sp1, m).quantity,
            monopoly_solution(spec.sp2, m).quantity,
        )
    rows = []
    if which == "best-response":
        header = ("q_other", "br_sp1", "br_sp2")
        hi = 2.0 * q_ref
        for i in range(1, samples + 1):
            x = hi * i / samples
            rows.append((x, best_response(x, spec.sp1, m, cfg), best_response(x, spec.sp2, m, cfg)))
    elif which in ("profit-vs-q1", "profit-vs-q2"):
        mover = 1 if which.endswith("q1") else 2
        other = 3 - mover
        own_c, other_c = d.cost_of(mover), d.cost_of(other)
        try:
            q_prime = aggression_quantity(mover, d, cfg)
            annotations.append(f"drive-out: q{mover}={q_prime!r}")
        except NetshareError as exc:
            annotations.append(f"drive-out: unavailable ({exc})")
        header = (f"q{mover}", f"profit_sp{mover}", f"profit_sp{other}")
        hi = 2.5 * q_ref
        for i in range(1, samples + 1):
            x = hi * i / samples
            q_resp = best_response(x, other_c, m, cfg)
            rows.append((x, profit(x, q_resp, own_c, m), profit(q_resp, x, other_c, m)))
    elif which == "profit-vs-price":
        header = ("price", "profit_sp1", "profit_sp2")
        p_hi = 2.0 * max(
            m.epsilon * spec.sp1.beta / (m.epsilon - 1.0),
            m.epsilon * spec.sp2.beta / (m.epsilon - 1.0),
        )
        for i in range(1, samples + 1):
            p = p_hi * i / samples
            q = demand(p, m)
            rows.append(
                (
                    p,
                    p * q - (spec.sp1.alpha + spec.sp1.beta * q),
                    p * q - (spec.sp2.alpha + spec.sp2.beta * q),
                )
            )
    else:
        raise click.UsageError(f"unknown curve kind {which!r}")
    return header, annotations, rows


@main.command()
@_spec_options
@click.option("--which", type=click.Choice(CURVE_KINDS), default="best-response")
@click.option("--samples", type=int, default=200, show_default=True)
@click.option("--out", default=None, help="write the samples to this path")
@click.option("--plot", is_flag=True, help="also render the curve to a PNG next to --out")
def curves(preset, config, analysis, informed, undercut, shapley, which, samples, out, plot):
    """Sample a named curve of the scenario as comma-separated columns."""
    if samples < 2:
        raise click.UsageError("--samples must be at least 2")
    spec = _load_spec(preset, config, analysis, informed, undercut, shapley)
    header, annotations, rows = _curve_rows(spec, which, samples)
    buf = io.StringIO()
    for note in annotations:
        buf.write(f"# {note}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(float(v)) for v in row])
    _emit(buf.getvalue(), out)
    if plot:
        if not out:
            raise click.UsageError("--plot needs --out to know where the PNG goes")
        png = out.rsplit(".", 1)[0] + ".png" if "." in out.rsplit("/", 1)[-1] else out + ".png"
        _render_plot(which, header, rows, png)
        click.echo(f"plot written to {png}", err=True)


def _render_plot(which, header, rows, path):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    xs = [r[0] for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    for col in (1, 2):
        ax.plot(xs, [r[col] for r in rows], label=header[col])
    ax.set_xlabel(header[0])
    ax.set_title(which)
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def _flatten_scalars(prefix: str, value, out: dict):
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten_scalars(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(value, list):
        for i, v in enumerate(value):
            _flatten_scalars(f"{prefix}.{i}", v, out)
    elif isinstance(value, bool):
        out[prefix] = str(value).lower()
    elif isinstance(value, (int, float)):
        out[prefix] = repr(float(value))
    # strings and None are diagnostics, not sweep columns


@main.command()
@_spec_options
@click.option("--out", default=None, help="write the table to this path")
def sweep(preset, config, analysis, informed, undercut, shapley, out):
    """Run the scenario over its sweep grid, one row per point."""
    spec = _load_spec(preset, config, analysis, informed, undercut, shapley)
    try:
        points = sweep_grid(spec)
    except ConfigError as exc:
        raise click.UsageError(str(exc))
    coord_names = [axis.param for axis in spec.sweeps]
    row_dicts = []
    columns: list[str] = []
    seen = set()
    for coords, point in points:
        document, _ = run_scenario(point)
        scalars: dict[str, str] = {}
        errors = []
        for name, block in document["results"].items():
            if "error" in block:
                errors.append(f"{name}: {block['error']}")
            else:
                _flatten_scalars(name, block, scalars)
        for key in scalars:
            if key not in seen:
                seen.add(key)
                columns.append(key)
        row = {name: repr(float(coords[name])) for name in coord_names}
        row.update(scalars)
        row["error"] = "; ".join(errors)
        row_dicts.append(row)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = coord_names + columns + ["error"]
    writer.writerow(header)
    for row in row_dicts:
        writer.writerow([row.get(col, "") for col in header])
    _emit(buf.getvalue(), out)


@main.command()
@click.option("--show", default=None, help="print the named preset as a scenario document")
def presets(show):
    """List the built-in scenarios, or print one with --show."""
    if show:
        if show not in PRESETS:
            raise click.UsageError(
                f"unknown preset {show!r} (available: {', '.join(sorted(PRESETS))})"
            )
        click.echo(serialize_scenario(PRESETS[show]), nl=False)
        return
    for name in sorted(PRESETS):
        spec = PRESETS[name]
        click.echo(f"{name}: analyses {', '.join(spec.analyses)}")


if __name__ == "__main__":
    main()
