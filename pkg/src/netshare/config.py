"""Scenario documents: parsing, validation, serialization and sweep expansion.

Format: flat INI-style sections. Unknown sections or keys are rejected with
line numbers; silent typos in economic parameters are the worst failure mode
for this tool.

    [market]
    q = 1000
    epsilon = 1.25

    [sp1]
    alpha = 50
    beta = 2.5

    [sp2]
    alpha = 100
    beta = 2

    [analysis]
    run = monopoly, cournot, payoff-table
    informed = 0.5        ; optional, needed by bertrand-informed/-shared
    undercut = 0.01       ; optional price granularity
    shapley = mon         ; mon | nc

    [solver]              ; optional overrides
    rel_tol = 1e-10
    abs_tol = 1e-12
    max_iter = 200

    [regions]             ; optional, needed by multiregion-* analyses
    sp1 = W
    sp2 = W E
    n_w = 0.3333333333333333
    n_e = 0.3333333333333333
    n_we = 0.3333333333333334
    alpha_rule = per-region

    [sweep.1]             ; optional, any number of axes
    param = sp1.alpha
    lo = 25
    hi = 75
    steps = 3

Numbers are decimal, booleans true/false, lists comma- or space-separated.
"""

import dataclasses
import itertools
from dataclasses import dataclass, replace

from .cournot import Duopoly
from .errors import ConfigError, DomainError
from .market import CostParams, MarketParams
from .multiregion import ALPHA_RULES, RegionScenario
from .solver import DEFAULT_CONFIG, SolverConfig

ANALYSES = (
    "monopoly",
    "cournot",
    "payoff-table",
    "sharing",
    "regulated-sharing",
    "bertrand",
    "bertrand-informed",
    "bertrand-shared",
    "multiregion-standalone",
    "multiregion-coop",
    "multiregion-cournot",
    "multiregion-bertrand",
)

SWEEPABLE_PARAMS = (
    "market.q",
    "market.epsilon",
    "sp1.alpha",
    "sp1.beta",
    "sp2.alpha",
    "sp2.beta",
    "analysis.informed",
)

DEFAULT_SWEEP_CAP = 10**6


@dataclass(frozen=True)
class SweepAxis:
    param: str
    lo: float
    hi: float
    steps: int

    def values(self) -> list[float]:
        if self.steps == 1:
            return [self.lo]
        step = (self.hi - self.lo) / (self.steps - 1)
        return [self.lo + i * step for i in range(self.steps)]


@dataclass(frozen=True)
class ScenarioSpec:
    market: MarketParams
    sp1: CostParams
    sp2: CostParams
    analyses: tuple[str, ...]
    informed: float | None = None
    undercut: float = 0.01
    shapley: str = "mon"
    regions: RegionScenario | None = None
    solver: SolverConfig = DEFAULT_CONFIG
    sweeps: tuple[SweepAxis, ...] = ()

    def duopoly(self) -> Duopoly:
        return Duopoly(sp1=self.sp1, sp2=self.sp2, market=self.market)


_SECTION_KEYS = {
    "market": {"q", "epsilon"},
    "sp1": {"alpha", "beta"},
    "sp2": {"alpha", "beta"},
    "analysis": {"run", "informed", "undercut", "shapley"},
    "solver": {"rel_tol", "abs_tol", "max_iter"},
    "regions": {"sp1", "sp2", "n_w", "n_e", "n_we", "alpha_rule"},
}


def _tokenize(text: str):
    """Yield (line_number, section, key, value) for every assignment."""
    section = None
    sections: dict[str, dict[str, tuple[int, str]]] = {}
    order: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split(";")[0].split("#")[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if section in sections:
                raise ConfigError(f"duplicate section [{section}]", lineno)
            sections[section] = {}
            order.append(section)
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {line!r}", lineno)
        if section is None:
            raise ConfigError("assignment before any [section] header", lineno)
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key in sections[section]:
            raise ConfigError(f"duplicate key {key!r} in [{section}]", lineno)
        sections[section][key] = (lineno, value)
    return sections, order


def _check_keys(section: str, body: dict, allowed: set, lineno_hint: int | None = None):
    for key, (lineno, _) in body.items():
        if key not in allowed:
            raise ConfigError(
                f"unknown key {key!r} in [{section}] (allowed: {sorted(allowed)})", lineno
            )


def _number(section, body, key, required=True, default=None):
    if key not in body:
        if required:
            raise ConfigError(f"[{section}] is missing required key {key!r}")
        return default
    lineno, value = body[key]
    try:
        return float(value)
    except ValueError:
        raise ConfigError(f"[{section}] {key} is not a number: {value!r}", lineno)


def parse_scenario(text: str) -> ScenarioSpec:
    """Parse and fully validate a scenario document."""
    sections, _ = _tokenize(text)
    for name, body in sections.items():
        base = name.split(".")[0]
        if base == "sweep":
            parts = name.split(".")
            if len(parts) != 2 or not parts[1].isdigit():
                raise ConfigError(f"sweep sections must be named [sweep.N], got [{name}]")
            _check_keys(name, body, {"param", "lo", "hi", "steps"})
        elif name in _SECTION_KEYS:
            _check_keys(name, body, _SECTION_KEYS[name])
        else:
            raise ConfigError(f"unknown section [{name}]")
    for required in ("market", "sp1", "sp2"):
        if required not in sections:
            raise ConfigError(f"missing required section [{required}]")

    def wrap_domain(section: str, ctor, **kwargs):
        try:
            return ctor(**kwargs)
        except DomainError as exc:
            raise ConfigError(f"[{section}] {exc}") from exc

    market = wrap_domain(
        "market",
        MarketParams,
        q_unit=_number("market", sections["market"], "q"),
        epsilon=_number("market", sections["market"], "epsilon"),
    )
    sp1 = wrap_domain(
        "sp1",
        CostParams,
        alpha=_number("sp1", sections["sp1"], "alpha"),
        beta=_number("sp1", sections["sp1"], "beta"),
    )
    sp2 = wrap_domain(
        "sp2",
        CostParams,
        alpha=_number("sp2", sections["sp2"], "alpha"),
        beta=_number("sp2", sections["sp2"], "beta"),
    )

    analyses: tuple[str, ...] = ("cournot",)
    informed = None
    undercut = 0.01
    shapley = "mon"
    if "analysis" in sections:
        body = sections["analysis"]
        if "run" in body:
            lineno, value = body["run"]
            analyses = tuple(a for a in value.replace(",", " ").split() if a)
            for a in analyses:
                if a not in ANALYSES:
                    raise ConfigError(
                        f"unknown analysis {a!r} (known: {', '.join(ANALYSES)})", lineno
                    )
        informed = _number("analysis", body, "informed", required=False)
        if informed is not None and not 0.0 <= informed <= 1.0:
            raise ConfigError(f"[analysis] informed must lie in [0, 1], got {informed}")
        undercut = _number("analysis", body, "undercut", required=False, default=0.01)
        if undercut <= 0:
            raise ConfigError(f"[analysis] undercut must be positive, got {undercut}")
        if "shapley" in body:
            lineno, shapley = body["shapley"]
            if shapley not in ("mon", "nc"):
                raise ConfigError(f"shapley must be 'mon' or 'nc', got {shapley!r}", lineno)

    solver = DEFAULT_CONFIG
    if "solver" in sections:
        body = sections["solver"]
        solver = wrap_domain(
            "solver",
            SolverConfig,
            rel_tol=_number("solver", body, "rel_tol", required=False, default=DEFAULT_CONFIG.rel_tol),
            abs_tol=_number("solver", body, "abs_tol", required=False, default=DEFAULT_CONFIG.abs_tol),
            max_iter=int(_number("solver", body, "max_iter", required=False, default=DEFAULT_CONFIG.max_iter)),
        )

    regions = None
    if "regions" in sections:
        body = sections["regions"]
        fps = {}
        for key in ("sp1", "sp2"):
            if key not in body:
                raise ConfigError(f"[regions] is missing required key {key!r}")
            lineno, value = body[key]
            fps[key] = frozenset(v for v in value.replace(",", " ").split() if v)
        rule = "per-region"
        if "alpha_rule" in body:
            lineno, rule = body["alpha_rule"]
            if rule not in ALPHA_RULES:
                raise ConfigError(f"alpha_rule must be one of {ALPHA_RULES}, got {rule!r}", lineno)
        regions = wrap_domain(
            "regions",
            RegionScenario,
            footprint1=fps["sp1"],
            footprint2=fps["sp2"],
            n_w=_number("regions", body, "n_w"),
            n_e=_number("regions", body, "n_e"),
            n_we=_number("regions", body, "n_we"),
            alpha_rule=rule,
        )

    sweeps = []
    sweep_names = sorted(
        (n for n in sections if n.startswith("sweep.")), key=lambda n: int(n.split(".")[1])
    )
    for name in sweep_names:
        body = sections[name]
        if "param" not in body:
            raise ConfigError(f"[{name}] is missing required key 'param'")
        lineno, param = body["param"]
        if param not in SWEEPABLE_PARAMS:
            raise ConfigError(
                f"cannot sweep {param!r} (sweepable: {', '.join(SWEEPABLE_PARAMS)})", lineno
            )
        steps = int(_number(name, body, "steps"))
        if steps < 1:
            raise ConfigError(f"[{name}] steps must be at least 1, got {steps}")
        sweeps.append(
            SweepAxis(
                param=param,
                lo=_number(name, body, "lo"),
                hi=_number(name, body, "hi"),
                steps=steps,
            )
        )

    return ScenarioSpec(
        market=market,
        sp1=sp1,
        sp2=sp2,
        analyses=analyses,
        informed=informed,
        undercut=undercut,
        shapley=shapley,
        regions=regions,
        solver=solver,
        sweeps=tuple(sweeps),
    )


def serialize_scenario(spec: ScenarioSpec) -> str:
    """Write a spec back to document form; parse(serialize(s)) == s."""
    lines = [
        "[market]",
        f"q = {spec.market.q_unit!r}",
        f"epsilon = {spec.market.epsilon!r}",
        "",
        "[sp1]",
        f"alpha = {spec.sp1.alpha!r}",
        f"beta = {spec.sp1.beta!r}",
        "",
        "[sp2]",
        f"alpha = {spec.sp2.alpha!r}",
        f"beta = {spec.sp2.beta!r}",
        "",
        "[analysis]",
        f"run = {', '.join(spec.analyses)}",
    ]
    if spec.informed is not None:
        lines.append(f"informed = {spec.informed!r}")
    lines.append(f"undercut = {spec.undercut!r}")
    lines.append(f"shapley = {spec.shapley}")
    if spec.solver != DEFAULT_CONFIG:
        lines += [
            "",
            "[solver]",
            f"rel_tol = {spec.solver.rel_tol!r}",
            f"abs_tol = {spec.solver.abs_tol!r}",
            f"max_iter = {spec.solver.max_iter}",
        ]
    if spec.regions is not None:
        r = spec.regions
        lines += [
            "",
            "[regions]",
            f"sp1 = {' '.join(sorted(r.footprint1))}",
            f"sp2 = {' '.join(sorted(r.footprint2))}",
            f"n_w = {r.n_w!r}",
            f"n_e = {r.n_e!r}",
            f"n_we = {r.n_we!r}",
            f"alpha_rule = {r.alpha_rule}",
        ]
    for i, axis in enumerate(spec.sweeps, start=1):
        lines += [
            "",
            f"[sweep.{i}]",
            f"param = {axis.param}",
            f"lo = {axis.lo!r}",
            f"hi = {axis.hi!r}",
            f"steps = {axis.steps}",
        ]
    return "\n".join(lines) + "\n"


def _apply_param(spec: ScenarioSpec, param: str, value: float) -> ScenarioSpec:
    group, field = param.split(".")
    if group == "market":
        name = "q_unit" if field == "q" else field
        return replace(spec, market=replace(spec.market, **{name: value}))
    if group in ("sp1", "sp2"):
        return replace(spec, **{group: replace(getattr(spec, group), **{field: value})})
    if group == "analysis" and field == "informed":
        return replace(spec, informed=value)
    raise ConfigError(f"cannot apply sweep parameter {param!r}")


def expand_sweep(spec: ScenarioSpec, cap: int = DEFAULT_SWEEP_CAP) -> list[ScenarioSpec]:
    """Cartesian product of the sweep axes, row-major in declaration order."""
    if not spec.sweeps:
        return [spec]
    total = 1
    for axis in spec.sweeps:
        total *= axis.steps
    if total > cap:
        raise ConfigError(f"sweep grid has {total} points, over the cap of {cap}")
    out = []
    for combo in itertools.product(*(axis.values() for axis in spec.sweeps)):
        point = replace(spec, sweeps=())
        for axis, value in zip(spec.sweeps, combo):
            point = _apply_param(point, axis.param, value)
        out.append(point)
    return out


def sweep_grid(spec: ScenarioSpec, cap: int = DEFAULT_SWEEP_CAP):
    """Like expand_sweep but pairs each point with its swept coordinates."""
    if not spec.sweeps:
        return [({}, spec)]
    total = 1
    for axis in spec.sweeps:
        total *= axis.steps
    if total > cap:
        raise ConfigError(f"sweep grid has {total} points, over the cap of {cap}")
    out = []
    for combo in itertools.product(*(axis.values() for axis in spec.sweeps)):
        point = replace(spec, sweeps=())
        coords = {}
        for axis, value in zip(spec.sweeps, combo):
            point = _apply_param(point, axis.param, value)
            coords[axis.param] = value
        out.append((coords, point))
    return out


_THIRD = 1.0 / 3.0

PRESETS: dict[str, ScenarioSpec] = {
    "paper": ScenarioSpec(
        market=MarketParams(q_unit=1000.0, epsilon=1.25),
        sp1=CostParams(alpha=50.0, beta=2.5),
        sp2=CostParams(alpha=100.0, beta=2.0),
        analyses=(
            "monopoly",
            "cournot",
            "sharing",
            "regulated-sharing",
            "bertrand",
            "payoff-table",
        ),
    ),
    "paper-regions-1": ScenarioSpec(
        market=MarketParams(q_unit=1000.0, epsilon=1.25),
        sp1=CostParams(alpha=50.0, beta=2.5),
        sp2=CostParams(alpha=100.0, beta=2.0),
        analyses=("multiregion-standalone", "multiregion-coop"),
        regions=RegionScenario(
            footprint1=frozenset({"W"}),
            footprint2=frozenset({"E"}),
            n_w=_THIRD,
            n_e=_THIRD,
            n_we=1.0 - 2.0 * _THIRD,
        ),
    ),
    "paper-regions-2": ScenarioSpec(
        market=MarketParams(q_unit=1000.0, epsilon=1.25),
        sp1=CostParams(alpha=50.0, beta=2.5),
        sp2=CostParams(alpha=100.0, beta=2.0),
        analyses=("multiregion-cournot", "multiregion-bertrand", "multiregion-coop"),
        regions=RegionScenario(
            footprint1=frozenset({"W"}),
            footprint2=frozenset({"W", "E"}),
            n_w=_THIRD,
            n_e=_THIRD,
            n_we=1.0 - 2.0 * _THIRD,
        ),
    ),
}
