"""Two regions (W, E) with user classes W, E and WE.

A class-X user needs coverage in every region of X, so WE users are only
served by a firm (or coalition) covering both regions. Fixed costs scale with
footprint size under the default "per-region" rule: building one region costs
half the firm's alpha.
"""

import math
from dataclasses import dataclass, field

from .cournot import Duopoly, nash_cournot
from .errors import DomainError, WrongScenarioError
from .market import CostParams, MarketParams, demand, monopoly_solution
from .sharing import ShapleyBasis  # noqa: F401  (re-exported for CLI use)
from .solver import DEFAULT_CONFIG, SolverConfig
from . import bertrand as _bertrand

REGIONS = ("W", "E")
USER_CLASSES = ("W", "E", "WE")

_CLASS_NEEDS = {"W": frozenset({"W"}), "E": frozenset({"E"}), "WE": frozenset({"W", "E"})}

ALPHA_RULES = ("per-region", "full")


@dataclass(frozen=True)
class RegionScenario:
    """Footprints and user-class masses for a two-region market.

    alpha_rule "per-region" scales each firm's fixed cost by the number of
    regions it builds over 2; "full" always charges the whole alpha.
    """

    footprint1: frozenset
    footprint2: frozenset
    n_w: float
    n_e: float
    n_we: float
    alpha_rule: str = "per-region"

    def __post_init__(self):
        for name, fp in (("sp1", self.footprint1), ("sp2", self.footprint2)):
            if not fp:
                raise DomainError(f"{name} footprint must be non-empty")
            if not fp <= set(REGIONS):
                raise DomainError(f"{name} footprint has unknown regions: {fp}")
        fractions = (self.n_w, self.n_e, self.n_we)
        if min(fractions) < 0:
            raise DomainError("user fractions must be non-negative")
        if abs(sum(fractions) - 1.0) > 1e-9:
            raise DomainError(f"user fractions must sum to 1, got {sum(fractions)}")
        if self.alpha_rule not in ALPHA_RULES:
            raise DomainError(f"unknown alpha rule {self.alpha_rule!r}")

    def footprint(self, sp: int) -> frozenset:
        return self.footprint1 if sp == 1 else self.footprint2

    def fraction(self, user_class: str) -> float:
        return {"W": self.n_w, "E": self.n_e, "WE": self.n_we}[user_class]


@dataclass(frozen=True)
class ClassOutcome:
    price: float
    quantity1: float
    quantity2: float
    served: bool = True


@dataclass(frozen=True)
class RegionalOutcome:
    classes: dict = field(default_factory=dict)
    profit1: float = 0.0
    profit2: float = 0.0
    combined_profit: float | None = None
    split: tuple[float, float] | None = None
    warnings: tuple[str, ...] = ()


def _effective_alpha(c: CostParams, footprint: frozenset, rule: str) -> float:
    if rule == "full":
        return c.alpha
    return c.alpha * len(footprint) / 2.0


def _reachable_classes(footprint: frozenset) -> tuple[str, ...]:
    return tuple(u for u in USER_CLASSES if _CLASS_NEEDS[u] <= footprint)


def _standalone(
    sp: int, s: RegionScenario, d: Duopoly
) -> tuple[float, dict[str, ClassOutcome]]:
    """Monopoly outcome for one firm over the classes it can reach alone."""
    c = d.cost_of(sp)
    footprint = s.footprint(sp)
    classes = _reachable_classes(footprint)
    mass = sum(s.fraction(u) for u in classes)
    if mass == 0:
        return 0.0, {}
    eff = CostParams(alpha=_effective_alpha(c, footprint, s.alpha_rule), beta=c.beta)
    scaled = MarketParams(q_unit=d.market.q_unit * mass, epsilon=d.market.epsilon)
    mon = monopoly_solution(eff, scaled)
    per_class: dict[str, ClassOutcome] = {}
    if mon.participation:
        for u in classes:
            qu = s.fraction(u) * d.market.q_unit * mon.price ** -d.market.epsilon
            per_class[u] = ClassOutcome(
                price=mon.price,
                quantity1=qu if sp == 1 else 0.0,
                quantity2=qu if sp == 2 else 0.0,
            )
    return mon.profit, per_class


def regional_standalone(s: RegionScenario, d: Duopoly) -> RegionalOutcome:
    """Disjoint footprints: each firm is a monopolist over its own classes."""
    if s.footprint1 & s.footprint2:
        raise WrongScenarioError(
            "footprints overlap; use regional_competition for contested regions"
        )
    pi1, classes1 = _standalone(1, s, d)
    pi2, classes2 = _standalone(2, s, d)
    classes = {**classes1, **classes2}
    warnings = []
    for u in USER_CLASSES:
        if u not in classes and s.fraction(u) > 0:
            classes[u] = ClassOutcome(price=math.nan, quantity1=0.0, quantity2=0.0, served=False)
            warnings.append(f"user class {u} unserved: no single firm covers it")
    return RegionalOutcome(
        classes=classes, profit1=pi1, profit2=pi2, warnings=tuple(warnings)
    )


def _builder(region: str, s: RegionScenario) -> int:
    """Which firm builds a region under cooperation: each firm its home region.

    W belongs to SP1 whenever SP1 covers it, E to SP2 whenever SP2 covers it;
    a region only one firm can reach is built by that firm.
    """
    if region == "W":
        return 1 if "W" in s.footprint1 else 2
    return 2 if "E" in s.footprint2 else 1


def regional_cooperation(s: RegionScenario, d: Duopoly) -> RegionalOutcome:
    """Whole-market pricing by the coalition; each region built by its home firm.

    WE traffic splits evenly across the two regions, so the coalition's
    effective unit cost is the class-mass-weighted mix of the two regional
    betas, and the optimal single price follows the monopoly formula with that
    mix. Profit splits by Shapley value against each firm's stand-alone
    monopoly.
    """
    if not (s.footprint1 | s.footprint2) >= set(REGIONS):
        raise WrongScenarioError("cooperation needs the union of footprints to cover W and E")
    m = d.market
    beta_by_region = {r: d.cost_of(_builder(r, s)).beta for r in REGIONS}
    w_weight = s.n_w + s.n_we / 2.0
    e_weight = s.n_e + s.n_we / 2.0
    beta_eff = w_weight * beta_by_region["W"] + e_weight * beta_by_region["E"]
    if beta_eff == 0:
        raise DomainError("coalition unit cost is zero; price unbounded")
    fixed = sum(
        _effective_alpha(d.cost_of(_builder(r, s)), frozenset({r}), s.alpha_rule)
        for r in REGIONS
    )
    p = m.epsilon * beta_eff / (m.epsilon - 1.0)
    q = demand(p, m)
    combined = p * q - fixed - beta_eff * q
    v1, _ = _standalone(1, s, d)
    v2, _ = _standalone(2, s, d)
    split = (0.5 * (v1 + combined - v2), 0.5 * (v2 + combined - v1))
    classes: dict[str, ClassOutcome] = {}
    for u in USER_CLASSES:
        qu = s.fraction(u) * demand(p, m)
        if u == "WE":
            # WE traffic runs half in each region; attribute it to the builders.
            share = {1: 0.0, 2: 0.0}
            for r in REGIONS:
                share[_builder(r, s)] += qu / 2.0
            classes[u] = ClassOutcome(price=p, quantity1=share[1], quantity2=share[2])
        else:
            b = _builder(u, s)
            classes[u] = ClassOutcome(
                price=p,
                quantity1=qu if b == 1 else 0.0,
                quantity2=qu if b == 2 else 0.0,
            )
    return RegionalOutcome(
        classes=classes,
        profit1=split[0],
        profit2=split[1],
        combined_profit=combined,
        split=split,
    )


def regional_competition(
    s: RegionScenario,
    d: Duopoly,
    game: str,
    cfg: SolverConfig = DEFAULT_CONFIG,
) -> RegionalOutcome:
    """One firm national, one regional: monopoly on captive classes, the chosen
    game on the contested region's user mass.
    """
    if game not in ("cournot", "bertrand"):
        raise DomainError(f"game must be 'cournot' or 'bertrand', got {game!r}")
    overlap = s.footprint1 & s.footprint2
    if len(overlap) != 1:
        raise WrongScenarioError("competition scenario needs exactly one overlapping region")
    wide = 1 if s.footprint1 > s.footprint2 else 2
    narrow = 3 - wide
    if s.footprint(wide) != set(REGIONS):
        raise WrongScenarioError("the wider footprint must cover both regions")
    contested = next(iter(overlap))
    m = d.market
    c_wide, c_narrow = d.cost_of(wide), d.cost_of(narrow)
    alpha_wide = _effective_alpha(c_wide, s.footprint(wide), s.alpha_rule)
    alpha_narrow = _effective_alpha(c_narrow, s.footprint(narrow), s.alpha_rule)

    captive_classes = [
        u
        for u in USER_CLASSES
        if _CLASS_NEEDS[u] <= s.footprint(wide) and not _CLASS_NEEDS[u] <= s.footprint(narrow)
    ]
    contested_mass = s.fraction(contested)
    p_captive = m.epsilon * c_wide.beta / (m.epsilon - 1.0)
    q_captive = sum(s.fraction(u) for u in captive_classes) * demand(p_captive, m)

    classes: dict[str, ClassOutcome] = {}
    for u in captive_classes:
        qu = s.fraction(u) * demand(p_captive, m)
        classes[u] = ClassOutcome(
            price=p_captive,
            quantity1=qu if wide == 1 else 0.0,
            quantity2=qu if wide == 2 else 0.0,
        )

    warnings: list[str] = []
    q_wide_contested = 0.0
    rev_narrow = 0.0
    q_narrow = 0.0
    if contested_mass == 0:
        warnings.append("contested region has no users: captive-only outcome")
        classes[contested] = ClassOutcome(price=math.nan, quantity1=0.0, quantity2=0.0, served=False)
    else:
        sub_market = MarketParams(q_unit=m.q_unit * contested_mass, epsilon=m.epsilon)
        if game == "cournot":
            sub = Duopoly(
                sp1=CostParams(alpha=alpha_narrow if narrow == 1 else alpha_wide, beta=d.sp1.beta),
                sp2=CostParams(alpha=alpha_narrow if narrow == 2 else alpha_wide, beta=d.sp2.beta),
                market=sub_market,
            )
            sol = nash_cournot(sub, cfg)
            q1c, q2c, pc = sol.q1_star, sol.q2_star, sol.price
            classes[contested] = ClassOutcome(price=pc, quantity1=q1c, quantity2=q2c)
            q_narrow = q1c if narrow == 1 else q2c
            q_wide_contested = q2c if narrow == 1 else q1c
            rev_narrow = pc * q_narrow
            rev_wide_contested = pc * q_wide_contested
        else:
            entry = _bertrand.zero_profit_prices(
                CostParams(alpha=alpha_narrow, beta=c_narrow.beta), sub_market, 1.0, cfg
            )
            if entry.empty:
                p_c = m.epsilon * c_wide.beta / (m.epsilon - 1.0)
                warnings.append("regional firm cannot enter; contested region priced as monopoly")
            else:
                # Pricing exactly at the rival's entry threshold leaves it with
                # zero profit at best, keeping it out.
                p_c = min(m.epsilon * c_wide.beta / (m.epsilon - 1.0), entry.p_lo)
            q_wide_contested = contested_mass * demand(p_c, m)
            rev_wide_contested = p_c * q_wide_contested
            classes[contested] = ClassOutcome(
                price=p_c,
                quantity1=q_wide_contested if wide == 1 else 0.0,
                quantity2=q_wide_contested if wide == 2 else 0.0,
            )
    pi_narrow = rev_narrow - (alpha_narrow + c_narrow.beta * q_narrow) if q_narrow > 0 else 0.0
    q_wide_total = q_captive + q_wide_contested
    rev_wide = p_captive * q_captive + (rev_wide_contested if q_wide_contested > 0 else 0.0)
    pi_wide = rev_wide - (alpha_wide + c_wide.beta * q_wide_total)
    profits = {wide: pi_wide, narrow: pi_narrow}
    return RegionalOutcome(
        classes=classes,
        profit1=profits[1],
        profit2=profits[2],
        warnings=tuple(warnings),
    )
