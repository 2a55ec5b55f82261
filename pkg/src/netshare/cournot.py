"""Quantity competition: best responses, the closed-form Nash equilibrium,
viability, drive-out (aggression) quantities and the strategy payoff table.
"""

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import (
    DegenerateEquilibriumError,
    DomainError,
    NoDriveOutError,
    NonMonotoneThresholdError,
)
from .market import (
    PARTICIPATION_TOL,
    CostParams,
    MarketParams,
    inverse_demand,
    monopoly_solution,
    profit,
)
from .solver import DEFAULT_CONFIG, SolverConfig, expand_bracket, find_root

_RATIO_DEGENERACY_TOL = 1e-12


@dataclass(frozen=True)
class Duopoly:
    sp1: CostParams
    sp2: CostParams
    market: MarketParams

    def cost_of(self, sp: int) -> CostParams:
        if sp == 1:
            return self.sp1
        if sp == 2:
            return self.sp2
        raise DomainError(f"sp index must be 1 or 2, got {sp}")


class Strategy(str, Enum):
    NASH_COURNOT = "nash-cournot"
    AGGRESSION = "aggression"
    SUBMISSION = "submission"


@dataclass(frozen=True)
class NashCournotSolution:
    """Closed-form equilibrium of the relaxed quantity game.

    t is the quantity ratio q2/q1. viable is False when any of the ratio,
    quantity-sign or fixed-cost conditions fails; violated_conditions lists
    which ones.
    """

    t: float
    q1_star: float
    q2_star: float
    price: float
    profit1: float
    profit2: float
    viable: bool
    violated_conditions: tuple[str, ...] = ()


def _ratio_equation_root(
    q_other: float, beta_own: float, m: MarketParams, cfg: SolverConfig
) -> float | None:
    """Positive root z of (z+1)**(1+1/eps) = A*z + B, or None when there is none.

    z is the responder's quantity as a multiple of the opponent's. There is a
    positive root exactly when B > 1.
    """
    inv_eps = 1.0 / m.epsilon
    k = (m.q_unit / (q_other * beta_own**m.epsilon)) ** inv_eps
    if k <= 1.0:
        return None
    a = (1.0 - inv_eps) * k

    def f(z: float) -> float:
        return (z + 1.0) ** (1.0 + inv_eps) - (a * z + k)

    lo, hi = expand_bracket(f, 0.0)
    if lo == hi:
        return lo
    return find_root(f, lo, hi, cfg)


def best_response(
    q_other: float,
    own: CostParams,
    m: MarketParams,
    cfg: SolverConfig = DEFAULT_CONFIG,
) -> float:
    """Profit-maximizing quantity against an opponent serving q_other.

    Returns 0 when no positive quantity is profitable; against q_other == 0
    the best response is the monopoly quantity.
    """
    if q_other < 0:
        raise DomainError("opponent quantity must be non-negative")
    if q_other == 0:
        return monopoly_solution(own, m).quantity
    if own.beta == 0:
        # No interior stationary point; rather than guess a fallback,
        # reject loudly.
        raise DomainError("best response undefined for beta == 0")
    z = _ratio_equation_root(q_other, own.beta, m, cfg)
    if z is None:
        return 0.0
    q = z * q_other
    if profit(q, q_other, own, m) < -PARTICIPATION_TOL:
        return 0.0
    return q


def _best_attainable_profit(
    q_opponent: float, victim: CostParams, m: MarketParams, cfg: SolverConfig
) -> float:
    """Supremum of the victim's profit over positive quantities (may be negative).

    When no positive stationary point exists the supremum over q -> 0+ is
    -alpha (the fixed cost can never be covered).
    """
    z = _ratio_equation_root(q_opponent, victim.beta, m, cfg)
    if z is None:
        return -victim.alpha
    return profit(z * q_opponent, q_opponent, victim, m)


def nash_cournot(d: Duopoly, cfg: SolverConfig = DEFAULT_CONFIG) -> NashCournotSolution:
    """Closed-form Nash equilibrium of the quantity game, with viability flags."""
    eps = d.market.epsilon
    b1, b2 = d.sp1.beta, d.sp2.beta
    if b1 == 0 or b2 == 0:
        raise DegenerateEquilibriumError("equilibrium undefined for beta == 0")
    inv_eps = 1.0 / eps
    r = b2 / b1
    denom = r - (1.0 - inv_eps)
    if abs(denom) < _RATIO_DEGENERACY_TOL:
        raise DegenerateEquilibriumError(
            f"beta2/beta1 == 1 - 1/epsilon ({r}); quantity ratio undefined"
        )
    t = (1.0 - r * (1.0 - inv_eps)) / denom
    if t <= 0:
        # Relaxed solution has a negative quantity; closed forms involve
        # fractional powers of negatives, so report non-viability directly.
        return NashCournotSolution(
            t=t,
            q1_star=math.nan,
            q2_star=math.nan,
            price=math.nan,
            profit1=math.nan,
            profit2=math.nan,
            viable=False,
            violated_conditions=("quantity-sign", "beta-ratio"),
        )
    q = d.market.q_unit
    q1 = q * ((1.0 + t * (1.0 - inv_eps)) / (b2 * (1.0 + t) ** (1.0 + inv_eps))) ** eps
    q2 = (
        q
        * (((1.0 - inv_eps) / t + 1.0) / (b1 * (1.0 / t + 1.0) ** (1.0 + inv_eps)))
        ** eps
    )
    price = inverse_demand(q1 + q2, d.market)
    pi1 = profit(q1, q2, d.sp1, d.market)
    pi2 = profit(q2, q1, d.sp2, d.market)
    sol = NashCournotSolution(
        t=t, q1_star=q1, q2_star=q2, price=price, profit1=pi1, profit2=pi2, viable=True
    )
    viable, violations = check_viability(sol, d)
    return NashCournotSolution(
        t=t,
        q1_star=q1,
        q2_star=q2,
        price=price,
        profit1=pi1,
        profit2=pi2,
        viable=viable,
        violated_conditions=violations,
    )


def check_viability(
    sol: NashCournotSolution, d: Duopoly
) -> tuple[bool, tuple[str, ...]]:
    """Test the conditions under which the relaxed equilibrium stands.

    Conditions: the beta ratio bound (1 - 1/eps) <= min(b1/b2, b2/b1), both
    quantities non-negative, and each fixed cost covered by the margin
    revenue_i - beta_i * q_i at the equilibrium point.
    """
    eps = d.market.epsilon
    b1, b2 = d.sp1.beta, d.sp2.beta
    violations: list[str] = []
    if (1.0 - 1.0 / eps) > min(b1 / b2, b2 / b1):
        violations.append("beta-ratio")
    if math.isnan(sol.q1_star) or sol.q1_star < 0 or sol.q2_star < 0:
        violations.append("quantity-sign")
    else:
        price = inverse_demand(sol.q1_star + sol.q2_star, d.market)
        if d.sp1.alpha > price * sol.q1_star - b1 * sol.q1_star + PARTICIPATION_TOL:
            violations.append("sp1-fixed-cost")
        if d.sp2.alpha > price * sol.q2_star - b2 * sol.q2_star + PARTICIPATION_TOL:
            violations.append("sp2-fixed-cost")
    return (not violations, tuple(violations))


def aggression_quantity(
    aggressor: int, d: Duopoly, cfg: SolverConfig = DEFAULT_CONFIG
) -> float:
    """Smallest quantity at which the rival's best attainable profit is non-positive,
    floored at the aggressor's monopoly quantity.

    The aggressor's stand-alone profit is unimodal with its peak at the
    monopoly quantity, and the drive-out set is an up-set beyond a threshold,
    so the constrained argmax is max(threshold, monopoly quantity). The single
    zero crossing is verified by sampling; a contradicting sign pattern raises.
    """
    own = d.cost_of(aggressor)
    victim = d.cost_of(3 - aggressor)
    if victim.alpha <= 0:
        raise NoDriveOutError(
            "rival has no fixed cost: an arbitrarily small profitable response always exists"
        )
    mon = monopoly_solution(own, d.market)
    if not mon.participation:
        raise NoDriveOutError("aggressor cannot profit even as a monopolist")

    def h(q: float) -> float:
        return _best_attainable_profit(q, victim, d.market, cfg)

    lo = mon.quantity
    if h(lo) <= 0:
        return lo
    hi = lo
    while h(hi) > 0:
        hi *= 2.0
        if hi > lo * 2.0**60:
            raise NoDriveOutError("no drive-out quantity within the search range")
    threshold = find_root(h, lo, hi, cfg)

    # Drive-out must be a single crossing: strictly positive below, strictly
    # non-positive above (up to a small evaluation slack).
    slack = 1e-6 * max(1.0, abs(h(lo)))
    for i in range(1, 65):
        left = lo + (threshold - lo) * (i / 65.0)
        right = threshold + (hi - threshold) * (i / 65.0)
        if h(left) < -slack or h(right) > slack:
            raise NonMonotoneThresholdError(
                "rival profit is not a single zero crossing around the drive-out point"
            )
    return max(threshold, mon.quantity)


@dataclass(frozen=True)
class PayoffCell:
    profit1: float = math.nan
    profit2: float = math.nan
    available: bool = True
    non_viable_outcome: bool = False
    note: str = ""


@dataclass(frozen=True)
class PayoffTable:
    """Strategy-pair payoff matrix; keys are (SP1 strategy, SP2 strategy) names.

    Sharing rows are diagonal-only: the arrangement needs both sides to agree.
    """

    entries: dict = field(default_factory=dict)

    def cell(self, s1: str, s2: str) -> PayoffCell:
        return self.entries[(s1, s2)]


def payoff_table(
    d: Duopoly,
    sharing_entries: dict[str, tuple[float, float]] | None = None,
    cfg: SolverConfig = DEFAULT_CONFIG,
) -> PayoffTable:
    """Fill the 3x3 competitive matrix plus optional sharing diagonal cells.

    Each competitive cell is a direct profit evaluation at the strategy-implied
    quantity pair; no re-optimization. A strategy whose quantity cannot be
    computed (no equilibrium, no drive-out) marks its cells unavailable rather
    than failing the table.
    """
    quantities: dict[int, dict[Strategy, tuple[float | None, str]]] = {}
    try:
        sol = nash_cournot(d, cfg)
        nc = {
            1: (sol.q1_star if not math.isnan(sol.q1_star) else None, ""),
            2: (sol.q2_star if not math.isnan(sol.q2_star) else None, ""),
        }
    except DegenerateEquilibriumError as exc:
        nc = {1: (None, str(exc)), 2: (None, str(exc))}
    for sp in (1, 2):
        try:
            agg: tuple[float | None, str] = (aggression_quantity(sp, d, cfg), "")
        except (NoDriveOutError, NonMonotoneThresholdError) as exc:
            agg = (None, str(exc))
        quantities[sp] = {
            Strategy.NASH_COURNOT: nc[sp],
            Strategy.AGGRESSION: agg,
            Strategy.SUBMISSION: (0.0, ""),
        }

    entries: dict[tuple[str, str], PayoffCell] = {}
    for s1 in Strategy:
        for s2 in Strategy:
            q1, note1 = quantities[1][s1]
            q2, note2 = quantities[2][s2]
            if q1 is None or q2 is None:
                entries[(s1.value, s2.value)] = PayoffCell(
                    available=False, note=(note1 or note2)
                )
                continue
            pi1 = profit(q1, q2, d.sp1, d.market)
            pi2 = profit(q2, q1, d.sp2, d.market)
            non_viable = {s1, s2} == {Strategy.NASH_COURNOT, Strategy.SUBMISSION}
            entries[(s1.value, s2.value)] = PayoffCell(
                profit1=pi1, profit2=pi2, non_viable_outcome=non_viable
            )
    if sharing_entries:
        for name, (pi1, pi2) in sharing_entries.items():
            entries[(name, name)] = PayoffCell(profit1=pi1, profit2=pi2)
    return PayoffTable(entries=entries)
