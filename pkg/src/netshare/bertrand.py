"""Price competition: the basic undercutting game, the informed/uninformed
user-fraction variant, and shared-cost price competition.

A firm serving a demand share s at price p earns
    s * q(p) * (p - beta) - alpha,
i.e. capacity is built for the demand actually served.
"""

import math
from dataclasses import dataclass
from enum import Enum

from .cournot import Duopoly
from .errors import DomainError, StructureError
from .market import PARTICIPATION_TOL, CostParams, MarketParams, demand
from .sharing import coop_cost_params
from .solver import DEFAULT_CONFIG, SolverConfig, find_root

_PRICE_TIE_REL_TOL = 1e-9


class BertrandRegime(str, Enum):
    BOTH_OUT = "both-out"
    UNCONTESTED_MONOPOLY = "uncontested-monopoly"
    DRIVE_OUT = "drive-out"
    BERTRAND_CURSE = "bertrand-curse"
    INFORMED_SPLIT = "informed-split"


@dataclass(frozen=True)
class PriceRange:
    """Price interval on which a firm's profit is non-negative."""

    p_lo: float = math.nan
    p_hi: float = math.nan
    empty: bool = False


@dataclass(frozen=True)
class InformedFraction:
    """Share of users who always buy from the cheapest firm.

    The remaining (uninformed) users split evenly between the firms; every
    user's demand still follows the elasticity curve.
    """

    informed: float

    def __post_init__(self):
        if not 0.0 <= self.informed <= 1.0:
            raise DomainError(f"informed fraction must lie in [0, 1], got {self.informed}")

    @property
    def uninformed(self) -> float:
        return 1.0 - self.informed


@dataclass(frozen=True)
class BertrandOutcome:
    prices: tuple[float, float]
    quantities: tuple[float, float]
    profits: tuple[float, float]
    regime: BertrandRegime
    warnings: tuple[str, ...] = ()


def segment_profit(
    p: float, c: CostParams, m: MarketParams, scale: float = 1.0
) -> float:
    """Profit at price p serving a `scale` multiple of market demand."""
    q = scale * demand(p, m)
    return p * q - (c.alpha + c.beta * q)


def zero_profit_prices(
    c: CostParams,
    m: MarketParams,
    scale: float = 1.0,
    cfg: SolverConfig = DEFAULT_CONFIG,
) -> PriceRange:
    """Both roots of the scaled profit in price, bracketed around its peak.

    Empty when even the profit-maximizing price loses money. The peak price
    eps*beta/(eps-1) does not depend on the demand scale.
    """
    if not scale > 0:
        raise DomainError(f"scale must be positive, got {scale}")
    if c.beta == 0:
        raise DomainError("zero-profit prices undefined for beta == 0")
    p_star = m.epsilon * c.beta / (m.epsilon - 1.0)

    def f(p: float) -> float:
        return segment_profit(p, c, m, scale)

    if f(p_star) < 0:
        return PriceRange(empty=True)
    lo = p_star
    while f(lo) >= 0:
        lo *= 0.5
        if lo < 1e-300:
            raise StructureError("profit never turns negative at low prices")
    hi = p_star
    while f(hi) >= 0:
        hi *= 2.0
        if hi > 1e300:
            raise StructureError("profit never turns negative at high prices")
    return PriceRange(
        p_lo=find_root(f, lo, p_star, cfg), p_hi=find_root(f, p_star, hi, cfg)
    )


def _monopoly_price(c: CostParams, m: MarketParams) -> float:
    return m.epsilon * c.beta / (m.epsilon - 1.0)


def _undercut(p_bar: float, delta: float) -> float:
    """Largest multiple of the price granularity strictly below p_bar."""
    p = delta * math.floor(p_bar / delta)
    if p >= p_bar:
        p -= delta
    return p


def bertrand_basic(
    d: Duopoly, undercut: float = 0.01, cfg: SolverConfig = DEFAULT_CONFIG
) -> BertrandOutcome:
    """Price game with fully price-sensitive users and price granularity `undercut`.

    All demand goes to the cheaper firm; ties split demand evenly.
    """
    if not undercut > 0:
        raise DomainError("undercut granularity must be positive")
    m = d.market
    ranges = (zero_profit_prices(d.sp1, m, 1.0, cfg), zero_profit_prices(d.sp2, m, 1.0, cfg))
    if ranges[0].empty and ranges[1].empty:
        return BertrandOutcome(
            prices=(math.nan, math.nan),
            quantities=(0.0, 0.0),
            profits=(0.0, 0.0),
            regime=BertrandRegime.BOTH_OUT,
        )
    if ranges[0].empty or ranges[1].empty:
        winner = 1 if ranges[1].empty else 2
        return _monopoly_outcome(winner, d, BertrandRegime.UNCONTESTED_MONOPOLY)

    p_lo = (ranges[0].p_lo, ranges[1].p_lo)
    tie_tol = _PRICE_TIE_REL_TOL * max(p_lo)
    if abs(p_lo[0] - p_lo[1]) <= tie_tol:
        # Equal entry prices: the only equilibrium is both at the zero-profit
        # price; reported profits are zero by construction.
        p = p_lo[0]
        q = demand(p, m)
        return BertrandOutcome(
            prices=(p, p),
            quantities=(q / 2.0, q / 2.0),
            profits=(0.0, 0.0),
            regime=BertrandRegime.BERTRAND_CURSE,
        )
    winner = 1 if p_lo[0] < p_lo[1] else 2
    loser = 3 - winner
    if ranges[winner - 1].p_hi <= p_lo[loser - 1]:
        # The loser cannot undercut any price in the winner's profitable range.
        return _monopoly_outcome(winner, d, BertrandRegime.UNCONTESTED_MONOPOLY)
    own = d.cost_of(winner)
    p_w = min(_monopoly_price(own, m), _undercut(p_lo[loser - 1], undercut))
    q_w = demand(p_w, m)
    pi_w = segment_profit(p_w, own, m, 1.0)
    prices = [0.0, 0.0]
    quantities = [0.0, 0.0]
    profits = [0.0, 0.0]
    prices[winner - 1] = p_w
    prices[loser - 1] = p_lo[loser - 1]
    quantities[winner - 1] = q_w
    profits[winner - 1] = pi_w
    return BertrandOutcome(
        prices=tuple(prices),
        quantities=tuple(quantities),
        profits=tuple(profits),
        regime=BertrandRegime.DRIVE_OUT,
    )


def _monopoly_outcome(
    winner: int, d: Duopoly, regime: BertrandRegime
) -> BertrandOutcome:
    own = d.cost_of(winner)
    p = _monopoly_price(own, d.market)
    q = demand(p, d.market)
    pi = segment_profit(p, own, d.market, 1.0)
    prices = [math.nan, math.nan]
    quantities = [0.0, 0.0]
    profits = [0.0, 0.0]
    prices[winner - 1] = p
    quantities[winner - 1] = q
    profits[winner - 1] = pi
    return BertrandOutcome(
        prices=tuple(prices),
        quantities=tuple(quantities),
        profits=tuple(profits),
        regime=regime,
    )


def bertrand_informed(
    d: Duopoly, f: InformedFraction, cfg: SolverConfig = DEFAULT_CONFIG
) -> BertrandOutcome:
    """Stable solution of the price game with an uninformed user fraction.

    The low-price firm captures the informed users plus half the uninformed;
    the high-price firm keeps its uninformed half. The construction is the
    subgame-perfect outcome of the two-stage game with the low-price firm
    moving first; it is not a Nash equilibrium for that firm.
    """
    m = d.market
    informed = f.informed
    if informed == 1.0:
        return bertrand_basic(d, cfg=cfg)
    if informed == 0.0:
        # No user compares prices: two captive monopolies over half the market.
        prices = (_monopoly_price(d.sp1, m), _monopoly_price(d.sp2, m))
        quantities = tuple(0.5 * demand(p, m) for p in prices)
        profits = (
            segment_profit(prices[0], d.sp1, m, 0.5),
            segment_profit(prices[1], d.sp2, m, 0.5),
        )
        return BertrandOutcome(
            prices=prices,
            quantities=quantities,
            profits=profits,
            regime=BertrandRegime.INFORMED_SPLIT,
            warnings=("degenerate: no informed users, both firms are captive monopolists",),
        )

    s_low = informed + f.uninformed / 2.0
    s_high = f.uninformed / 2.0
    warnings: list[str] = []
    r1 = zero_profit_prices(d.sp1, m, s_low, cfg)
    r2 = zero_profit_prices(d.sp2, m, s_low, cfg)
    if r1.empty and r2.empty:
        return BertrandOutcome(
            prices=(math.nan, math.nan),
            quantities=(0.0, 0.0),
            profits=(0.0, 0.0),
            regime=BertrandRegime.BOTH_OUT,
        )
    if r1.empty or r2.empty:
        winner = 1 if r2.empty else 2
        return _monopoly_outcome(winner, d, BertrandRegime.UNCONTESTED_MONOPOLY)
    tie_tol = _PRICE_TIE_REL_TOL * max(r1.p_lo, r2.p_lo)
    if abs(r1.p_lo - r2.p_lo) <= tie_tol:
        low = 1
        warnings.append("equal low-price entry thresholds: tie broken toward SP1")
    else:
        low = 1 if r1.p_lo < r2.p_lo else 2
    high = 3 - low
    c_low, c_high = d.cost_of(low), d.cost_of(high)

    p_high = _monopoly_price(c_high, m)
    pi_high = segment_profit(p_high, c_high, m, s_high)
    high_stays_out = pi_high < -PARTICIPATION_TOL
    if high_stays_out:
        # The captive segment cannot cover the fixed cost, so the high-price
        # firm serves nobody and its outside option is zero profit. The
        # low-price firm then only has to deny it a profitable undercut.
        warnings.append(
            "high-price firm cannot profit from its captive users and stays out"
        )
        pi_high = 0.0

    # Largest price at which undercutting would still tempt the high-price
    # firm no more than staying high (or out).
    def g(p: float) -> float:
        return segment_profit(p, c_high, m, s_low) - pi_high

    lo_bracket = p_high
    while g(lo_bracket) >= 0:
        lo_bracket *= 0.5
        if lo_bracket < 1e-300:
            raise StructureError("no indifference price below the high price")
    p_hat = find_root(g, lo_bracket, p_high, cfg)

    p_low = min(p_hat, _monopoly_price(c_low, m))
    prices = [0.0, 0.0]
    quantities = [0.0, 0.0]
    profits = [0.0, 0.0]
    prices[low - 1] = p_low
    prices[high - 1] = p_high
    quantities[low - 1] = s_low * demand(p_low, m)
    quantities[high - 1] = 0.0 if high_stays_out else s_high * demand(p_high, m)
    profits[low - 1] = segment_profit(p_low, c_low, m, s_low)
    profits[high - 1] = 0.0 if high_stays_out else pi_high
    return BertrandOutcome(
        prices=tuple(prices),
        quantities=tuple(quantities),
        profits=tuple(profits),
        regime=BertrandRegime.INFORMED_SPLIT,
        warnings=tuple(warnings),
    )


def bertrand_shared_cost(
    d: Duopoly, f: InformedFraction, cfg: SolverConfig = DEFAULT_CONFIG
) -> BertrandOutcome:
    """Price competition after pooling costs: both firms get the componentwise
    minimum parameters but must still compete on price.

    With every user informed both firms price at the pooled unit cost; the
    fixed cost is then unrecoverable and profits go negative, which is
    reported as-is with a warning.
    """
    pooled = coop_cost_params(d)
    shared = Duopoly(sp1=pooled, sp2=pooled, market=d.market)
    if f.informed == 1.0:
        p = pooled.beta
        if p <= 0:
            raise DomainError("shared-cost curse price undefined for beta == 0")
        q = demand(p, d.market)
        pi = segment_profit(p, pooled, d.market, 0.5)
        return BertrandOutcome(
            prices=(p, p),
            quantities=(q / 2.0, q / 2.0),
            profits=(pi, pi),
            regime=BertrandRegime.BERTRAND_CURSE,
            warnings=(
                "shared-cost curse: price equals unit cost, fixed cost unrecovered "
                "(negative profits)",
            ),
        )
    return bertrand_informed(shared, f, cfg)
