"""Cooperative outcomes: pooled cost, monopoly-priced and regulator-capped
sharing, and the Shapley profit splits with and without externalities.
"""

from dataclasses import dataclass
from enum import Enum

from .cournot import Duopoly, nash_cournot
from .errors import ExternalityBasisError, NoCapError
from .market import CostParams, cost, demand, monopoly_solution
from .solver import DEFAULT_CONFIG, SolverConfig


class ShapleyBasis(str, Enum):
    """Stand-alone value used for a firm entering the coalition first.

    MONOPOLY ("without externalities"): the lone entrant prices as a
    monopolist. NASH_COURNOT ("with externalities"): the lone entrant still
    competes against the other firm.
    """

    MONOPOLY = "mon"
    NASH_COURNOT = "nc"


@dataclass(frozen=True)
class SharingOutcome:
    price: float
    quantity: float
    combined_profit: float
    split: tuple[float, float]
    basis: ShapleyBasis
    regulated: bool
    warnings: tuple[str, ...] = ()


def coop_cost_params(d: Duopoly) -> CostParams:
    """Componentwise minimum of the two cost structures."""
    return CostParams(
        alpha=min(d.sp1.alpha, d.sp2.alpha), beta=min(d.sp1.beta, d.sp2.beta)
    )


def _warn_negative(split: tuple[float, float]) -> tuple[str, ...]:
    if min(split) < 0:
        return ("negative Shapley share: one stand-alone value dwarfs the coalition",)
    return ()


def sharing_monopoly(
    d: Duopoly,
    basis: ShapleyBasis = ShapleyBasis.MONOPOLY,
    cfg: SolverConfig = DEFAULT_CONFIG,
) -> SharingOutcome:
    """Combined entity at pooled cost with unconstrained monopoly pricing."""
    pooled = coop_cost_params(d)
    combined = monopoly_solution(pooled, d.market)
    if not combined.participation:
        # Even pooled, the market cannot cover the fixed cost; nobody enters.
        return SharingOutcome(
            price=combined.price,
            quantity=0.0,
            combined_profit=0.0,
            split=(0.0, 0.0),
            basis=basis,
            regulated=False,
            warnings=("combined entity stays out of the market",),
        )
    pi = combined.profit
    if basis is ShapleyBasis.MONOPOLY:
        v1 = monopoly_solution(d.sp1, d.market).profit
        v2 = monopoly_solution(d.sp2, d.market).profit
    else:
        sol = nash_cournot(d, cfg)
        if not sol.viable:
            raise ExternalityBasisError(
                "externality basis needs a viable competitive equilibrium; "
                f"violated: {sol.violated_conditions}"
            )
        v1, v2 = sol.profit1, sol.profit2
    split = (0.5 * (v1 + pi - v2), 0.5 * (v2 + pi - v1))
    return SharingOutcome(
        price=combined.price,
        quantity=combined.quantity,
        combined_profit=pi,
        split=split,
        basis=basis,
        regulated=False,
        warnings=_warn_negative(split),
    )


def sharing_regulated(
    d: Duopoly,
    basis: ShapleyBasis = ShapleyBasis.MONOPOLY,
    cfg: SolverConfig = DEFAULT_CONFIG,
) -> SharingOutcome:
    """Combined entity at pooled cost with the price capped at the competitive one.

    The cap is copied bit-for-bit from the Nash-Cournot price, never recomputed.
    """
    sol = nash_cournot(d, cfg)
    if not sol.viable:
        raise NoCapError(
            "regulated price cap undefined: competitive equilibrium non-viable "
            f"({sol.violated_conditions})"
        )
    pooled = coop_cost_params(d)
    p = sol.price
    q = demand(p, d.market)
    pi = p * q - cost(q, pooled)
    a1, a2, amin = d.sp1.alpha, d.sp2.alpha, pooled.alpha
    b1, b2, bmin = d.sp1.beta, d.sp2.beta, pooled.beta
    if basis is ShapleyBasis.MONOPOLY:
        # Price and demand are capped for every coalition size, so coalitions
        # differ only in cost.
        split = (
            0.5 * (q * p - (a1 + amin - a2) - (b1 + bmin - b2) * q),
            0.5 * (q * p - (a2 + amin - a1) - (b2 + bmin - b1) * q),
        )
    else:
        q1, q2 = sol.q1_star, sol.q2_star
        split = (
            0.5 * ((q1 + q - q2) * p - (a1 + amin - a2) - (b1 * q1 + bmin * q - b2 * q2)),
            0.5 * ((q2 + q - q1) * p - (a2 + amin - a1) - (b2 * q2 + bmin * q - b1 * q1)),
        )
    return SharingOutcome(
        price=p,
        quantity=q,
        combined_profit=pi,
        split=split,
        basis=basis,
        regulated=True,
        warnings=_warn_negative(split),
    )
