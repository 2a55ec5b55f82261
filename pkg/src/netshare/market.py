"""Demand curve, cost function, profit evaluation and the single-firm optimum.

Units throughout the package: quantities in PB per month, prices in $M per
PB, money in $M. Parameter files carry no units.
"""

from dataclasses import dataclass

from .errors import DegenerateMonopolyError, DomainError

# Profit comparisons against zero (participation decisions) use this slack so
# exact break-even does not flap under floating point; break-even participates.
PARTICIPATION_TOL = 1e-9


@dataclass(frozen=True)
class MarketParams:
    """Constant-elasticity market: demand at price p is q_unit * p**-epsilon.

    Attributes:
        q_unit: demand at unit price (PB per month).
        epsilon: price elasticity; must exceed 1 or the optimal price is unbounded.
    """

    q_unit: float
    epsilon: float

    def __post_init__(self):
        if not self.q_unit > 0:
            raise DomainError(f"q_unit must be positive, got {self.q_unit}")
        if not self.epsilon > 1:
            raise DomainError(f"epsilon must exceed 1, got {self.epsilon}")


@dataclass(frozen=True)
class CostParams:
    """Fixed-plus-linear cost: alpha + beta*q for q > 0, zero at q == 0.

    The fixed entry cost alpha is what makes the cost non-convex. alpha == 0
    is accepted (it disables drive-out dynamics but every formula is defined).
    """

    alpha: float
    beta: float

    def __post_init__(self):
        if self.alpha < 0:
            raise DomainError(f"alpha must be non-negative, got {self.alpha}")
        if self.beta < 0:
            raise DomainError(f"beta must be non-negative, got {self.beta}")


@dataclass(frozen=True)
class Outcome:
    """A solved (price, quantity, profit) triple for one firm.

    participation is False when the firm stays out (quantity and profit zero).
    """

    price: float
    quantity: float
    profit: float
    participation: bool = True


def demand(p: float, m: MarketParams) -> float:
    """Quantity demanded at price p: q_unit * p**-epsilon."""
    if not p > 0:
        raise DomainError(f"price must be positive, got {p}")
    return m.q_unit * p ** -m.epsilon


def inverse_demand(q_total: float, m: MarketParams) -> float:
    """Market-clearing price at total quantity q_total."""
    if not q_total > 0:
        raise DomainError(f"total quantity must be positive, got {q_total}")
    return (q_total / m.q_unit) ** (-1.0 / m.epsilon)


def cost(q: float, c: CostParams) -> float:
    """Total cost of serving quantity q; zero when the firm serves nothing."""
    if q < 0:
        raise DomainError(f"quantity must be non-negative, got {q}")
    if q == 0:
        return 0.0
    return c.alpha + c.beta * q


def profit(q_own: float, q_other: float, c: CostParams, m: MarketParams) -> float:
    """Quantity-game profit at the common price set by total supply.

    Zero quantity earns exactly zero (the q == 0 cost branch). May be negative.
    """
    if q_own < 0 or q_other < 0:
        raise DomainError("quantities must be non-negative")
    if q_own == 0:
        return 0.0
    p = inverse_demand(q_own + q_other, m)
    return p * q_own - cost(q_own, c)


def monopoly_solution(c: CostParams, m: MarketParams) -> Outcome:
    """Optimal single-firm outcome: price epsilon*beta/(epsilon - 1).

    Returns the stay-out outcome when even the optimum loses money.
    """
    if c.beta == 0:
        raise DegenerateMonopolyError(
            "monopoly price formula degenerates at beta == 0"
        )
    p = m.epsilon * c.beta / (m.epsilon - 1.0)
    q = demand(p, m)
    pi = p * q - cost(q, c)
    if pi < -PARTICIPATION_TOL:
        return Outcome(price=p, quantity=0.0, profit=0.0, participation=False)
    return Outcome(price=p, quantity=q, profit=pi)
