import random

import pytest

from netshare import CostParams, Duopoly, MarketParams, nash_cournot

MARKET = MarketParams(q_unit=1000.0, epsilon=1.25)
SP1 = CostParams(alpha=50.0, beta=2.5)
SP2 = CostParams(alpha=100.0, beta=2.0)


@pytest.fixture
def market():
    return MARKET


@pytest.fixture
def duopoly():
    return Duopoly(sp1=SP1, sp2=SP2, market=MARKET)


def random_viable_duopolies(n=10, seed=20240817):
    """Seeded random parameter draws with a viable competitive equilibrium."""
    rng = random.Random(seed)
    out = []
    attempts = 0
    while len(out) < n:
        attempts += 1
        assert attempts < 10_000, "could not find enough viable draws"
        m = MarketParams(
            q_unit=rng.uniform(100.0, 5000.0), epsilon=rng.uniform(1.1, 3.0)
        )
        beta1 = rng.uniform(0.5, 5.0)
        beta2 = beta1 * rng.uniform(0.7, 1.4)
        d = Duopoly(
            sp1=CostParams(alpha=rng.uniform(0.0, 30.0), beta=beta1),
            sp2=CostParams(alpha=rng.uniform(0.0, 30.0), beta=beta2),
            market=m,
        )
        try:
            sol = nash_cournot(d)
        except Exception:
            continue
        if sol.viable:
            out.append((d, sol))
    return out
