import math

import numpy as np
import pytest

from netshare import (
    CostParams,
    DomainError,
    Duopoly,
    MarketParams,
    RegionScenario,
    WrongScenarioError,
    demand,
    nash_cournot,
    regional_competition,
    regional_cooperation,
    regional_standalone,
)

from conftest import MARKET, SP1, SP2

THIRD = 1.0 / 3.0


def _scenario(fp1, fp2, **kw):
    kw.setdefault("n_w", THIRD)
    kw.setdefault("n_e", THIRD)
    kw.setdefault("n_we", 1.0 - kw["n_w"] - kw["n_e"])
    return RegionScenario(footprint1=frozenset(fp1), footprint2=frozenset(fp2), **kw)


@pytest.fixture
def disjoint():
    return _scenario({"W"}, {"E"})


@pytest.fixture
def asymmetric():
    return _scenario({"W"}, {"W", "E"})


def test_scenario_validation():
    with pytest.raises(DomainError):
        _scenario(set(), {"E"})
    with pytest.raises(DomainError):
        _scenario({"W"}, {"E", "X"})
    with pytest.raises(DomainError):
        _scenario({"W"}, {"E"}, n_w=0.5, n_e=0.6, n_we=0.2)
    with pytest.raises(DomainError):
        _scenario({"W"}, {"E"}, alpha_rule="bogus")


def test_standalone_disjoint(disjoint, duopoly):
    out = regional_standalone(disjoint, duopoly)
    assert out.profit1 == pytest.approx(116.82122391853302, rel=1e-10)
    assert out.profit2 == pytest.approx(99.95768671742641, rel=1e-10)
    # roaming users are unreachable for a single regional network
    assert not out.classes["WE"].served
    assert out.warnings
    # each firm prices its own region as a monopolist over a third of demand
    assert out.classes["W"].price == pytest.approx(12.5, rel=1e-12)
    assert out.classes["E"].price == pytest.approx(10.0, rel=1e-12)
    assert out.classes["W"].quantity2 == 0.0
    assert out.classes["E"].quantity1 == 0.0


def test_standalone_all_roaming_unserved(duopoly):
    # when every user roams, no single-region firm can serve anyone
    s = _scenario({"W"}, {"E"}, n_w=0.0, n_e=0.0, n_we=1.0)
    out = regional_standalone(s, duopoly)
    assert out.profit1 == 0.0 and out.profit2 == 0.0
    assert not out.classes["WE"].served


def test_standalone_rejects_overlap(asymmetric, duopoly):
    with pytest.raises(WrongScenarioError):
        regional_standalone(asymmetric, duopoly)


def test_cooperation_disjoint(disjoint, duopoly):
    out = regional_cooperation(disjoint, duopoly)
    assert out.combined_profit == pytest.approx(361.81933803345066, rel=1e-10)
    assert out.split[0] == pytest.approx(189.34143761727864, rel=1e-10)
    assert out.split[1] == pytest.approx(172.47790041617205, rel=1e-10)
    assert sum(out.split) == pytest.approx(out.combined_profit, abs=1e-9)
    # one nationwide price for every class
    for c in out.classes.values():
        assert c.price == pytest.approx(11.25, rel=1e-12)
    # roaming traffic is carried half by each builder
    we = out.classes["WE"]
    assert we.quantity1 == pytest.approx(we.quantity2)


def test_cooperation_price_is_grid_optimal(disjoint, duopoly):
    # scanning the single coalition price confirms 11.25 maximizes profit
    out = regional_cooperation(disjoint, duopoly)
    beta_eff = 0.5 * 2.5 + 0.5 * 2.0
    prices = np.linspace(2.0, 40.0, 200_000)
    q = MARKET.q_unit * prices ** -MARKET.epsilon
    pi = prices * q - beta_eff * q  # fixed cost does not move the argmax
    best = prices[int(np.argmax(pi))]
    assert 11.25 == pytest.approx(best, abs=2 * (prices[1] - prices[0]))
    assert out.classes["W"].price == pytest.approx(11.25, rel=1e-12)


def test_cooperation_asymmetric_same_build(asymmetric, duopoly):
    # SP1 still builds W and SP2 builds E, so the coalition outcome matches
    # the disjoint scenario; only the stand-alone values (and the split) move
    out = regional_cooperation(asymmetric, duopoly)
    assert out.combined_profit == pytest.approx(361.81933803345066, rel=1e-10)
    assert out.split[0] == pytest.approx(64.38375089985223, rel=1e-10)
    assert out.split[1] == pytest.approx(297.4355871335984, rel=1e-10)


def test_cooperation_needs_full_coverage(duopoly):
    with pytest.raises(WrongScenarioError):
        regional_cooperation(_scenario({"W"}, {"W"}), duopoly)


def test_competition_cournot(asymmetric, duopoly):
    out = regional_competition(asymmetric, duopoly, "cournot")
    assert out.profit1 == pytest.approx(8.268899255841163, rel=1e-9)
    assert out.profit2 == pytest.approx(265.12241597630145, rel=1e-9)
    # captive classes pay the nationwide firm's monopoly price
    assert out.classes["E"].price == pytest.approx(10.0, rel=1e-12)
    assert out.classes["WE"].price == pytest.approx(10.0, rel=1e-12)
    # the contested region clears at the competitive price of the one-region
    # quantity game with a third of the demand and per-region fixed costs
    assert out.classes["W"].price == pytest.approx(3.75, rel=1e-9)
    sub = Duopoly(
        sp1=CostParams(alpha=SP1.alpha / 2.0, beta=SP1.beta),
        sp2=CostParams(alpha=SP2.alpha, beta=SP2.beta),
        market=MarketParams(q_unit=MARKET.q_unit * THIRD, epsilon=MARKET.epsilon),
    )
    sol = nash_cournot(sub)
    assert out.classes["W"].quantity1 == pytest.approx(sol.q1_star, rel=1e-6)
    assert out.classes["W"].quantity2 == pytest.approx(sol.q2_star, rel=1e-6)
    assert out.classes["W"].quantity1 == pytest.approx(26.62, abs=0.01)
    assert out.classes["W"].quantity2 == pytest.approx(37.26, abs=0.01)


def test_competition_bertrand(asymmetric, duopoly):
    out = regional_competition(asymmetric, duopoly, "bertrand")
    assert out.profit1 == 0.0
    assert out.profit2 == pytest.approx(271.6018932875983, rel=1e-9)
    # the wide firm prices W exactly at the narrow firm's entry threshold
    p_w = out.classes["W"].price
    alpha_eff = SP1.alpha / 2.0
    q = THIRD * demand(p_w, MARKET)
    assert p_w * q - (alpha_eff + SP1.beta * q) == pytest.approx(0.0, abs=1e-6)
    assert out.classes["W"].quantity1 == 0.0


def test_competition_scenario_shape_checks(duopoly, disjoint):
    with pytest.raises(WrongScenarioError):
        regional_competition(disjoint, duopoly, "cournot")
    with pytest.raises(WrongScenarioError):
        regional_competition(_scenario({"W"}, {"W"}), duopoly, "cournot")
    with pytest.raises(DomainError):
        regional_competition(
            _scenario({"W"}, {"W", "E"}), duopoly, "stackelberg"
        )


def test_alpha_rule_full(duopoly):
    # charging the whole fixed cost per firm lowers stand-alone profits by
    # exactly the withheld half
    s_half = _scenario({"W"}, {"E"})
    s_full = _scenario({"W"}, {"E"}, alpha_rule="full")
    half = regional_standalone(s_half, duopoly)
    full = regional_standalone(s_full, duopoly)
    assert half.profit1 - full.profit1 == pytest.approx(SP1.alpha / 2.0, rel=1e-9)
    assert half.profit2 - full.profit2 == pytest.approx(SP2.alpha / 2.0, rel=1e-9)


def test_empty_contested_region(duopoly):
    s = _scenario({"W"}, {"W", "E"}, n_w=0.0, n_e=0.5, n_we=0.5)
    out = regional_competition(s, duopoly, "cournot")
    assert out.warnings
    assert not out.classes["W"].served
    assert out.profit1 == 0.0
    assert out.profit2 > 0
