import pytest

from netshare import ConfigError, PRESETS, parse_scenario, serialize_scenario
from netshare.config import expand_sweep, sweep_grid

GOOD = """\
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
run = monopoly, cournot
undercut = 0.01
shapley = nc
"""


def test_parse_minimal():
    spec = parse_scenario(GOOD)
    assert spec.market.q_unit == 1000.0
    assert spec.market.epsilon == 1.25
    assert spec.sp1.beta == 2.5
    assert spec.analyses == ("monopoly", "cournot")
    assert spec.shapley == "nc"
    assert spec.informed is None


def test_comments_and_blank_lines():
    text = GOOD.replace("alpha = 50", "alpha = 50  ; fixed cost\n# a comment")
    assert parse_scenario(text).sp1.alpha == 50.0


def test_round_trip_all_presets():
    for name, spec in PRESETS.items():
        assert parse_scenario(serialize_scenario(spec)) == spec


def test_round_trip_with_everything():
    text = GOOD + """
[solver]
rel_tol = 1e-9
abs_tol = 1e-13
max_iter = 150

[regions]
sp1 = W
sp2 = W E
n_w = 0.25
n_e = 0.25
n_we = 0.5
alpha_rule = full

[sweep.1]
param = sp1.alpha
lo = 25
hi = 75
steps = 3

[sweep.2]
param = market.epsilon
lo = 1.1
hi = 2.0
steps = 4
"""
    spec = parse_scenario(text)
    assert parse_scenario(serialize_scenario(spec)) == spec


@pytest.mark.parametrize(
    "mutation, needle",
    [
        (("beta = 2.5", "beta = -1"), "beta"),
        (("epsilon = 1.25", "epsilon = 0.9"), "epsilon"),
        (("alpha = 50", "alpha = fifty"), "alpha"),
        (("run = monopoly, cournot", "run = teleportation"), "teleportation"),
        (("shapley = nc", "shapley = banzhaf"), "shapley"),
        (("undercut = 0.01", "undercut = -0.01"), "undercut"),
        (("[sp2]", "[sp3]"), "sp3"),
        (("beta = 2.5", "betta = 2.5"), "betta"),
    ],
)
def test_invalid_documents_name_the_problem(mutation, needle):
    old, new = mutation
    with pytest.raises(ConfigError) as exc:
        parse_scenario(GOOD.replace(old, new))
    assert needle in str(exc.value)


def test_error_carries_line_number():
    with pytest.raises(ConfigError) as exc:
        parse_scenario(GOOD.replace("beta = 2.5", "betta = 2.5"))
    assert exc.value.line == 7
    assert "line 7" in str(exc.value)


def test_missing_section():
    text = GOOD.replace("[sp2]\nalpha = 100\nbeta = 2\n", "")
    with pytest.raises(ConfigError) as exc:
        parse_scenario(text)
    assert "sp2" in str(exc.value)


def test_duplicate_key_rejected():
    with pytest.raises(ConfigError):
        parse_scenario(GOOD.replace("alpha = 50", "alpha = 50\nalpha = 60"))


def test_assignment_outside_section():
    with pytest.raises(ConfigError):
        parse_scenario("q = 1000\n" + GOOD)


def test_informed_bounds():
    with pytest.raises(ConfigError):
        parse_scenario(GOOD + "informed = 1.5\n")
    assert parse_scenario(GOOD + "informed = 0.5\n").informed == 0.5


def test_sweep_expansion_single_axis():
    text = GOOD + "\n[sweep.1]\nparam = sp1.alpha\nlo = 25\nhi = 75\nsteps = 3\n"
    points = expand_sweep(parse_scenario(text))
    assert [p.sp1.alpha for p in points] == [25.0, 50.0, 75.0]
    assert all(p.sweeps == () for p in points)


def test_sweep_expansion_row_major():
    text = (
        GOOD
        + "\n[sweep.1]\nparam = sp1.alpha\nlo = 0\nhi = 1\nsteps = 2\n"
        + "\n[sweep.2]\nparam = sp2.alpha\nlo = 10\nhi = 12\nsteps = 3\n"
    )
    points = expand_sweep(parse_scenario(text))
    combos = [(p.sp1.alpha, p.sp2.alpha) for p in points]
    assert combos == [
        (0.0, 10.0), (0.0, 11.0), (0.0, 12.0),
        (1.0, 10.0), (1.0, 11.0), (1.0, 12.0),
    ]


def test_sweep_no_axes_identity():
    spec = parse_scenario(GOOD)
    assert expand_sweep(spec) == [spec]
    assert sweep_grid(spec) == [({}, spec)]


def test_sweep_cap():
    text = GOOD + "\n[sweep.1]\nparam = sp1.alpha\nlo = 0\nhi = 1\nsteps = 2000000\n"
    with pytest.raises(ConfigError):
        expand_sweep(parse_scenario(text))


def test_sweep_unknown_param():
    text = GOOD + "\n[sweep.1]\nparam = sp1.gamma\nlo = 0\nhi = 1\nsteps = 2\n"
    with pytest.raises(ConfigError) as exc:
        parse_scenario(text)
    assert "gamma" in str(exc.value)


def test_presets_present():
    assert set(PRESETS) == {"paper", "paper-regions-1", "paper-regions-2"}
    base = PRESETS["paper"]
    assert (base.sp1.alpha, base.sp1.beta) == (50.0, 2.5)
    assert (base.sp2.alpha, base.sp2.beta) == (100.0, 2.0)
    assert base.market.q_unit == 1000.0
