import json

from click.testing import CliRunner

from netshare.cli import main

CONFIG = """\
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
run = cournot
"""


def _run(*args):
    return CliRunner().invoke(main, list(args))


def test_solve_preset_human():
    res = _run("solve", "--preset", "paper", "--analysis", "cournot")
    assert res.exit_code == 0
    assert "q1_star: 79.85" in res.output
    assert "q2_star: 111.78" in res.output
    assert "price: 3.75" in res.output


def test_solve_machine_output_is_json():
    res = _run("solve", "--preset", "paper", "--analysis", "cournot", "--format", "machine")
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["results"]["cournot"]["viable"] is True
    assert abs(doc["results"]["cournot"]["price"] - 3.75) < 1e-9


def test_solve_payoff_table_has_all_cells():
    res = _run("solve", "--preset", "paper", "--analysis", "payoff-table", "--format", "machine")
    doc = json.loads(res.output)
    cells = doc["results"]["payoff-table"]["cells"]
    strategies = ("nash-cournot", "aggression", "submission")
    for s1 in strategies:
        for s2 in strategies:
            assert f"{s1}|{s2}" in cells
    assert "sharing|sharing" in cells
    assert "regulated-sharing|regulated-sharing" in cells
    assert cells["nash-cournot|submission"]["non_viable_outcome"] is True


def test_solve_config_file(tmp_path):
    cfg = tmp_path / "scenario.ini"
    cfg.write_text(CONFIG)
    res = _run("solve", "--config", str(cfg), "--format", "machine")
    assert res.exit_code == 0
    assert json.loads(res.output)["results"]["cournot"]["t"] == 1.4


def test_solve_invalid_config_nonzero_exit(tmp_path):
    cfg = tmp_path / "bad.ini"
    cfg.write_text(CONFIG.replace("beta = 2.5", "betta = 2.5"))
    res = _run("solve", "--config", str(cfg))
    assert res.exit_code != 0
    assert "betta" in res.output


def test_solve_partial_failure_still_emits(tmp_path):
    # bertrand-informed without an informed fraction fails; cournot still runs
    res = _run(
        "solve", "--preset", "paper", "--analysis", "cournot,bertrand-informed",
        "--format", "machine",
    )
    assert res.exit_code == 1
    doc = json.loads(res.output.splitlines()[0] and res.output[: res.output.rindex("}") + 1])
    assert "error" in doc["results"]["bertrand-informed"]
    assert doc["results"]["cournot"]["viable"] is True


def test_solve_requires_scenario_source():
    assert _run("solve").exit_code != 0
    assert _run("solve", "--preset", "paper", "--config", "x.ini").exit_code != 0


def test_determinism_byte_identical(tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"run{i}.json"
        res = _run("solve", "--preset", "paper", "--format", "machine", "--out", str(path))
        assert res.exit_code == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_curves_best_response_annotated():
    res = _run("curves", "--preset", "paper", "--which", "best-response", "--samples", "10")
    assert res.exit_code == 0
    lines = res.output.splitlines()
    assert lines[0].startswith("# ne: q1=79.845")
    assert lines[1] == "q_other,br_sp1,br_sp2"
    assert len([l for l in lines if l and not l.startswith("#")]) == 11


def test_curves_drive_out_annotation():
    res = _run("curves", "--preset", "paper", "--which", "profit-vs-q1", "--samples", "5")
    assert res.exit_code == 0
    assert any(l.startswith("# drive-out: q1=153.39") for l in res.output.splitlines())


def test_curves_minimal_samples():
    res = _run("curves", "--preset", "paper", "--which", "profit-vs-price", "--samples", "2")
    rows = [l for l in res.output.splitlines() if l and not l.startswith("#")]
    assert len(rows) == 3  # header plus two samples
    assert _run("curves", "--preset", "paper", "--samples", "1").exit_code != 0


def test_curves_plot_writes_png(tmp_path):
    out = tmp_path / "br.csv"
    res = _run(
        "curves", "--preset", "paper", "--which", "best-response",
        "--samples", "20", "--out", str(out), "--plot",
    )
    assert res.exit_code == 0
    png = tmp_path / "br.png"
    assert out.exists()
    assert png.exists()
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_sweep_rows_and_error_column(tmp_path):
    cfg = tmp_path / "sweep.ini"
    cfg.write_text(
        CONFIG
        + "\n[sweep.1]\nparam = sp1.alpha\nlo = 25\nhi = 5000\nsteps = 3\n"
    )
    res = _run("sweep", "--config", str(cfg))
    assert res.exit_code == 0
    lines = res.output.strip().splitlines()
    header = lines[0].split(",")
    assert header[0] == "sp1.alpha"
    assert header[-1] == "error"
    assert len(lines) == 4
    # the high-alpha row crosses the viability boundary
    viable_col = header.index("cournot.viable")
    flags = [row.split(",")[viable_col] for row in lines[1:]]
    assert flags[0] == "true" and flags[-1] == "false"
    assert sorted(flags, reverse=True) == flags  # viability flips once, monotonically


def test_sweep_without_axes_single_row():
    res = _run("sweep", "--preset", "paper", "--analysis", "cournot")
    lines = res.output.strip().splitlines()
    assert len(lines) == 2


def test_presets_listing_and_show():
    res = _run("presets")
    assert res.exit_code == 0
    for name in ("paper", "paper-regions-1", "paper-regions-2"):
        assert name in res.output
    shown = _run("presets", "--show", "paper")
    assert shown.exit_code == 0
    assert "[market]" in shown.output
    assert _run("presets", "--show", "nope").exit_code != 0


def test_multiregion_presets_solve():
    res = _run("solve", "--preset", "paper-regions-2", "--format", "machine")
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert abs(doc["results"]["multiregion-cournot"]["profit1"] - 8.27) < 0.05
    assert abs(doc["results"]["multiregion-bertrand"]["profit2"] - 271.6) < 0.1
