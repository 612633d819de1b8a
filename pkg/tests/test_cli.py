import json
from fractions import Fraction

import pytest

from ndcheck import Scenario, save_scenario, save_trace
from ndcheck.cli import main
from ndcheck.generators import make_ordering_corpus

F = Fraction

RADIO = """\
[params]
v = 300000000
v_adv = 300000000
nd_range = 100
delta_relay = 1/25000000
msg_duration_default = 1/1000000

[node A]
x = 0
y = 0
type = correct

[node B]
x = 100
y = 0
type = correct

[link A <-> B]
up = 0:inf

[protocol]
name = pt

[adversary]
name = relay

[run]
horizon = 10
"""


@pytest.fixture
def radio_scenario(tmp_path):
    path = tmp_path / "radio.scn"
    path.write_text(RADIO)
    return path


def run(args):
    return main([str(a) for a in args])


def test_attack_then_check_exit_codes(tmp_path, radio_scenario, capsys):
    out = tmp_path / "out"
    assert run(["attack", radio_scenario, "--out-dir", out]) == 0
    capsys.readouterr()
    assert run(["check", out / "honest.scn", out / "base.trc"]) == 0
    assert run(["check", out / "attack.scn", out / "relay.trc"]) == 3
    # trace/scenario mixups are feasibility violations
    assert run(["check", out / "attack.scn", out / "base.trc"]) == 2


def test_attack_writes_summary_and_files(tmp_path, radio_scenario, capsys):
    out = tmp_path / "out"
    run(["--format", "structured", "attack", radio_scenario, "--out-dir", out])
    capsys.readouterr()
    for name in ("honest.scn", "attack.scn", "base.trc", "relay.trc", "summary.json"):
        assert (out / name).exists()
    summary = json.loads((out / "summary.json").read_text())
    assert summary["feasible"] is True
    assert summary["false_neighbors"] == 1
    assert summary["checks"]["views_equal"] is True
    assert summary["deltas"]["relay_gap"] == "1/25000000"


def test_attack_infeasible_exit_4(tmp_path, capsys):
    text = RADIO.replace("delta_relay = 1/25000000", "delta_relay = 1/3000000")
    scn = tmp_path / "slow.scn"
    scn.write_text(text)
    out = tmp_path / "out"
    assert run(["attack", scn, "--out-dir", out]) == 4
    captured = capsys.readouterr().out
    assert "feasible: False" in captured
    assert (out / "summary.txt").exists()


def test_attack_pgt_exact_infeasible(tmp_path, capsys):
    text = RADIO.replace("name = pt", "name = pgt").replace(
        "delta_relay = 1/25000000", "delta_relay = 1/1000000000"
    )
    scn = tmp_path / "pgt.scn"
    scn.write_text(text)
    assert run(["attack", scn, "--out-dir", tmp_path / "out"]) == 4


def test_malformed_scenario_exit_1(tmp_path, capsys):
    bad = tmp_path / "bad.scn"
    bad.write_text(RADIO.replace("delta_relay = 1/25000000", "delta_relay = 3/0"))
    assert run(["check", bad, bad]) == 1
    assert "delta_relay" in capsys.readouterr().err


def test_witness_flow(tmp_path, radio_scenario, capsys):
    out = tmp_path / "wit"
    assert run(["witness", radio_scenario, "--distance", "100", "--out-dir", out]) == 0
    capsys.readouterr()
    assert run(["check", out / "witness.scn", out / "witness.trc"]) == 0
    assert run(["witness", radio_scenario, "--distance", "200", "--out-dir", out]) == 4
    assert run(["witness", radio_scenario, "--distance", "50", "--out-dir", out]) == 0


def test_sweep_rows_and_flip(tmp_path, radio_scenario):
    table = tmp_path / "table.tsv"
    assert (
        run(
            [
                "sweep",
                radio_scenario,
                "--vary",
                "delta_relay",
                "--from",
                "0",
                "--to",
                "4/10000000",
                "--step",
                "1/100000000",
                "--out",
                table,
            ]
        )
        == 0
    )
    lines = table.read_text().splitlines()
    assert len(lines) == 42  # header + 41 rows for 0..400ns by 10ns
    header = lines[0].split("\t")
    attack_col = header.index("single_relay_attack")
    value_col = header.index("value")
    feasible_values = [
        row.split("\t")[value_col]
        for row in lines[1:]
        if row.split("\t")[attack_col] == "yes"
    ]
    # threshold is 100m/c = 1/3 us; the last feasible row is 330ns, 340ns flips
    assert feasible_values[-1] == "33/100000000"
    assert len(feasible_values) == 34


def test_sweep_rejects_reversed_range(tmp_path, radio_scenario, capsys):
    assert (
        run(
            [
                "sweep",
                radio_scenario,
                "--from",
                "2",
                "--to",
                "1",
                "--step",
                "1",
            ]
        )
        == 1
    )


def test_sweep_single_point(tmp_path, radio_scenario, capsys):
    assert (
        run(["sweep", radio_scenario, "--from", "0", "--to", "0", "--step", "1"]) == 0
    )
    out = capsys.readouterr().out
    assert len(out.splitlines()) == 2


def test_order_inclusion_and_counterexample(tmp_path, unit_params, capsys):
    corpus_dir = tmp_path / "corpus"
    corpus_dir.mkdir()
    from ndcheck import AdversaryModel

    entries = make_ordering_corpus(seed=21, size=8, params=unit_params)
    for index, (trace, setting, tag) in enumerate(entries):
        scenario = Scenario(
            unit_params,
            setting,
            "pt",
            AdversaryModel("relay", unit_params.delta_relay),
            None,
            F(100),
        )
        save_scenario(corpus_dir / f"{index:03d}-{tag}.scn", scenario)
        save_trace(corpus_dir / f"{index:03d}-{tag}.trc", trace)

    assert (
        run(["order", corpus_dir, "--weaker", "relay-local", "--stronger", "relay"]) == 0
    )
    assert run(["order", corpus_dir, "--weaker", "relay", "--stronger", "dy-t"]) == 0
    assert (
        run(
            [
                "order",
                corpus_dir,
                "--weaker",
                "relay-bcast",
                "--stronger",
                "relay",
                "--rename",
            ]
        )
        == 0
    )
    capsys.readouterr()
    assert (
        run(["order", corpus_dir, "--weaker", "dy-t", "--stronger", "relay-local"]) == 2
    )
    out = capsys.readouterr().out
    assert "authored" in out


def test_order_missing_trace_exit_1(tmp_path, radio_scenario, capsys):
    corpus_dir = tmp_path / "corpus"
    corpus_dir.mkdir()
    (corpus_dir / "lonely.scn").write_text(RADIO)
    assert (
        run(["order", corpus_dir, "--weaker", "relay", "--stronger", "dy-t"]) == 1
    )


def test_outputs_byte_identical_across_runs(tmp_path, radio_scenario, capsys):
    out1, out2 = tmp_path / "o1", tmp_path / "o2"
    run(["--format", "structured", "attack", radio_scenario, "--out-dir", out1])
    run(["--format", "structured", "attack", radio_scenario, "--out-dir", out2])
    capsys.readouterr()
    for name in ("honest.scn", "attack.scn", "base.trc", "relay.trc", "summary.json"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


def test_check_report_to_file(tmp_path, radio_scenario, capsys):
    out = tmp_path / "wit"
    run(["witness", radio_scenario, "--distance", "80", "--out-dir", out])
    capsys.readouterr()
    report = tmp_path / "report.json"
    assert (
        run(
            [
                "--format",
                "structured",
                "--out",
                report,
                "check",
                out / "witness.scn",
                out / "witness.trc",
            ]
        )
        == 0
    )
    data = json.loads(report.read_text())
    assert data["result"] == "ok"
    assert data["setting_feasible"]["ok"] is True


def test_approx_mode_scenario_with_irrational_geometry(tmp_path, capsys):
    text = RADIO.replace("x = 100\ny = 0", "x = 70\ny = 70").replace(
        "name = pt", "name = naive"
    )
    scn = tmp_path / "diag.scn"
    scn.write_text(text)
    trc = tmp_path / "diag.trc"
    # arrival computed at float precision for the sqrt(9800) meter diagonal
    arrival = (70 * 2**0.5) / 300000000
    trc.write_text(
        "bcast B 0 opaque:id-B:1/1000000\n"
        "receive B 0 B opaque:id-B:1/1000000\n"
        f"receive A {Fraction(arrival).limit_denominator(10**15)} B opaque:id-B:1/1000000\n"
    )
    assert run(["check", scn, trc]) == 1  # exact mode refuses the geometry
    capsys.readouterr()
    assert run(["--approx", "1/1000000000", "check", scn, trc]) == 0


def test_generated_worlds_survive_the_full_file_loop(tmp_path, capsys):
    """serialize -> parse -> check returns clean for generator output."""
    import random

    from ndcheck import AdversaryModel
    from ndcheck.generators import random_params, random_setting, random_trace

    rng = random.Random(31337)
    horizon = Fraction(40)
    for index in range(25):
        params = random_params(rng, delta_at_least_threshold=True, equal_speeds=False)
        setting = random_setting(rng, horizon)
        trace = random_trace(rng, setting, params, "pt", "dy-t", horizon)
        scenario = Scenario(
            params,
            setting,
            "pt",
            AdversaryModel("dy-t", params.delta_relay),
            None,
            horizon,
        )
        scn = tmp_path / f"world-{index}.scn"
        trc = tmp_path / f"world-{index}.trc"
        save_scenario(scn, scenario)
        save_trace(trc, trace)
        assert run(["check", scn, trc]) == 0, index
    capsys.readouterr()


def test_witness_with_slack_tolerant_protocol(tmp_path, capsys):
    text = RADIO.replace(
        "name = pt", "name = pgt-approx\ndelta = 1/100000000\ntau = 0"
    )
    scn = tmp_path / "approx.scn"
    scn.write_text(text)
    out = tmp_path / "wit"
    assert run(["witness", scn, "--distance", "60", "--out-dir", out]) == 0
    capsys.readouterr()
    assert run(["check", out / "witness.scn", out / "witness.trc"]) == 0


def test_attack_from_scenario_with_bystander_adversary(tmp_path, capsys):
    # extra adversarial nodes in the input scenario do not disturb the
    # canonical re-staging, which only uses the correct pair's distance
    text = RADIO.replace(
        "[protocol]",
        "[node M]\nx = 30\ny = 0\ntype = adversarial\n\n[protocol]",
    )
    scn = tmp_path / "bystander.scn"
    scn.write_text(text)
    out = tmp_path / "out"
    assert run(["attack", scn, "--out-dir", out]) == 0
    capsys.readouterr()
    assert run(["check", out / "attack.scn", out / "relay.trc"]) == 3


def test_attack_rejects_unsupported_variant_combo(tmp_path, capsys):
    text = RADIO.replace("name = pt", "name = pgt-approx\ndelta = 1/100\ntau = 0")
    scn = tmp_path / "combo.scn"
    scn.write_text(text)
    code = run(["attack", scn, "--variant", "wormhole", "--out-dir", tmp_path / "o"])
    assert code == 1
    assert "not supported" in capsys.readouterr().err
