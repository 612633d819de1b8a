from fractions import Fraction

from ndcheck import (
    ADVERSARIAL,
    AdversaryModel,
    Bcast,
    BeaconT,
    CORRECT,
    DY_GT,
    DY_T,
    Dcast,
    Opaque,
    RELAY,
    RELAY_BCAST,
    RELAY_LOCAL,
    Setting,
    Trace,
    check_adversary_feasible,
    check_setting_feasible,
    induced_receives,
    project_local,
    rename_bcast_to_dcast,
    rename_dcast_to_bcast,
    weaker_on_corpus,
)
from ndcheck.generators import authored_beacon_trace, make_ordering_corpus

F = Fraction
ALWAYS = ((F(0), None),)


def chain_setting():
    """A -- C -- D -- B with only adjacent links up; C, D adversarial."""
    return Setting(
        nodes=("A", "B", "C", "D"),
        loc={
            "A": (F(0), F(0)),
            "C": (F(2), F(0)),
            "D": (F(6), F(0)),
            "B": (F(8), F(0)),
        },
        node_type={"A": CORRECT, "B": CORRECT, "C": ADVERSARIAL, "D": ADVERSARIAL},
        link_schedule={
            ("A", "C"): ALWAYS,
            ("C", "A"): ALWAYS,
            ("C", "D"): ALWAYS,
            ("D", "C"): ALWAYS,
            ("D", "B"): ALWAYS,
            ("B", "D"): ALWAYS,
        },
    )


def relayed_trace(params, gap=None, relay_primitive="dcast", msg=None):
    """B beacons, D receives it, D re-sends after the given gap."""
    setting = chain_setting()
    msg = msg or BeaconT("B", F(0), F(1))
    sends = [Bcast("B", F(0), msg)]
    receives = induced_receives(sends, setting, params)
    entry = next(r for r in receives if r.actor == "D")
    gap = params.delta_relay if gap is None else gap
    if relay_primitive == "dcast":
        resend = Dcast("D", entry.start + gap, F(0), F(2), msg)
    else:
        resend = Bcast("D", entry.start + gap, msg)
    all_sends = sends + [resend]
    return Trace(all_sends + induced_receives(all_sends, setting, params)), setting


def test_same_node_relay_feasible_everywhere(unit_params):
    trace, setting = relayed_trace(unit_params)
    assert check_setting_feasible(trace, setting, unit_params).ok
    for kind in (RELAY, RELAY_LOCAL, DY_T):
        model = AdversaryModel(kind, unit_params.delta_relay)
        assert check_adversary_feasible(trace, setting, unit_params, model).ok


def test_too_fast_relay_rejected(unit_params):
    trace, setting = relayed_trace(unit_params, gap=unit_params.delta_relay / 2)
    for kind in (RELAY, RELAY_LOCAL, DY_T):
        model = AdversaryModel(kind, unit_params.delta_relay)
        verdict = check_adversary_feasible(trace, setting, unit_params, model)
        assert "relay-unjustified" in verdict.rules()


def test_delta_relay_monotonicity(unit_params):
    trace, setting = relayed_trace(unit_params, gap=F(2))
    for delta in (F(2), F(1), F(1, 2), F(0)):
        model = AdversaryModel(RELAY, delta)
        assert check_adversary_feasible(trace, setting, unit_params, model).ok
    assert not check_adversary_feasible(
        trace, setting, unit_params, AdversaryModel(RELAY, F(3))
    ).ok


def test_cross_node_relay_needs_channel_budget(unit_params):
    """C re-sends what only D received: the channel flight time is owed."""
    setting = chain_setting()
    msg = BeaconT("B", F(0), F(1))
    sends = [Bcast("B", F(0), msg)]
    entry = next(
        r for r in induced_receives(sends, setting, unit_params) if r.actor == "D"
    )
    channel = F(4)  # dist(C, D) / v_adv
    good_gap = unit_params.delta_relay + channel
    for gap, expected in ((good_gap, True), (good_gap - F(1, 8), False)):
        resend = Dcast("C", entry.start + gap, F(1), F(1), msg)
        all_sends = sends + [resend]
        trace = Trace(all_sends + induced_receives(all_sends, setting, unit_params))
        model = AdversaryModel(RELAY, unit_params.delta_relay)
        assert check_adversary_feasible(trace, setting, unit_params, model).ok == expected
        # without the adversary channel the same-node rule always fails here
        local = AdversaryModel(RELAY_LOCAL, unit_params.delta_relay)
        assert not check_adversary_feasible(trace, setting, unit_params, local).ok


def test_adversarial_bcast_forbidden_except_bcast_model(unit_params):
    trace, setting = relayed_trace(unit_params, relay_primitive="bcast")
    assert check_setting_feasible(trace, setting, unit_params).ok
    bcast_model = AdversaryModel(RELAY_BCAST, unit_params.delta_relay)
    assert check_adversary_feasible(trace, setting, unit_params, bcast_model).ok
    for kind in (RELAY, RELAY_LOCAL, DY_T):
        verdict = check_adversary_feasible(
            trace, setting, unit_params, AdversaryModel(kind, unit_params.delta_relay)
        )
        assert "adversarial-bcast" in verdict.rules()


def test_dcast_forbidden_under_bcast_model(unit_params):
    trace, setting = relayed_trace(unit_params)
    verdict = check_adversary_feasible(
        trace, setting, unit_params, AdversaryModel(RELAY_BCAST, unit_params.delta_relay)
    )
    assert "adversarial-dcast" in verdict.rules()


def test_never_received_message_rejected_by_all_relay_kinds(unit_params):
    setting = chain_setting()
    msg = Opaque("ghost", F(1))
    sends = [Dcast("C", F(5), F(0), F(2), msg)]
    trace = Trace(sends + induced_receives(sends, setting, unit_params))
    for kind in (RELAY, RELAY_LOCAL):
        verdict = check_adversary_feasible(
            trace, setting, unit_params, AdversaryModel(kind, unit_params.delta_relay)
        )
        assert "relay-unjustified" in verdict.rules()


def test_self_authored_beacon_only_under_dolev_yao(unit_params):
    trace, setting = authored_beacon_trace(unit_params)
    assert check_setting_feasible(trace, setting, unit_params).ok
    dy = AdversaryModel(DY_T, unit_params.delta_relay)
    assert check_adversary_feasible(trace, setting, unit_params, dy).ok
    for kind in (RELAY, RELAY_LOCAL):
        verdict = check_adversary_feasible(
            trace, setting, unit_params, AdversaryModel(kind, unit_params.delta_relay)
        )
        assert "relay-unjustified" in verdict.rules()


def test_dolev_yao_rejects_foreign_payload_kind(unit_params):
    trace, setting = relayed_trace(unit_params, msg=Opaque("x", F(1)))
    verdict = check_adversary_feasible(
        trace, setting, unit_params, AdversaryModel(DY_T, unit_params.delta_relay)
    )
    assert "message-outside-model" in verdict.rules()
    verdict = check_adversary_feasible(
        trace, setting, unit_params, AdversaryModel(DY_GT, unit_params.delta_relay)
    )
    assert "message-outside-model" in verdict.rules()


def test_silence_feasible_under_every_model(unit_params):
    setting = chain_setting()
    msg = BeaconT("B", F(0), F(1))
    sends = [Bcast("B", F(0), msg)]
    trace = Trace(sends + induced_receives(sends, setting, unit_params))
    for kind in (RELAY, RELAY_BCAST, RELAY_LOCAL, DY_T):
        model = AdversaryModel(kind, unit_params.delta_relay)
        assert check_adversary_feasible(trace, setting, unit_params, model).ok


# ---------------------------------------------------------------------------
# renaming


def test_rename_round_trip_and_identity(unit_params):
    trace, setting = relayed_trace(unit_params, relay_primitive="bcast")
    renamed = rename_bcast_to_dcast(trace, setting)
    assert any(isinstance(e, Dcast) for e in renamed)
    assert rename_dcast_to_bcast(renamed, setting) == trace
    honest_only = Trace(
        [e for e in trace if not (isinstance(e, Bcast) and e.actor == "D")]
    )
    assert rename_bcast_to_dcast(honest_only, setting).events == honest_only.events


def test_rename_preserves_feasibility_and_views(unit_params):
    trace, setting = relayed_trace(unit_params, relay_primitive="bcast")
    renamed = rename_bcast_to_dcast(trace, setting)
    before = check_setting_feasible(trace, setting, unit_params)
    after = check_setting_feasible(renamed, setting, unit_params)
    assert before.ok and after.ok
    for node in setting.correct_nodes:
        assert (
            project_local(trace, node).events == project_local(renamed, node).events
        )
    model = AdversaryModel(RELAY, unit_params.delta_relay)
    assert check_adversary_feasible(renamed, setting, unit_params, model).ok


# ---------------------------------------------------------------------------
# ordering


def test_ordering_on_generated_corpus(unit_params):
    entries = make_ordering_corpus(seed=11, size=12, params=unit_params)
    corpus = [(trace, setting) for trace, setting, _ in entries]
    delta = unit_params.delta_relay
    local, relay, bcast, dy = (
        AdversaryModel(RELAY_LOCAL, delta),
        AdversaryModel(RELAY, delta),
        AdversaryModel(RELAY_BCAST, delta),
        AdversaryModel(DY_T, delta),
    )
    assert weaker_on_corpus(local, relay, corpus, unit_params).inclusion_holds
    assert weaker_on_corpus(relay, dy, corpus, unit_params).inclusion_holds
    assert weaker_on_corpus(
        bcast, relay, corpus, unit_params, use_renaming=True
    ).inclusion_holds
    # the reverse direction has the authored-beacon counterexample
    report = weaker_on_corpus(dy, local, corpus, unit_params)
    assert not report.inclusion_holds
    assert report.applicable > 0
