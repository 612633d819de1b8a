import random
from fractions import Fraction

from ndcheck import (
    AdversaryModel,
    DY_T,
    RELAY,
    check_adversary_feasible,
    check_pt_feasible,
    check_setting_feasible,
)
from ndcheck.generators import (
    make_ordering_corpus,
    random_params,
    random_setting,
    random_trace,
    random_tl_views,
)

F = Fraction
HORIZON = F(40)


def test_generated_traces_pass_all_checkers():
    rng = random.Random(424242)
    for _ in range(30):
        params = random_params(rng, delta_at_least_threshold=True, equal_speeds=False)
        setting = random_setting(rng, HORIZON)
        trace = random_trace(rng, setting, params, "pt", DY_T, HORIZON)
        assert check_setting_feasible(trace, setting, params).ok
        assert check_pt_feasible(trace, setting, params).ok
        model = AdversaryModel(DY_T, params.delta_relay)
        assert check_adversary_feasible(trace, setting, params, model).ok


def test_generation_is_deterministic():
    def build(seed):
        rng = random.Random(seed)
        params = random_params(rng, delta_at_least_threshold=False, equal_speeds=True)
        setting = random_setting(rng, HORIZON)
        return random_trace(rng, setting, params, "pgt", RELAY, HORIZON)

    assert build(99) == build(99)
    assert build(99) != build(100)


def test_placements_always_exactly_measurable():
    rng = random.Random(7)
    for _ in range(40):
        setting = random_setting(rng, HORIZON)
        from ndcheck import dist

        for i, a in enumerate(setting.nodes):
            for b in setting.nodes[i + 1:]:
                dist(setting, a, b)  # must not raise IrrationalDistance


def test_ordering_corpus_shape(unit_params):
    corpus = make_ordering_corpus(seed=3, size=10, params=unit_params)
    assert len(corpus) == 10
    tags = [tag for _, _, tag in corpus]
    assert tags[-1] == "authored"
    assert {"relay", "relay-bcast", "relay-local"} <= set(tags)
    for trace, setting, _ in corpus:
        assert check_setting_feasible(trace, setting, unit_params).ok


def test_random_views_are_varied(unit_params):
    views = random_tl_views(seed=5, count=50, params=unit_params)
    assert len(views) == 50
    assert any(view.events for view in views)
    assert len({view.owner_loc for view in views}) > 5
