"""Badges, high-impact detection, alternatives, reinforcement, banners."""

from __future__ import annotations

import random
import statistics

import pytest

from ecotrip.nudge import (
    EmptyList,
    SelectionNotInCandidates,
    assign_badges,
    banner_for_selection,
    detect_high_impact,
    explore_banner,
    median_co2e,
    reinforcement,
    suggest_alternatives,
    traffic_lights,
)
from ecotrip.scoring import ComponentScores, ScoredCity, WeightVector

WEIGHTS = WeightVector(0.30, 0.15, 0.15, 0.20, 0.20)
COMPONENTS = ComponentScores(0.5, 0.5, 0.5, 0.5, 0.5)


def scored(city_id, rank, score, co2e, match=0.5):
    return ScoredCity(
        city_id=city_id,
        components=COMPONENTS,
        weights=WEIGHTS,
        score=score,
        rank=rank,
        interest_match=match,
        min_co2e_kg=co2e,
    )


# -- badges -------------------------------------------------------------------

def test_single_city_gets_only_best_match():
    ranked = [scored("a", 1, 0.2, 50.0)]
    assert assign_badges(ranked) == {"a": "best_match"}


def test_three_city_badge_hand_trace():
    # rank-1 also has the lowest CO2e; runner-up goes to the lower-CO2e of
    # the remaining two, bronze to the last one.
    ranked = [
        scored("top", 1, 0.10, 10.0),
        scored("mid", 2, 0.20, 40.0),
        scored("low", 3, 0.30, 25.0),
    ]
    assert assign_badges(ranked) == {
        "top": "best_match",
        "low": "green_runner_up",
        "mid": "eco_bronze",
    }


def test_badges_tie_broken_by_city_id():
    ranked = [
        scored("x", 1, 0.1, 10.0),
        scored("bb", 2, 0.2, 30.0),
        scored("aa", 3, 0.3, 30.0),
    ]
    badges = assign_badges(ranked)
    assert badges["aa"] == "green_runner_up"
    assert badges["bb"] == "eco_bronze"


def test_badges_empty_list():
    with pytest.raises(EmptyList):
        assign_badges([])


def test_badge_uniqueness_over_fuzzed_lists():
    rng = random.Random(5)
    for _ in range(200):
        n = rng.randrange(1, 12)
        ranked = [
            scored(f"c{i}", i + 1, i / 10.0, rng.uniform(1.0, 500.0))
            for i in range(n)
        ]
        badges = assign_badges(ranked)
        assert len(badges) == min(3, n)  # one badge per city, never doubled
        assert len(set(badges.values())) == len(badges)


# -- high impact --------------------------------------------------------------

def test_high_impact_for_maximum():
    ranked = [scored("a", 1, 0.1, 10.0), scored("b", 2, 0.2, 20.0), scored("c", 3, 0.3, 30.0)]
    assert detect_high_impact(ranked[2], ranked) is True


def test_not_high_impact_for_minimum():
    ranked = [scored("a", 1, 0.1, 10.0), scored("b", 2, 0.2, 20.0), scored("c", 3, 0.3, 30.0)]
    assert detect_high_impact(ranked[0], ranked) is False


def test_not_high_impact_when_all_equal():
    ranked = [scored("a", 1, 0.1, 15.0), scored("b", 2, 0.2, 15.0), scored("c", 3, 0.3, 15.0)]
    for s in ranked:
        assert detect_high_impact(s, ranked) is False


def test_selection_must_be_in_candidates():
    ranked = [scored("a", 1, 0.1, 10.0)]
    with pytest.raises(SelectionNotInCandidates):
        detect_high_impact(scored("ghost", 9, 0.9, 99.0), ranked)


def test_traffic_lights_cover_every_city():
    ranked = [scored(f"c{i}", i + 1, i / 10, 10.0 * (i + 1)) for i in range(6)]
    lights = traffic_lights(ranked)
    assert set(lights) == {s.city_id for s in ranked}
    assert set(lights.values()) <= {"green", "yellow", "red"}


# -- alternatives ------------------------------------------------------------

def test_alternatives_tolerance_hand_trace():
    selected = scored("heavy", 3, 0.5, 100.0, match=0.8)
    ranked = [
        scored("close", 1, 0.2, 60.0, match=0.7),   # within 0.15 of 0.8
        scored("far", 2, 0.3, 50.0, match=0.5),     # 0.5 < 0.65: excluded
        selected,
    ]
    got = suggest_alternatives(selected, ranked)
    assert [a.city_id for a in got] == ["close"]
    assert got[0].co2e_saving_kg == pytest.approx(40.0)
    assert got[0].interest_match == 0.7
    assert got[0].score == 0.2


def test_lowest_co2e_selection_has_no_alternatives():
    ranked = [scored("a", 1, 0.1, 10.0), scored("b", 2, 0.2, 20.0)]
    assert suggest_alternatives(ranked[0], ranked) == []


def test_max_n_truncates_by_score():
    selected = scored("sel", 4, 0.9, 100.0, match=0.5)
    ranked = [
        scored("s1", 1, 0.1, 50.0, match=0.5),
        scored("s2", 2, 0.2, 60.0, match=0.5),
        scored("s3", 3, 0.3, 70.0, match=0.5),
        selected,
    ]
    got = suggest_alternatives(selected, ranked, max_n=1)
    assert [a.city_id for a in got] == ["s1"]


def test_alternatives_dominance_fuzz():
    rng = random.Random(11)
    for _ in range(300):
        n = rng.randrange(2, 10)
        ranked = [
            scored(f"c{i}", i + 1, round(rng.random(), 3),
                   round(rng.uniform(1, 300), 1), match=round(rng.random(), 2))
            for i in range(n)
        ]
        selected = rng.choice(ranked)
        for alt in suggest_alternatives(selected, ranked):
            assert alt.co2e_saving_kg > 0.0
            assert alt.interest_match >= selected.interest_match - 0.15


# -- reinforcement ------------------------------------------------------------

def test_reinforcement_examples():
    payload = reinforcement(21.0, 63.0)
    assert payload.co2e_saved_kg == 42.0
    assert payload.trees_equivalent == 2.0

    clamped = reinforcement(80.0, 63.0)
    assert clamped.co2e_saved_kg == 0.0
    assert clamped.trees_equivalent == 0.0

    unit = reinforcement(0.0, 21.0)
    assert unit.co2e_saved_kg == 21.0
    assert unit.trees_equivalent == 1.0


def test_median_baseline():
    ranked = [scored("a", 1, 0.1, 10.0), scored("b", 2, 0.2, 30.0), scored("c", 3, 0.3, 20.0)]
    assert median_co2e(ranked) == statistics.median([10.0, 30.0, 20.0])
    with pytest.raises(EmptyList):
        median_co2e([])


# -- banners -------------------------------------------------------------------

def five_city_spread():
    return [
        scored("g1", 1, 0.10, 10.0, match=0.8),
        scored("g2", 2, 0.20, 20.0, match=0.8),
        scored("y1", 3, 0.30, 30.0, match=0.8),
        scored("y2", 4, 0.40, 40.0, match=0.8),
        scored("r1", 5, 0.50, 50.0, match=0.8),
    ]


def test_red_selection_yields_alternatives_banner():
    ranked = five_city_spread()
    banner = banner_for_selection(ranked[-1], ranked, "booking")
    assert banner is not None
    assert banner.kind == "alternative_suggestion"
    assert banner.context == "booking"
    assert 0 < len(banner.alternatives) <= 3
    for alt in banner.alternatives:
        assert alt.co2e_saving_kg > 0


def test_red_selection_without_qualifying_alternatives_stays_quiet():
    ranked = [
        scored("a", 1, 0.1, 10.0, match=0.1),
        scored("b", 2, 0.2, 20.0, match=0.1),
        scored("sel", 3, 0.5, 50.0, match=0.9),  # nobody within 0.15
    ]
    assert banner_for_selection(ranked[-1], ranked, "booking") is None


def test_green_selection_yields_reinforcement():
    ranked = five_city_spread()
    banner = banner_for_selection(ranked[0], ranked, "confirmation")
    assert banner.kind == "positive_reinforcement"
    assert banner.context == "confirmation"
    saved = statistics.median([10.0, 20.0, 30.0, 40.0, 50.0]) - 10.0
    assert banner.reinforcement.co2e_saved_kg == pytest.approx(saved)
    assert banner.reinforcement.trees_equivalent == round(saved / 21.0, 1)


def test_yellow_selection_is_quiet():
    ranked = five_city_spread()
    assert banner_for_selection(ranked[2], ranked, "explore") is None


def test_chosen_co2e_overrides_best_option():
    ranked = five_city_spread()
    # a mid-table city booked via a dirty mode classifies red and gets
    # alternatives measured against its own best option
    banner = banner_for_selection(ranked[3], ranked, "confirmation", chosen_co2e_kg=45.0)
    assert banner.kind == "alternative_suggestion"
    assert {a.city_id for a in banner.alternatives} == {"g1", "g2", "y1"}
    # a red city booked via a clean mode earns reinforcement instead
    banner = banner_for_selection(ranked[-1], ranked, "confirmation", chosen_co2e_kg=10.0)
    assert banner.kind == "positive_reinforcement"
    assert banner.reinforcement.co2e_saved_kg == pytest.approx(20.0)


def test_explore_banner_evaluates_rank_one():
    ranked = five_city_spread()
    banner = explore_banner(ranked)
    assert banner.kind == "positive_reinforcement"
    assert banner.context == "explore"
    with pytest.raises(EmptyList):
        explore_banner([])
