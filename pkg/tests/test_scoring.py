"""Normalization, interest/personalization math, weight adaptation, ranking."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

import ranking_oracle as oracle
from conftest import CATEGORIES, city_as_dict, fuzz_catalog, make_catalog, make_city
from ecotrip.dataset import MonthOutOfRange
from ecotrip.scoring import (
    EmptyCandidateSet,
    EmptyInput,
    InvalidWeights,
    NonFiniteInput,
    UnknownDeparture,
    UnknownInterest,
    UnknownPersonalization,
    UserQuery,
    WeightVector,
    adapt_weights,
    default_weights,
    interest_match,
    minmax_normalize,
    personalization_penalty,
    rank_destinations,
    validate_query,
)

DEFAULTS = WeightVector(0.30, 0.15, 0.15, 0.20, 0.20)


def query(departure="a", month=6, interests=(), personalization=()):
    return UserQuery(
        departure_id=departure,
        month=month,
        interests=frozenset(interests),
        personalization=frozenset(personalization),
    )


# -- minmax_normalize --------------------------------------------------------

def test_minmax_endpoints_and_midpoint():
    assert minmax_normalize([2.0, 4.0, 6.0]) == [0.0, 0.5, 1.0]


def test_minmax_constant_input_is_neutral():
    assert minmax_normalize([5.0, 5.0, 5.0]) == [0.5, 0.5, 0.5]
    assert minmax_normalize([5.0, 5.0, 5.0], "higher_is_better") == [0.5, 0.5, 0.5]


def test_minmax_inverted_orientation():
    assert minmax_normalize([1.0, 3.0], "higher_is_better") == [1.0, 0.0]


def test_minmax_rejects_empty_and_non_finite():
    with pytest.raises(EmptyInput):
        minmax_normalize([])
    with pytest.raises(NonFiniteInput):
        minmax_normalize([1.0, float("nan")])
    with pytest.raises(NonFiniteInput):
        minmax_normalize([float("inf"), 1.0])


@given(st.lists(st.floats(min_value=-1e9, max_value=1e9), min_size=1, max_size=50))
def test_minmax_stays_in_unit_interval(values):
    for v in minmax_normalize(values):
        assert 0.0 <= v <= 1.0


# -- interest_match ----------------------------------------------------------

def test_interest_match_mean():
    city = make_city("x", 0, 0, interests={"cultural": 0.8, "culinary": 0.6})
    assert interest_match(query(interests=("cultural", "culinary")), city) == pytest.approx(0.7)


def test_interest_match_empty_set_neutral():
    city = make_city("x", 0, 0, interests={"cultural": 0.9})
    assert interest_match(query(), city) == 0.5


def test_interest_match_perfect():
    city = make_city("x", 0, 0, interests={"cultural": 1.0, "nature": 1.0})
    assert interest_match(query(interests=("cultural", "nature")), city) == 1.0


def test_interest_match_missing_category_counts_zero():
    city = make_city("x", 0, 0, interests={"cultural": 0.8})
    assert interest_match(query(interests=("cultural", "culinary")), city) == pytest.approx(0.4)


# -- personalization_penalty -------------------------------------------------

def test_personalization_walkability_inverted():
    city = make_city("x", 0, 0, walkability=0.9)
    assert personalization_penalty(query(personalization=("walkability",)), city) == pytest.approx(0.1)


def test_personalization_mean_of_direct_attributes():
    city = make_city("x", 0, 0, air_quality=0.2, climate_vulnerability=0.4)
    got = personalization_penalty(
        query(personalization=("air_quality", "climate_vulnerability")), city
    )
    assert got == pytest.approx(0.3)


def test_personalization_absent_is_neutral():
    assert personalization_penalty(query(), make_city("x", 0, 0)) == 0.5


# -- WeightVector / adapt_weights --------------------------------------------

def test_weight_vector_validates_sum():
    with pytest.raises(InvalidWeights):
        WeightVector(0.5, 0.5, 0.5, 0.0, 0.0)
    with pytest.raises(InvalidWeights):
        WeightVector(1.2, -0.2, 0.0, 0.0, 0.0)


def test_adapt_weights_identity_when_personalized():
    q = query(personalization=("walkability",))
    assert adapt_weights(q, DEFAULTS) is DEFAULTS


def test_adapt_weights_redistribution():
    adapted = adapt_weights(query(), DEFAULTS)
    expected = (0.40, 0.15, 0.15, 0.30, 0.00)
    for got, want in zip(adapted.as_tuple(), expected):
        assert got == pytest.approx(want, abs=1e-9)
    assert sum(adapted.as_tuple()) == pytest.approx(1.0, abs=1e-9)


def test_adapt_weights_zero_mass_is_identity():
    defaults = WeightVector(0.4, 0.2, 0.2, 0.2, 0.0)
    assert adapt_weights(query(), defaults) is defaults


@given(
    st.lists(st.floats(min_value=0.001, max_value=1.0), min_size=5, max_size=5)
)
def test_adapt_weights_always_sums_to_one(raw):
    total = sum(raw)
    defaults = WeightVector(*(v / total for v in raw))
    for q in (query(), query(personalization=("air_quality",))):
        adapted = adapt_weights(q, defaults)
        assert abs(sum(adapted.as_tuple()) - 1.0) <= 1e-9
    assert adapt_weights(query(), defaults).personalization == 0.0


def test_default_weights_match_config():
    assert default_weights().as_tuple() == (0.30, 0.15, 0.15, 0.20, 0.20)


# -- validate_query ----------------------------------------------------------

def small_catalog():
    return make_catalog(
        [
            make_city("a", 0.0, 0.0, interests={c: 0.5 for c in CATEGORIES}),
            make_city("b", 0.0, 10.0, interests={c: 0.5 for c in CATEGORIES}),
        ]
    )


def test_validate_query_errors():
    catalog = small_catalog()
    with pytest.raises(UnknownDeparture):
        validate_query(catalog, query(departure="atlantis"))
    with pytest.raises(MonthOutOfRange):
        validate_query(catalog, query(month=0))
    with pytest.raises(MonthOutOfRange):
        validate_query(catalog, query(month=13))
    with pytest.raises(UnknownInterest):
        validate_query(catalog, query(interests=("knitting",)))
    with pytest.raises(UnknownPersonalization):
        validate_query(catalog, query(personalization=("horoscope",)))
    validate_query(catalog, query(interests=("cultural",), personalization=("walkability",)))


# -- rank_destinations -------------------------------------------------------

def test_ranking_matches_brute_force_oracle():
    rng = random.Random(20260814)
    catalog = fuzz_catalog(rng, 5)
    q = query(
        departure="city-00",
        month=7,
        interests=("cultural", "nature"),
        personalization=("walkability",),
    )
    ranked = rank_destinations(catalog, q, DEFAULTS)
    expected = oracle.rank(
        [city_as_dict(c) for c in catalog.cities],
        "city-00",
        7,
        {"cultural", "nature"},
        {"walkability"},
    )
    assert [s.city_id for s in ranked] == [row["id"] for row in expected]
    for got, want in zip(ranked, expected):
        assert got.rank == want["rank"]
        assert got.score == pytest.approx(want["score"], abs=1e-9)
        assert got.min_co2e_kg == pytest.approx(want["min_co2e_kg"], rel=1e-9)
        assert got.interest_match == pytest.approx(want["interest_match"], abs=1e-12)
        for gc, wc in zip(got.components.as_tuple(), want["components"]):
            assert gc == pytest.approx(wc, abs=1e-12)


def test_identical_cities_tie_break_by_id():
    shared = dict(
        popularity=1000,
        seasonality=0.4,
        interests={"cultural": 0.7},
        air_quality=0.3,
        climate_vulnerability=0.3,
        walkability=0.7,
    )
    catalog = make_catalog(
        [
            make_city("dep", 0.0, 0.0),
            make_city("zeta", 10.0, 10.0, **shared),
            make_city("alpha", 10.0, 10.0, **shared),
        ]
    )
    ranked = rank_destinations(catalog, query(departure="dep", interests=("cultural",)))
    assert ranked[0].score == ranked[1].score
    assert [s.city_id for s in ranked] == ["alpha", "zeta"]
    assert [s.rank for s in ranked] == [1, 2]


def test_departure_only_catalog_is_empty_candidate_set():
    catalog = make_catalog([make_city("solo", 0.0, 0.0)])
    with pytest.raises(EmptyCandidateSet):
        rank_destinations(catalog, query(departure="solo"))


def test_departure_excluded_and_ranks_contiguous(data_catalog):
    q = query(departure="munich", month=3, interests=("cultural",))
    ranked = rank_destinations(data_catalog, q)
    assert len(ranked) == len(data_catalog) - 1
    assert all(s.city_id != "munich" for s in ranked)
    assert [s.rank for s in ranked] == list(range(1, len(ranked) + 1))
    assert all(0.0 <= s.score <= 1.0 for s in ranked)
    scores = [s.score for s in ranked]
    assert scores == sorted(scores)


def test_score_equals_weighted_sum(data_catalog):
    q = query(departure="paris", month=8, interests=("nature",), personalization=("air_quality",))
    for s in rank_destinations(data_catalog, q):
        dot = sum(w * c for w, c in zip(s.weights.as_tuple(), s.components.as_tuple()))
        assert s.score == pytest.approx(dot, abs=1e-9)


def test_determinism_same_inputs_same_output():
    rng = random.Random(99)
    catalog = fuzz_catalog(rng, 8)
    q = query(departure="city-03", month=2, interests=("culinary",))
    assert rank_destinations(catalog, q, DEFAULTS) == rank_destinations(catalog, q, DEFAULTS)
