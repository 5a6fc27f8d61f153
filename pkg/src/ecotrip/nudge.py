"""Trade-off nudges: badges, high-impact detection, greener alternatives,
and positive reinforcement.

A selection counts as high-impact when its best transport option lands in
the red band of the candidate set. Alternative suggestions must strictly
beat the selection on CO2e while staying within the interest tolerance;
reinforcement converts the saving against the candidate median into a
trees-per-year equivalent.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass

from .config import NudgeConstants
from .scoring import ScoredCity
from .transport import GREEN, RED, classify_traffic_light

BADGE_BEST_MATCH = "best_match"
BADGE_GREEN_RUNNER_UP = "green_runner_up"
BADGE_ECO_BRONZE = "eco_bronze"

KIND_ALTERNATIVES = "alternative_suggestion"
KIND_REINFORCEMENT = "positive_reinforcement"

CONTEXT_EXPLORE = "explore"
CONTEXT_BOOKING = "booking"
CONTEXT_CONFIRMATION = "confirmation"


class NudgeError(Exception):
    pass


class EmptyList(NudgeError):
    pass


class SelectionNotInCandidates(NudgeError):
    pass


@dataclass(frozen=True)
class AlternativeSuggestion:
    city_id: str
    co2e_saving_kg: float
    interest_match: float
    score: float


@dataclass(frozen=True)
class ReinforcementPayload:
    co2e_saved_kg: float
    trees_equivalent: float  # one decimal


@dataclass(frozen=True)
class NudgeBanner:
    kind: str  # alternative_suggestion | positive_reinforcement
    context: str  # explore | booking | confirmation
    alternatives: tuple[AlternativeSuggestion, ...] = ()
    reinforcement: ReinforcementPayload | None = None


def assign_badges(ranked: list[ScoredCity]) -> dict[str, str]:
    """Comparative badges over a ranked list, at most one per city.

    best_match goes to rank 1; green_runner_up and eco_bronze to the two
    lowest-CO2e cities among the rest (ties by city id).
    """
    if not ranked:
        raise EmptyList("cannot badge an empty ranking")
    best = min(ranked, key=lambda s: s.rank)
    badges = {best.city_id: BADGE_BEST_MATCH}
    rest = sorted(
        (s for s in ranked if s.city_id != best.city_id),
        key=lambda s: (s.min_co2e_kg, s.city_id),
    )
    for city, badge in zip(rest, (BADGE_GREEN_RUNNER_UP, BADGE_ECO_BRONZE)):
        badges[city.city_id] = badge
    return badges


def traffic_lights(ranked: list[ScoredCity]) -> dict[str, str]:
    """Per-city emission class relative to the whole candidate set."""
    values = [s.min_co2e_kg for s in ranked]
    return {s.city_id: classify_traffic_light(s.min_co2e_kg, values) for s in ranked}


def detect_high_impact(selected: ScoredCity, candidates: list[ScoredCity]) -> bool:
    """True when the selection's best transport option is red-class."""
    if all(c.city_id != selected.city_id for c in candidates):
        raise SelectionNotInCandidates(selected.city_id)
    values = [c.min_co2e_kg for c in candidates]
    return classify_traffic_light(selected.min_co2e_kg, values) == RED


def suggest_alternatives(
    selected: ScoredCity,
    ranked: list[ScoredCity],
    max_n: int = 3,
    interest_tolerance: float = 0.15,
) -> list[AlternativeSuggestion]:
    """Greener, interest-aligned alternatives to the selection.

    Qualifiers must have strictly lower CO2e and an interest match no more
    than `interest_tolerance` below the selection's; the best-scoring max_n
    are returned. Empty when nothing dominates (no banner is shown then).
    """
    floor = selected.interest_match - interest_tolerance
    qualifying = [
        c
        for c in ranked
        if c.city_id != selected.city_id
        and c.min_co2e_kg < selected.min_co2e_kg
        and c.interest_match >= floor
    ]
    qualifying.sort(key=lambda c: (c.score, c.city_id))
    return [
        AlternativeSuggestion(
            city_id=c.city_id,
            co2e_saving_kg=selected.min_co2e_kg - c.min_co2e_kg,
            interest_match=c.interest_match,
            score=c.score,
        )
        for c in qualifying[:max_n]
    ]


def reinforcement(
    selected_co2e_kg: float,
    baseline_co2e_kg: float,
    co2e_kg_per_tree_year: float = 21.0,
) -> ReinforcementPayload:
    """Savings against the baseline, expressed in yearly tree equivalents."""
    saved = max(0.0, baseline_co2e_kg - selected_co2e_kg)
    return ReinforcementPayload(
        co2e_saved_kg=saved,
        trees_equivalent=round(saved / co2e_kg_per_tree_year, 1),
    )


def median_co2e(ranked: list[ScoredCity]) -> float:
    """Savings baseline: the median best-option CO2e of the candidate set."""
    if not ranked:
        raise EmptyList("no candidates to take a median over")
    return statistics.median(s.min_co2e_kg for s in ranked)


def banner_for_selection(
    selected: ScoredCity,
    ranked: list[ScoredCity],
    context: str,
    chosen_co2e_kg: float | None = None,
    constants: NudgeConstants | None = None,
) -> NudgeBanner | None:
    """Contextual banner for a selected city, or None when no nudge applies.

    `chosen_co2e_kg` pins the classification to a concrete transport choice
    (booking/confirmation); by default the city's best option is used.
    Red-class selections get alternative suggestions, green-class ones get
    positive reinforcement, yellow stays quiet.
    """
    constants = constants or NudgeConstants()
    value = selected.min_co2e_kg if chosen_co2e_kg is None else chosen_co2e_kg
    cls = classify_traffic_light(value, [c.min_co2e_kg for c in ranked])
    if cls == RED:
        alternatives = suggest_alternatives(
            selected,
            ranked,
            max_n=constants.max_alternatives,
            interest_tolerance=constants.interest_tolerance,
        )
        if not alternatives:
            return None
        return NudgeBanner(
            kind=KIND_ALTERNATIVES, context=context, alternatives=tuple(alternatives)
        )
    if cls == GREEN:
        payload = reinforcement(
            value, median_co2e(ranked), constants.co2e_kg_per_tree_year
        )
        return NudgeBanner(kind=KIND_REINFORCEMENT, context=context, reinforcement=payload)
    return None


def explore_banner(
    ranked: list[ScoredCity], constants: NudgeConstants | None = None
) -> NudgeBanner | None:
    """Explore-page banner, evaluated against the rank-1 recommendation."""
    if not ranked:
        raise EmptyList("cannot evaluate a banner over an empty ranking")
    top = min(ranked, key=lambda s: s.rank)
    return banner_for_selection(top, ranked, CONTEXT_EXPLORE, constants=constants)
