"""Composite sustainability scoring and destination ranking.

Every component is oriented so that lower is better, and the final score is
the weighted sum of the five components:

    transport               min-CO2e across modes, min-max normalized over
                            the candidate set
    popularity              raw review/rating volume, min-max normalized
                            (crowd-drawing cities are penalized)
    seasonality             the city's crowdedness in the travel month
    interest_penalty        1 - interest match
    personalization_penalty mean of the user-prioritized sustainability
                            attributes (walkability inverted)

When the user forgoes personalization its weight is zeroed and the freed
mass is split evenly between transport and interest, so those two criteria
are emphasized instead. Candidates are all catalog cities except the
departure; ties are broken by ascending city id so rankings are total and
reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .config import DEFAULT_FLIGHT_MIN_ROUTE_KM, DEFAULT_WEIGHTS, EngineConfig
from .dataset import Catalog, CityRecord, get_city, seasonality_of
from .transport import estimate_transport

LOWER_IS_BETTER = "lower_is_better"
HIGHER_IS_BETTER = "higher_is_better"

PERSONALIZATION_ATTRIBUTES = ("air_quality", "climate_vulnerability", "walkability")

WEIGHT_SUM_TOLERANCE = 1e-9


class ScoringError(Exception):
    pass


class EmptyInput(ScoringError):
    pass


class NonFiniteInput(ScoringError):
    pass


class UnknownDeparture(ScoringError):
    def __init__(self, departure_id: str):
        self.departure_id = departure_id
        super().__init__(f"departure city {departure_id!r} is not in the catalog")


class EmptyCandidateSet(ScoringError):
    pass


class UnknownInterest(ScoringError):
    def __init__(self, names: list[str]):
        self.names = names
        super().__init__(f"interests not declared by the catalog: {', '.join(names)}")


class UnknownPersonalization(ScoringError):
    def __init__(self, names: list[str]):
        self.names = names
        super().__init__(f"unknown personalization attributes: {', '.join(names)}")


class InvalidWeights(ScoringError):
    pass


@dataclass(frozen=True)
class UserQuery:
    departure_id: str
    month: int
    interests: frozenset[str] = frozenset()
    personalization: frozenset[str] = frozenset()

    @property
    def personalized(self) -> bool:
        return bool(self.personalization)


@dataclass(frozen=True)
class WeightVector:
    transport: float
    popularity: float
    seasonality: float
    interest: float
    personalization: float

    def __post_init__(self) -> None:
        values = self.as_tuple()
        if any(not 0.0 <= v <= 1.0 for v in values):
            raise InvalidWeights(f"weights outside [0,1]: {values}")
        if abs(sum(values) - 1.0) > WEIGHT_SUM_TOLERANCE:
            raise InvalidWeights(f"weights sum to {sum(values)}, not 1.0")

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (
            self.transport,
            self.popularity,
            self.seasonality,
            self.interest,
            self.personalization,
        )


@dataclass(frozen=True)
class ComponentScores:
    """All components in [0,1], lower is better."""

    transport: float
    popularity: float
    seasonality: float
    interest_penalty: float
    personalization_penalty: float

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (
            self.transport,
            self.popularity,
            self.seasonality,
            self.interest_penalty,
            self.personalization_penalty,
        )


@dataclass(frozen=True)
class ScoredCity:
    city_id: str
    components: ComponentScores
    weights: WeightVector
    score: float
    rank: int
    interest_match: float  # raw, higher is better (for display)
    min_co2e_kg: float


def default_weights(config: EngineConfig | None = None) -> WeightVector:
    table = config.weights if config else DEFAULT_WEIGHTS
    return WeightVector(
        transport=table["transport"],
        popularity=table["popularity"],
        seasonality=table["seasonality"],
        interest=table["interest"],
        personalization=table["personalization"],
    )


def minmax_normalize(values: list[float], orientation: str = LOWER_IS_BETTER) -> list[float]:
    """Affine map of values onto [0,1]; higher_is_better flips the result.

    A constant input has no spread to exploit, so every entry maps to the
    neutral 0.5.
    """
    if not values:
        raise EmptyInput("minmax_normalize needs at least one value")
    if any(not math.isfinite(v) for v in values):
        raise NonFiniteInput(f"non-finite value in {values}")
    if orientation not in (LOWER_IS_BETTER, HIGHER_IS_BETTER):
        raise ScoringError(f"unknown orientation {orientation!r}")
    lo, hi = min(values), max(values)
    if hi == lo:
        return [0.5] * len(values)
    normalized = [(v - lo) / (hi - lo) for v in values]
    if orientation == HIGHER_IS_BETTER:
        normalized = [1.0 - v for v in normalized]
    return normalized


def interest_match(query: UserQuery, city: CityRecord) -> float:
    """Mean city score over the selected categories; 0.5 when none selected."""
    if not query.interests:
        return 0.5
    total = sum(city.interest_scores.get(cat, 0.0) for cat in query.interests)
    return total / len(query.interests)


def personalization_penalty(query: UserQuery, city: CityRecord) -> float:
    """Mean lower-is-better value of the prioritized attributes.

    air_quality and climate_vulnerability are already penalties; walkability
    is inverted. Returns the neutral 0.5 when nothing is prioritized (weight
    adaptation removes its influence in that case).
    """
    if not query.personalization:
        return 0.5
    total = 0.0
    for attr in query.personalization:
        value = getattr(city, attr)
        if attr == "walkability":
            value = 1.0 - value
        total += value
    return total / len(query.personalization)


def adapt_weights(query: UserQuery, defaults: WeightVector) -> WeightVector:
    """Return the per-query weights.

    With personalization present the defaults pass through unchanged.
    Without it, the personalization weight drops to zero and its mass is
    split 50/50 between transport and interest, then the vector is
    renormalized to absorb float drift.
    """
    if query.personalized or defaults.personalization == 0.0:
        return defaults
    half = defaults.personalization / 2.0
    raw = (
        defaults.transport + half,
        defaults.popularity,
        defaults.seasonality,
        defaults.interest + half,
        0.0,
    )
    total = sum(raw)
    return WeightVector(*(v / total for v in raw))


def validate_query(catalog: Catalog, query: UserQuery) -> None:
    """Check the query against the catalog; raises on the first violation."""
    if query.departure_id not in catalog:
        raise UnknownDeparture(query.departure_id)
    if not isinstance(query.month, int) or isinstance(query.month, bool) or not 1 <= query.month <= 12:
        from .dataset import MonthOutOfRange

        raise MonthOutOfRange(query.month)
    unknown = sorted(set(query.interests) - catalog.categories)
    if unknown:
        raise UnknownInterest(unknown)
    bad_attrs = sorted(set(query.personalization) - set(PERSONALIZATION_ATTRIBUTES))
    if bad_attrs:
        raise UnknownPersonalization(bad_attrs)


def rank_destinations(
    catalog: Catalog,
    query: UserQuery,
    defaults: WeightVector | None = None,
    config: EngineConfig | None = None,
) -> list[ScoredCity]:
    """Score and rank every catalog city except the departure.

    Sorted ascending by composite score (lower is better), ties broken by
    ascending city id; ranks are 1..N with no gaps.
    """
    validate_query(catalog, query)
    defaults = defaults or default_weights(config)
    departure = get_city(catalog, query.departure_id)
    candidates = [c for c in catalog.cities if c.id != departure.id]
    if not candidates:
        raise EmptyCandidateSet("catalog holds no city besides the departure")

    modes = config.modes if config else None
    flight_min = config.flight_min_route_km if config else DEFAULT_FLIGHT_MIN_ROUTE_KM
    min_co2es = [
        min(e.co2e_kg for e in estimate_transport(departure, c, modes, flight_min))
        for c in candidates
    ]
    transport_comp = minmax_normalize(min_co2es, LOWER_IS_BETTER)
    popularity_comp = minmax_normalize(
        [float(c.popularity_count) for c in candidates], LOWER_IS_BETTER
    )
    weights = adapt_weights(query, defaults)

    scored = []
    for i, city in enumerate(candidates):
        match = interest_match(query, city)
        components = ComponentScores(
            transport=transport_comp[i],
            popularity=popularity_comp[i],
            seasonality=seasonality_of(city, query.month),
            interest_penalty=1.0 - match,
            personalization_penalty=personalization_penalty(query, city),
        )
        raw = sum(w * c for w, c in zip(weights.as_tuple(), components.as_tuple()))
        scored.append(
            ScoredCity(
                city_id=city.id,
                components=components,
                weights=weights,
                score=min(1.0, max(0.0, raw)),
                rank=0,
                interest_match=match,
                min_co2e_kg=min_co2es[i],
            )
        )

    scored.sort(key=lambda s: (s.score, s.city_id))
    return [
        ScoredCity(
            city_id=s.city_id,
            components=s.components,
            weights=s.weights,
            score=s.score,
            rank=pos,
            interest_match=s.interest_match,
            min_co2e_kg=s.min_co2e_kg,
        )
        for pos, s in enumerate(scored, start=1)
    ]
