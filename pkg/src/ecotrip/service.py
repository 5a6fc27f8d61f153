"""HTTP JSON API over the recommendation engine.

The engine runs server-side behind a small FastAPI app; the UI (or any
client) is a thin consumer. Every non-2xx response body is a uniform error
document: {"http_status": int, "machine_code": str, "human_message": str}.

Endpoints:
    GET  /api/health
    POST /api/recommendations
    GET  /api/cities/{id}/transport?from={departure_id}
    GET  /api/cities/{id}/accommodations
    POST /api/bookings
    POST /api/nudges
    POST /api/events            (202: accepted before the write is durable)

Session events are logged asynchronously to a local append-only file;
booking receipts go to their own store. Both close on graceful shutdown.
"""

from __future__ import annotations

import json
from contextlib import asynccontextmanager
from dataclasses import dataclass

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from starlette.exceptions import HTTPException as StarletteHTTPException

from . import __version__
from .booking import (
    AccommodationOption,
    BookingDraft,
    InvalidDraft,
    PersistenceFailure,
    ReceiptStore,
    UnknownCity,
    accommodation_options,
    confirm_booking,
    receipt_to_dict,
)
from .config import EngineConfig, load_config
from .dataset import (
    Catalog,
    CityNotFound,
    ColumnMapping,
    MonthOutOfRange,
    get_city,
    load_catalog,
)
from .events import DUPLICATE, EventLog, InvalidEvent, validate_event
from .nudge import (
    CONTEXT_BOOKING,
    CONTEXT_CONFIRMATION,
    CONTEXT_EXPLORE,
    KIND_ALTERNATIVES,
    NudgeBanner,
    assign_badges,
    banner_for_selection,
    explore_banner,
    traffic_lights,
)
from .scoring import (
    EmptyCandidateSet,
    ScoredCity,
    UnknownDeparture,
    UnknownInterest,
    UnknownPersonalization,
    UserQuery,
    WeightVector,
    default_weights,
    rank_destinations,
    validate_query,
)
from .transport import (
    MODES,
    TransportEstimate,
    classify_traffic_light,
    estimate_transport,
    radar_profile,
)

NUDGE_CONTEXTS = (CONTEXT_EXPLORE, CONTEXT_BOOKING, CONTEXT_CONFIRMATION)


class ApiException(Exception):
    """Carried through to the client as a uniform error document."""

    def __init__(self, http_status: int, machine_code: str, human_message: str):
        self.http_status = http_status
        self.machine_code = machine_code
        self.human_message = human_message
        super().__init__(human_message)


def _error_response(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"http_status": status, "machine_code": code, "human_message": message},
    )


@dataclass
class EngineState:
    config: EngineConfig
    catalog: Catalog | None = None
    defaults: WeightVector | None = None
    event_log: EventLog | None = None
    receipt_store: ReceiptStore | None = None


# ---------------------------------------------------------------------------
# Serialization of engine values (the UI renders these verbatim)
# ---------------------------------------------------------------------------

def weights_to_dict(w: WeightVector) -> dict:
    return {
        "transport": w.transport,
        "popularity": w.popularity,
        "seasonality": w.seasonality,
        "interest": w.interest,
        "personalization": w.personalization,
    }


def scored_to_dict(s: ScoredCity, catalog: Catalog, light: str, badge: str | None) -> dict:
    city = get_city(catalog, s.city_id)
    return {
        "rank": s.rank,
        "city_id": s.city_id,
        "name": city.name,
        "country": city.country,
        "location": {"lat": city.location.lat, "lon": city.location.lon},
        "score": s.score,
        "components": {
            "transport": s.components.transport,
            "popularity": s.components.popularity,
            "seasonality": s.components.seasonality,
            "interest_penalty": s.components.interest_penalty,
            "personalization_penalty": s.components.personalization_penalty,
        },
        "weights": weights_to_dict(s.weights),
        "interest_match": s.interest_match,
        "min_co2e_kg": s.min_co2e_kg,
        "traffic_light": light,
        "badge": badge,
    }


def banner_to_dict(banner: NudgeBanner) -> dict:
    out: dict = {"kind": banner.kind, "context": banner.context}
    if banner.kind == KIND_ALTERNATIVES:
        out["alternatives"] = [
            {
                "city_id": a.city_id,
                "co2e_saving_kg": a.co2e_saving_kg,
                "interest_match": a.interest_match,
                "score": a.score,
            }
            for a in banner.alternatives
        ]
    else:
        out["reinforcement"] = {
            "co2e_saved_kg": banner.reinforcement.co2e_saved_kg,
            "trees_equivalent": banner.reinforcement.trees_equivalent,
        }
    return out


def estimate_to_dict(e: TransportEstimate, light: str | None = None) -> dict:
    out = {
        "mode": e.mode,
        "distance_km": e.distance_km,
        "co2e_kg": e.co2e_kg,
        "cost_eur": e.cost_eur,
        "duration_h": e.duration_h,
    }
    if light is not None:
        out["traffic_light"] = light
    return out


def query_to_dict(q: UserQuery) -> dict:
    return {
        "departure_id": q.departure_id,
        "month": q.month,
        "interests": sorted(q.interests),
        "personalization": sorted(q.personalization),
    }


def build_recommendation_payload(
    catalog: Catalog,
    query: UserQuery,
    defaults: WeightVector | None = None,
    config: EngineConfig | None = None,
) -> dict:
    """Ranked results, badges, light classes, and explore banners as one
    JSON-ready document. The CLI's JSON output reuses this payload, so both
    surfaces stay byte-for-byte consistent."""
    ranked = rank_destinations(catalog, query, defaults, config)
    badges = assign_badges(ranked)
    lights = traffic_lights(ranked)
    banner = explore_banner(ranked, config.nudge if config else None)
    return {
        "query": query_to_dict(query),
        "results": [
            scored_to_dict(s, catalog, lights[s.city_id], badges.get(s.city_id))
            for s in ranked
        ],
        "banners": [banner_to_dict(banner)] if banner else [],
    }


# ---------------------------------------------------------------------------
# Request parsing (manual, so machine codes can name the offending field)
# ---------------------------------------------------------------------------

async def _json_body(request: Request) -> dict:
    try:
        body = await request.json()
    except (json.JSONDecodeError, UnicodeDecodeError):
        raise ApiException(400, "invalid_json", "request body is not valid JSON") from None
    if not isinstance(body, dict):
        raise ApiException(400, "invalid_json", "request body must be a JSON object")
    return body


def parse_user_query(body: dict, catalog: Catalog) -> UserQuery:
    departure = body.get("departure_id")
    if not isinstance(departure, str) or not departure:
        raise ApiException(400, "departure_id_invalid", "departure_id must be a non-empty string")
    month = body.get("month")
    if not isinstance(month, int) or isinstance(month, bool) or not 1 <= month <= 12:
        raise ApiException(400, "month_out_of_range", f"month must be 1..12, got {month!r}")
    interests = body.get("interests", [])
    if not isinstance(interests, list) or any(not isinstance(i, str) for i in interests):
        raise ApiException(400, "interests_invalid", "interests must be a list of strings")
    personalization = body.get("personalization", [])
    if not isinstance(personalization, list) or any(
        not isinstance(p, str) for p in personalization
    ):
        raise ApiException(
            400, "personalization_invalid", "personalization must be a list of strings"
        )
    query = UserQuery(
        departure_id=departure,
        month=month,
        interests=frozenset(interests),
        personalization=frozenset(personalization),
    )
    try:
        validate_query(catalog, query)
    except UnknownDeparture as exc:
        raise ApiException(404, "unknown_departure", str(exc)) from None
    except MonthOutOfRange as exc:
        raise ApiException(400, "month_out_of_range", str(exc)) from None
    except UnknownInterest as exc:
        raise ApiException(400, "unknown_interest", str(exc)) from None
    except UnknownPersonalization as exc:
        raise ApiException(400, "unknown_personalization", str(exc)) from None
    return query


def _require_number(obj: dict, key: str, code: str, minimum: float = 0.0) -> float:
    value = obj.get(key)
    if isinstance(value, bool) or not isinstance(value, (int, float)) or value < minimum:
        raise ApiException(400, code, f"{key} must be a number >= {minimum}, got {value!r}")
    return float(value)


def parse_booking_draft(body: dict, catalog: Catalog) -> BookingDraft:
    city_id = body.get("city_id")
    if not isinstance(city_id, str) or not city_id:
        raise ApiException(400, "city_id_invalid", "city_id must be a non-empty string")
    try:
        get_city(catalog, city_id)
    except CityNotFound as exc:
        raise ApiException(404, "unknown_city", str(exc)) from None

    transport = body.get("transport")
    if not isinstance(transport, dict) or transport.get("mode") not in MODES:
        raise ApiException(400, "transport_invalid", "transport must carry a valid mode")
    estimate = TransportEstimate(
        mode=transport["mode"],
        distance_km=_require_number(transport, "distance_km", "transport_invalid"),
        co2e_kg=_require_number(transport, "co2e_kg", "transport_invalid"),
        cost_eur=_require_number(transport, "cost_eur", "transport_invalid"),
        duration_h=_require_number(transport, "duration_h", "transport_invalid"),
    )

    accommodation = body.get("accommodation")
    if not isinstance(accommodation, dict) or not isinstance(accommodation.get("id"), str):
        raise ApiException(400, "accommodation_invalid", "accommodation must carry an id")
    option = AccommodationOption(
        id=accommodation["id"],
        name=str(accommodation.get("name", accommodation["id"])),
        eur_per_night=_require_number(accommodation, "eur_per_night", "accommodation_invalid"),
        co2e_kg_per_night=_require_number(
            accommodation, "co2e_kg_per_night", "accommodation_invalid"
        ),
        eco_label=bool(accommodation.get("eco_label", False)),
    )

    nights = body.get("nights")
    if not isinstance(nights, int) or isinstance(nights, bool) or nights < 1:
        raise ApiException(400, "nights_invalid", f"nights must be a positive integer, got {nights!r}")
    group_size = body.get("group_size")
    if not isinstance(group_size, int) or isinstance(group_size, bool) or group_size < 1:
        raise ApiException(
            400, "group_size_invalid", f"group_size must be a positive integer, got {group_size!r}"
        )

    try:
        return BookingDraft(
            city_id=city_id,
            transport=estimate,
            accommodation=option,
            nights=nights,
            group_size=group_size,
        )
    except InvalidDraft as exc:
        raise ApiException(400, "draft_invalid", str(exc)) from None


# ---------------------------------------------------------------------------
# Application factory
# ---------------------------------------------------------------------------

def create_app(
    config: EngineConfig | None = None,
    catalog: Catalog | None = None,
) -> FastAPI:
    """Build the service. The catalog loads during startup unless one is
    injected; until then every endpoint answers 503 catalog_loading."""
    cfg = config or load_config(None)

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        state: EngineState = app.state.engine
        if state.catalog is None:
            mapping = ColumnMapping.from_ini(cfg.column_mapping)
            state.catalog = load_catalog(cfg.catalog_csv, mapping)
        state.defaults = default_weights(cfg)
        state.receipt_store = ReceiptStore(cfg.receipts_path)
        state.event_log = EventLog(cfg.events_path)
        state.event_log.open()
        try:
            yield
        finally:
            state.event_log.close()

    app = FastAPI(title="ecotrip", version=__version__, lifespan=lifespan)
    app.state.engine = EngineState(config=cfg, catalog=catalog)

    @app.exception_handler(ApiException)
    async def on_api_exception(request: Request, exc: ApiException):
        return _error_response(exc.http_status, exc.machine_code, exc.human_message)

    @app.exception_handler(StarletteHTTPException)
    async def on_http_exception(request: Request, exc: StarletteHTTPException):
        codes = {404: "not_found", 405: "method_not_allowed"}
        return _error_response(
            exc.status_code, codes.get(exc.status_code, "http_error"), str(exc.detail)
        )

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request, exc: RequestValidationError):
        return _error_response(400, "invalid_json", "request body failed validation")

    @app.exception_handler(Exception)
    async def on_unhandled(request: Request, exc: Exception):
        return _error_response(500, "internal_error", "unexpected server error")

    def engine() -> EngineState:
        return app.state.engine

    def ready_catalog() -> Catalog:
        state = engine()
        if state.catalog is None:
            raise ApiException(503, "catalog_loading", "catalog is not loaded yet")
        return state.catalog

    @app.get("/api/health")
    async def health():
        catalog = ready_catalog()
        return {
            "status": "ok",
            "version": __version__,
            "catalog_fingerprint": catalog.source_fingerprint,
            "city_count": len(catalog),
        }

    @app.post("/api/recommendations")
    async def recommendations(request: Request):
        state = engine()
        catalog = ready_catalog()
        body = await _json_body(request)
        query = parse_user_query(body, catalog)
        try:
            return build_recommendation_payload(catalog, query, state.defaults, state.config)
        except EmptyCandidateSet as exc:
            raise ApiException(400, "empty_candidate_set", str(exc)) from None

    @app.get("/api/cities/{city_id}/transport")
    async def city_transport(city_id: str, request: Request):
        state = engine()
        catalog = ready_catalog()
        departure_id = request.query_params.get("from", "")
        if not departure_id:
            raise ApiException(400, "departure_id_invalid", "missing ?from= departure id")
        try:
            origin = get_city(catalog, departure_id)
            dest = get_city(catalog, city_id)
        except CityNotFound as exc:
            raise ApiException(404, "unknown_city", str(exc)) from None
        if origin.id == dest.id:
            raise ApiException(400, "same_city", "departure and destination are the same city")
        estimates = estimate_transport(
            origin, dest, state.config.modes, state.config.flight_min_route_km
        )
        co2es = [e.co2e_kg for e in estimates]
        profile = radar_profile(estimates)
        return {
            "from": origin.id,
            "city_id": dest.id,
            "estimates": [
                estimate_to_dict(e, classify_traffic_light(e.co2e_kg, co2es))
                for e in estimates
            ],
            "radar": profile.axes,
        }

    @app.get("/api/cities/{city_id}/accommodations")
    async def city_accommodations(city_id: str):
        state = engine()
        catalog = ready_catalog()
        try:
            city = get_city(catalog, city_id)
        except CityNotFound as exc:
            raise ApiException(404, "unknown_city", str(exc)) from None
        return {
            "city_id": city.id,
            "options": [
                {
                    "id": o.id,
                    "name": o.name,
                    "eur_per_night": o.eur_per_night,
                    "co2e_kg_per_night": o.co2e_kg_per_night,
                    "eco_label": o.eco_label,
                }
                for o in accommodation_options(city, state.config.accommodation_bands)
            ],
        }

    def _ranked_selection(
        catalog: Catalog, query: UserQuery, city_id: str, state: EngineState
    ) -> tuple[list[ScoredCity], ScoredCity]:
        if city_id == query.departure_id:
            raise ApiException(400, "same_city", "selected city equals the departure city")
        try:
            ranked = rank_destinations(catalog, query, state.defaults, state.config)
        except EmptyCandidateSet as exc:
            raise ApiException(400, "empty_candidate_set", str(exc)) from None
        selected = next((s for s in ranked if s.city_id == city_id), None)
        if selected is None:
            raise ApiException(404, "unknown_city", f"no city with id {city_id!r}")
        return ranked, selected

    @app.post("/api/bookings")
    async def bookings(request: Request):
        state = engine()
        catalog = ready_catalog()
        body = await _json_body(request)
        draft = parse_booking_draft(body, catalog)
        if "query" not in body or not isinstance(body["query"], dict):
            raise ApiException(400, "query_invalid", "booking needs the originating query")
        query = parse_user_query(body["query"], catalog)
        ranked, selected = _ranked_selection(catalog, query, draft.city_id, state)
        try:
            receipt = confirm_booking(draft, catalog, state.receipt_store)
        except UnknownCity as exc:
            raise ApiException(404, "unknown_city", str(exc)) from None
        except PersistenceFailure as exc:
            raise ApiException(500, "persistence_failure", str(exc)) from None
        banner = banner_for_selection(
            selected,
            ranked,
            CONTEXT_CONFIRMATION,
            chosen_co2e_kg=draft.transport.co2e_kg,
            constants=state.config.nudge,
        )
        return JSONResponse(
            status_code=201,
            content={
                "receipt": receipt_to_dict(receipt),
                "banner": banner_to_dict(banner) if banner else None,
            },
        )

    @app.post("/api/nudges")
    async def nudges(request: Request):
        state = engine()
        catalog = ready_catalog()
        body = await _json_body(request)
        context = body.get("context")
        if context not in NUDGE_CONTEXTS:
            raise ApiException(400, "context_invalid", f"context must be one of {NUDGE_CONTEXTS}")
        if not isinstance(body.get("query"), dict):
            raise ApiException(400, "query_invalid", "nudge evaluation needs a query object")
        query = parse_user_query(body["query"], catalog)
        city_id = body.get("city_id")
        if not isinstance(city_id, str) or not city_id:
            raise ApiException(400, "city_id_invalid", "city_id must be a non-empty string")
        ranked, selected = _ranked_selection(catalog, query, city_id, state)
        banner = banner_for_selection(
            selected, ranked, context, constants=state.config.nudge
        )
        return {"banner": banner_to_dict(banner) if banner else None}

    @app.post("/api/events")
    async def events(request: Request):
        state = engine()
        ready_catalog()
        body = await _json_body(request)
        try:
            event = validate_event(body, state.config.event_kinds)
        except InvalidEvent as exc:
            codes = {
                "session_id": "session_id_invalid",
                "seq": "seq_invalid",
                "kind": "unknown_event_kind",
                "payload": "payload_invalid",
            }
            raise ApiException(400, codes[exc.field], str(exc)) from None
        status = state.event_log.submit(event)
        return JSONResponse(
            status_code=202,
            content={"status": "duplicate" if status == DUPLICATE else "accepted"},
        )

    return app
