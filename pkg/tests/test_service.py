"""HTTP surface: endpoint contracts, the uniform error document, and the
service's agreement with the in-process engine."""

from __future__ import annotations

import pytest
from fastapi.testclient import TestClient

from conftest import DATA_CSV, DATA_MAPPING
from ecotrip.booking import ReceiptStore, accommodation_options, compute_impact
from ecotrip.dataset import ColumnMapping, get_city, load_catalog
from ecotrip.scoring import UserQuery, rank_destinations
from ecotrip.service import build_recommendation_payload, create_app
from ecotrip.transport import estimate_transport

QUERY = {"departure_id": "munich", "month": 7, "interests": ["cultural", "culinary"]}


@pytest.fixture
def service(engine_config):
    app = create_app(engine_config)
    with TestClient(app) as client:
        yield client


def assert_api_error(response, status, code):
    assert response.status_code == status
    body = response.json()
    assert set(body) == {"http_status", "machine_code", "human_message"}
    assert body["http_status"] == status
    assert body["machine_code"] == code
    assert isinstance(body["human_message"], str) and body["human_message"]


def booking_body(city_id, transport, accommodation, nights=3, group_size=2, query=QUERY):
    return {
        "city_id": city_id,
        "transport": transport,
        "accommodation": accommodation,
        "nights": nights,
        "group_size": group_size,
        "query": query,
    }


# -- health ---------------------------------------------------------------

def test_health_reports_catalog(service):
    body = service.get("/api/health").json()
    assert body["status"] == "ok"
    assert isinstance(body["version"], str)
    assert len(body["catalog_fingerprint"]) == 64
    assert body["city_count"] == 18


def test_health_is_503_before_startup(engine_config):
    client = TestClient(create_app(engine_config))  # no context manager: no startup
    assert_api_error(client.get("/api/health"), 503, "catalog_loading")


def test_health_is_stable(service):
    assert service.get("/api/health").json() == service.get("/api/health").json()


# -- recommendations --------------------------------------------------------

def test_recommendations_match_engine(service, data_catalog, engine_config):
    response = service.post("/api/recommendations", json=QUERY)
    assert response.status_code == 200
    results = response.json()["results"]

    query = UserQuery("munich", 7, frozenset(QUERY["interests"]), frozenset())
    ranked = rank_destinations(data_catalog, query, config=engine_config)
    assert [r["city_id"] for r in results] == [s.city_id for s in ranked]
    assert [r["rank"] for r in results] == list(range(1, len(ranked) + 1))
    for r, s in zip(results, ranked):
        assert r["score"] == pytest.approx(s.score, abs=1e-12)


def test_recommendations_payload_is_verbatim_engine_document(
    service, data_catalog, engine_config
):
    response = service.post("/api/recommendations", json=QUERY)
    query = UserQuery("munich", 7, frozenset(QUERY["interests"]), frozenset())
    assert response.json() == build_recommendation_payload(
        data_catalog, query, config=engine_config
    )


def test_recommendations_results_are_annotated(service):
    results = service.post("/api/recommendations", json=QUERY).json()["results"]
    assert results[0]["badge"] == "best_match"
    assert all(r["traffic_light"] in {"green", "yellow", "red"} for r in results)
    assert all("lat" in r["location"] and "lon" in r["location"] for r in results)
    assert "munich" not in {r["city_id"] for r in results}


@pytest.mark.parametrize(
    "patch,status,code",
    [
        ({"month": 0}, 400, "month_out_of_range"),
        ({"month": 13}, 400, "month_out_of_range"),
        ({"month": "july"}, 400, "month_out_of_range"),
        ({"departure_id": "atlantis"}, 404, "unknown_departure"),
        ({"departure_id": ""}, 400, "departure_id_invalid"),
        ({"interests": ["spelunking"]}, 400, "unknown_interest"),
        ({"interests": "cultural"}, 400, "interests_invalid"),
        ({"personalization": ["charisma"]}, 400, "unknown_personalization"),
    ],
)
def test_recommendation_request_errors(service, patch, status, code):
    body = dict(QUERY)
    body.update(patch)
    assert_api_error(service.post("/api/recommendations", json=body), status, code)


# -- transport ----------------------------------------------------------------

def test_transport_matches_engine(service, data_catalog, engine_config):
    body = service.get("/api/cities/paris/transport", params={"from": "munich"}).json()
    origin = get_city(data_catalog, "munich")
    dest = get_city(data_catalog, "paris")
    expected = estimate_transport(
        origin, dest, engine_config.modes, engine_config.flight_min_route_km
    )
    assert [e["mode"] for e in body["estimates"]] == [e.mode for e in expected]
    for got, want in zip(body["estimates"], expected):
        assert got["co2e_kg"] == pytest.approx(want.co2e_kg, abs=1e-9)
        assert got["traffic_light"] in {"green", "yellow", "red"}
    assert set(body["radar"]) == {e.mode for e in expected}
    for axes in body["radar"].values():
        assert set(axes) == {"emissions", "cost", "duration"}
        assert all(0.0 <= v <= 1.0 for v in axes.values())


def test_transport_lights_rank_the_modes(service):
    body = service.get("/api/cities/paris/transport", params={"from": "munich"}).json()
    by_mode = {e["mode"]: e for e in body["estimates"]}
    assert by_mode["bus"]["traffic_light"] == "green"
    assert by_mode["flight"]["traffic_light"] == "red"


def test_transport_errors(service):
    assert_api_error(
        service.get("/api/cities/paris/transport", params={"from": "paris"}),
        400,
        "same_city",
    )
    assert_api_error(service.get("/api/cities/paris/transport"), 400, "departure_id_invalid")
    assert_api_error(
        service.get("/api/cities/atlantis/transport", params={"from": "munich"}),
        404,
        "unknown_city",
    )


# -- accommodations -------------------------------------------------------------

def test_accommodations_match_engine(service, data_catalog, engine_config):
    body = service.get("/api/cities/paris/accommodations").json()
    city = get_city(data_catalog, "paris")
    expected = accommodation_options(city, engine_config.accommodation_bands)
    assert body["city_id"] == "paris"
    assert [o["id"] for o in body["options"]] == [o.id for o in expected]
    for got, want in zip(body["options"], expected):
        assert got["eur_per_night"] == want.eur_per_night
        assert got["eco_label"] is want.eco_label


def test_accommodations_unknown_city(service):
    assert_api_error(service.get("/api/cities/atlantis/accommodations"), 404, "unknown_city")


# -- bookings -------------------------------------------------------------------

def pick(service, city_id, mode, tier, query=QUERY):
    """Assemble a draft body from the service's own endpoints."""
    estimates = service.get(
        f"/api/cities/{city_id}/transport", params={"from": query["departure_id"]}
    ).json()["estimates"]
    transport = next(e for e in estimates if e["mode"] == mode)
    options = service.get(f"/api/cities/{city_id}/accommodations").json()["options"]
    accommodation = next(o for o in options if o["id"].endswith(tier))
    return transport, accommodation


def test_clean_booking_earns_reinforcement(service):
    transport, accommodation = pick(service, "zurich", "train", "eco")
    response = service.post(
        "/api/bookings", json=booking_body("zurich", transport, accommodation)
    )
    assert response.status_code == 201
    body = response.json()
    receipt = body["receipt"]
    assert receipt["draft"]["city_id"] == "zurich"
    assert receipt["booking_id"]
    assert body["banner"]["kind"] == "positive_reinforcement"
    assert body["banner"]["reinforcement"]["co2e_saved_kg"] > 0


def test_dirty_booking_gets_strictly_cleaner_alternatives(service):
    query = {"departure_id": "lisbon", "month": 7, "interests": []}
    transport, accommodation = pick(service, "stockholm", "flight", "standard", query)
    response = service.post(
        "/api/bookings",
        json=booking_body("stockholm", transport, accommodation, query=query),
    )
    assert response.status_code == 201
    banner = response.json()["banner"]
    assert banner["kind"] == "alternative_suggestion"
    assert 1 <= len(banner["alternatives"]) <= 3
    assert all(a["co2e_saving_kg"] > 0 for a in banner["alternatives"])


def test_booking_totals_follow_impact_arithmetic(service):
    transport, accommodation = pick(service, "paris", "train", "eco")
    nights, group = 3, 2
    impact = service.post(
        "/api/bookings",
        json=booking_body("paris", transport, accommodation, nights, group),
    ).json()["receipt"]["impact"]
    per_person = transport["co2e_kg"] + nights * accommodation["co2e_kg_per_night"]
    assert impact["per_person_co2e_kg"] == pytest.approx(per_person, abs=1e-9)
    assert impact["total_co2e_kg"] == pytest.approx(per_person * group, abs=1e-9)
    assert impact["total_cost_eur"] == pytest.approx(
        (transport["cost_eur"] + nights * accommodation["eur_per_night"]) * group, abs=1e-9
    )


def test_booking_receipt_lands_in_store(service, engine_config):
    transport, accommodation = pick(service, "paris", "train", "budget")
    receipt = service.post(
        "/api/bookings", json=booking_body("paris", transport, accommodation)
    ).json()["receipt"]
    stored = ReceiptStore(engine_config.receipts_path).get(receipt["booking_id"])
    assert stored is not None
    assert stored.draft.city_id == "paris"


def test_booking_request_errors(service):
    transport, accommodation = pick(service, "paris", "train", "budget")
    good = booking_body("paris", transport, accommodation)

    bad = dict(good, group_size=0)
    assert_api_error(service.post("/api/bookings", json=bad), 400, "group_size_invalid")
    bad = dict(good, nights=0)
    assert_api_error(service.post("/api/bookings", json=bad), 400, "nights_invalid")
    bad = dict(good, city_id="atlantis")
    assert_api_error(service.post("/api/bookings", json=bad), 404, "unknown_city")
    bad = dict(good, transport={"mode": "teleport"})
    assert_api_error(service.post("/api/bookings", json=bad), 400, "transport_invalid")
    bad = dict(good)
    del bad["query"]
    assert_api_error(service.post("/api/bookings", json=bad), 400, "query_invalid")


# -- nudges ---------------------------------------------------------------------

def test_nudge_endpoint_explains_a_selection(service):
    top = service.post("/api/recommendations", json=QUERY).json()["results"][0]
    response = service.post(
        "/api/nudges", json={"query": QUERY, "city_id": top["city_id"], "context": "explore"}
    )
    assert response.status_code == 200
    banner = response.json()["banner"]
    assert banner is None or banner["kind"] in {
        "positive_reinforcement",
        "alternative_suggestion",
    }


def test_nudge_request_errors(service):
    assert_api_error(
        service.post(
            "/api/nudges", json={"query": QUERY, "city_id": "paris", "context": "dream"}
        ),
        400,
        "context_invalid",
    )
    assert_api_error(
        service.post("/api/nudges", json={"city_id": "paris", "context": "explore"}),
        400,
        "query_invalid",
    )
    assert_api_error(
        service.post(
            "/api/nudges", json={"query": QUERY, "city_id": "munich", "context": "explore"}
        ),
        400,
        "same_city",
    )


# -- events -----------------------------------------------------------------------

def event(seq, kind="city_viewed"):
    return {"session_id": "web-1", "seq": seq, "kind": kind, "payload": {}}


def test_event_ingestion_and_dedupe(service):
    first = service.post("/api/events", json=event(1))
    assert first.status_code == 202
    assert first.json() == {"status": "accepted"}
    again = service.post("/api/events", json=event(1))
    assert again.status_code == 202
    assert again.json() == {"status": "duplicate"}


@pytest.mark.parametrize(
    "patch,code",
    [
        ({"kind": "teleported"}, "unknown_event_kind"),
        ({"seq": 0}, "seq_invalid"),
        ({"session_id": ""}, "session_id_invalid"),
        ({"payload": "x"}, "payload_invalid"),
    ],
)
def test_event_request_errors(service, patch, code):
    body = event(1)
    body.update(patch)
    assert_api_error(service.post("/api/events", json=body), 400, code)


def test_events_exactly_once_after_graceful_shutdown(engine_config):
    app = create_app(engine_config)
    with TestClient(app) as client:
        for seq in (2, 1, 1, 4, 2, 3):  # out of order plus duplicates
            assert client.post("/api/events", json=event(seq)).status_code == 202
    # the context exit runs shutdown, which flushes and closes the log
    import json as jsonlib

    with open(engine_config.events_path, encoding="utf-8") as fh:
        stored = [jsonlib.loads(line) for line in fh if line.strip()]
    assert [r["seq"] for r in stored] == [1, 2, 3, 4]


# -- uniform error document ---------------------------------------------------------

def test_every_error_surface_speaks_the_same_document(service):
    cases = [
        (service.get("/api/nowhere"), 404, "not_found"),
        (service.delete("/api/health"), 405, "method_not_allowed"),
        (
            service.post(
                "/api/recommendations",
                content=b"{not json",
                headers={"content-type": "application/json"},
            ),
            400,
            "invalid_json",
        ),
        (
            service.post(
                "/api/recommendations",
                content=b'["list", "not", "object"]',
                headers={"content-type": "application/json"},
            ),
            400,
            "invalid_json",
        ),
    ]
    for response, status, code in cases:
        assert_api_error(response, status, code)


def test_catalog_paths_resolve_from_config(tmp_path):
    from dataclasses import replace

    from ecotrip.config import EngineConfig

    cfg = replace(
        EngineConfig(),
        catalog_csv=str(DATA_CSV),
        column_mapping=str(DATA_MAPPING),
        receipts_path=str(tmp_path / "r.jsonl"),
        events_path=str(tmp_path / "e.jsonl"),
    )
    catalog = load_catalog(str(DATA_CSV), ColumnMapping.from_ini(str(DATA_MAPPING)))
    app = create_app(cfg, catalog=catalog)  # injected catalog skips the load
    with TestClient(app) as client:
        assert client.get("/api/health").json()["city_count"] == len(catalog)
