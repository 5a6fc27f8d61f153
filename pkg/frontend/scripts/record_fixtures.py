"""Record API fixtures for the frontend test suite.

Drives the recommendation service over HTTP (in-process ASGI transport) and
freezes representative responses as JSON so the UI snapshot tests compare
rendered output against real server payloads. Also emits a shared set of
booking impact vectors with server-computed expectations, used to prove the
mirrored client formula matches compute_impact.

Run from the repository root after installing the package with test extras:

    python3 frontend/scripts/record_fixtures.py
"""

from __future__ import annotations

import json
import random
from dataclasses import replace
from pathlib import Path

from fastapi.testclient import TestClient

from ecotrip.booking import AccommodationOption, BookingDraft, compute_impact
from ecotrip.config import EngineConfig
from ecotrip.service import create_app
from ecotrip.transport import TransportEstimate

ROOT = Path(__file__).resolve().parents[2]
FIXTURES = ROOT / "frontend" / "tests" / "fixtures"

QUERY = {
    "departure_id": "munich",
    "month": 7,
    "interests": ["cultural", "culinary"],
    "personalization": [],
}


def record(client: TestClient) -> dict[str, object]:
    out: dict[str, object] = {}

    rec = client.post("/api/recommendations", json=QUERY)
    assert rec.status_code == 200, rec.text
    out["recommendations.json"] = rec.json()

    results = rec.json()["results"]
    far = next(r for r in results if r["city_id"] == "lisbon")
    near = next(r for r in results if r["city_id"] == "zurich")

    long_haul = client.get(f"/api/cities/{far['city_id']}/transport", params={"from": "munich"})
    assert long_haul.status_code == 200 and len(long_haul.json()["estimates"]) == 3
    out["transport_long.json"] = long_haul.json()

    short_haul = client.get(
        f"/api/cities/{near['city_id']}/transport", params={"from": "munich"}
    )
    assert short_haul.status_code == 200 and len(short_haul.json()["estimates"]) == 2
    out["transport_short.json"] = short_haul.json()

    stays = client.get(f"/api/cities/{near['city_id']}/accommodations")
    assert stays.status_code == 200
    out["accommodations.json"] = stays.json()

    # green booking: best transport of a green-class city plus the eco stay
    green_transport = min(short_haul.json()["estimates"], key=lambda e: e["co2e_kg"])
    eco_stay = next(o for o in stays.json()["options"] if o["eco_label"])
    green_draft = {
        "city_id": near["city_id"],
        "transport": {k: v for k, v in green_transport.items() if k != "traffic_light"},
        "accommodation": eco_stay,
        "nights": 3,
        "group_size": 2,
        "query": QUERY,
    }
    booked = client.post("/api/bookings", json=green_draft)
    assert booked.status_code == 201, booked.text
    assert booked.json()["banner"]["kind"] == "positive_reinforcement"
    out["booking_green.json"] = booked.json()

    # red booking: flight to the highest-CO2e destination available
    red_city = max(results, key=lambda r: r["min_co2e_kg"])
    red_transport_resp = client.get(
        f"/api/cities/{red_city['city_id']}/transport", params={"from": "munich"}
    )
    assert red_transport_resp.status_code == 200
    flight = next(e for e in red_transport_resp.json()["estimates"] if e["mode"] == "flight")
    red_stays = client.get(f"/api/cities/{red_city['city_id']}/accommodations").json()
    red_draft = {
        "city_id": red_city["city_id"],
        "transport": {k: v for k, v in flight.items() if k != "traffic_light"},
        "accommodation": red_stays["options"][0],
        "nights": 4,
        "group_size": 1,
        "query": QUERY,
    }
    red_booked = client.post("/api/bookings", json=red_draft)
    assert red_booked.status_code == 201, red_booked.text
    assert red_booked.json()["banner"]["kind"] == "alternative_suggestion"
    out["booking_red.json"] = red_booked.json()

    nudge = client.post(
        "/api/nudges",
        json={"context": "booking", "city_id": red_city["city_id"], "query": QUERY},
    )
    assert nudge.status_code == 200 and nudge.json()["banner"] is not None
    out["nudge_booking_red.json"] = nudge.json()

    errors = [
        client.post("/api/recommendations", json={**QUERY, "departure_id": "atlantis"}),
        client.post("/api/recommendations", json={**QUERY, "month": 13}),
        client.get("/api/cities/atlantis/transport", params={"from": "munich"}),
        client.get("/api/nowhere"),
    ]
    out["errors.json"] = [e.json() for e in errors]
    assert all(
        set(doc) == {"http_status", "machine_code", "human_message"}
        for doc in out["errors.json"]
    )
    return out


def impact_vectors(n: int = 100, seed: int = 77) -> list[dict]:
    rng = random.Random(seed)
    vectors = []
    for _ in range(n):
        transport = TransportEstimate(
            mode=rng.choice(("train", "bus", "flight")),
            distance_km=rng.uniform(50.0, 3000.0),
            co2e_kg=rng.uniform(0.5, 900.0),
            cost_eur=rng.uniform(5.0, 600.0),
            duration_h=rng.uniform(0.5, 30.0),
        )
        option = AccommodationOption(
            id="fix",
            name="fixture stay",
            eur_per_night=rng.uniform(30.0, 420.0),
            co2e_kg_per_night=rng.uniform(1.0, 45.0),
            eco_label=rng.random() < 0.5,
        )
        draft = BookingDraft(
            city_id="fixture",
            transport=transport,
            accommodation=option,
            nights=rng.randint(1, 30),
            group_size=rng.randint(1, 8),
        )
        impact = compute_impact(draft)
        vectors.append(
            {
                "inputs": {
                    "transport_co2e_kg": transport.co2e_kg,
                    "transport_cost_eur": transport.cost_eur,
                    "eur_per_night": option.eur_per_night,
                    "co2e_kg_per_night": option.co2e_kg_per_night,
                    "nights": draft.nights,
                    "group_size": draft.group_size,
                },
                "expected": {
                    "total_cost_eur": impact.total_cost_eur,
                    "total_co2e_kg": impact.total_co2e_kg,
                    "per_person_co2e_kg": impact.per_person_co2e_kg,
                },
            }
        )
    return vectors


def main() -> None:
    config = replace(
        EngineConfig(),
        catalog_csv=str(ROOT / "data" / "cities.csv"),
        column_mapping=str(ROOT / "data" / "mapping.ini"),
        receipts_path=str(FIXTURES / ".scratch" / "receipts.jsonl"),
        events_path=str(FIXTURES / ".scratch" / "events.jsonl"),
    )
    FIXTURES.mkdir(parents=True, exist_ok=True)
    with TestClient(create_app(config)) as client:
        fixtures = record(client)
    fixtures["impact_vectors.json"] = impact_vectors()
    for name, payload in fixtures.items():
        path = FIXTURES / name
        # no sort_keys: keep the server's own key order in the frozen payloads
        path.write_text(json.dumps(payload, indent=2) + "\n")
        print(f"wrote {path.relative_to(ROOT)}")
    scratch = FIXTURES / ".scratch"
    if scratch.exists():
        for child in scratch.iterdir():
            child.unlink()
        scratch.rmdir()


if __name__ == "__main__":
    main()
