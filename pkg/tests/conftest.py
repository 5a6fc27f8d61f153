"""Shared fixtures: the bundled catalog, synthetic catalog builders, and the
fuzz helpers the property/acceptance tests draw from."""

from __future__ import annotations

import random
import sys
from dataclasses import replace
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

from ecotrip.config import EngineConfig
from ecotrip.dataset import Catalog, CityRecord, ColumnMapping, GeoPoint, load_catalog

CATEGORIES = ("cultural", "culinary", "nature", "nightlife")

DATA_CSV = ROOT / "data" / "cities.csv"
DATA_MAPPING = ROOT / "data" / "mapping.ini"


def make_city(
    city_id: str,
    lat: float,
    lon: float,
    popularity: int = 1000,
    seasonality: tuple[float, ...] | float = 0.5,
    interests: dict[str, float] | None = None,
    air_quality: float = 0.5,
    climate_vulnerability: float = 0.5,
    walkability: float = 0.5,
) -> CityRecord:
    if isinstance(seasonality, (int, float)):
        seasonality = (float(seasonality),) * 12
    return CityRecord(
        id=city_id,
        name=city_id.replace("-", " ").title(),
        country="Testland",
        location=GeoPoint(lat, lon),
        popularity_count=popularity,
        seasonality=tuple(seasonality),
        interest_scores=dict(interests or {}),
        air_quality=air_quality,
        climate_vulnerability=climate_vulnerability,
        walkability=walkability,
    )


def make_catalog(cities: list[CityRecord], categories=CATEGORIES) -> Catalog:
    return Catalog(
        cities=tuple(sorted(cities, key=lambda c: c.id)),
        categories=frozenset(categories),
        source_fingerprint="0" * 64,
    )


def fuzz_city(rng: random.Random, index: int, lon_span: float = 340.0) -> CityRecord:
    """A random but valid city; equator-adjacent so distances stay sane."""
    return make_city(
        f"city-{index:02d}",
        lat=rng.uniform(-60.0, 70.0),
        lon=rng.uniform(-lon_span / 2.0, lon_span / 2.0),
        popularity=rng.randrange(0, 5_000_000),
        seasonality=tuple(round(rng.random(), 3) for _ in range(12)),
        interests={cat: round(rng.random(), 3) for cat in CATEGORIES},
        air_quality=round(rng.random(), 3),
        climate_vulnerability=round(rng.random(), 3),
        walkability=round(rng.random(), 3),
    )


def fuzz_catalog(rng: random.Random, n_cities: int) -> Catalog:
    return make_catalog([fuzz_city(rng, i) for i in range(n_cities)])


def city_as_dict(city: CityRecord) -> dict:
    """The plain-dict shape the brute-force oracle consumes."""
    return {
        "id": city.id,
        "lat": city.location.lat,
        "lon": city.location.lon,
        "popularity": city.popularity_count,
        "seasonality": list(city.seasonality),
        "interests": dict(city.interest_scores),
        "air_quality": city.air_quality,
        "climate_vulnerability": city.climate_vulnerability,
        "walkability": city.walkability,
    }


@pytest.fixture(scope="session")
def data_catalog() -> Catalog:
    mapping = ColumnMapping.from_ini(str(DATA_MAPPING))
    return load_catalog(str(DATA_CSV), mapping)


@pytest.fixture
def engine_config(tmp_path) -> EngineConfig:
    return replace(
        EngineConfig(),
        catalog_csv=str(DATA_CSV),
        column_mapping=str(DATA_MAPPING),
        receipts_path=str(tmp_path / "receipts.jsonl"),
        events_path=str(tmp_path / "events.jsonl"),
    )


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion at the end of the run."""
    lines = []
    for outcome, label in (("passed", "PASS"), ("failed", "FAIL"), ("error", "FAIL")):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py" in nodeid and "::" in nodeid:
                lines.append((nodeid.split("::")[-1], label))
    if not lines:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria:")
    for name, label in sorted(set(lines)):
        terminalreporter.write_line(f"  {label}: {name}")
