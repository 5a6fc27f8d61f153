"""Engine configuration: pinned defaults plus INI overrides.

Every tunable the engine uses (scoring weights, transport constants, nudge
thresholds, accommodation bands, event kinds, service paths) lives here so a
deployment can override it from a single key-value file without touching
code. Values not present in the file keep the embedded defaults.

Environment overrides (highest precedence) for the operational settings:
ECOTRIP_PORT, ECOTRIP_CATALOG_CSV, ECOTRIP_COLUMN_MAPPING,
ECOTRIP_RECEIPTS_PATH, ECOTRIP_EVENTS_PATH.
"""

from __future__ import annotations

import configparser
import io
import os
from dataclasses import dataclass, field, replace


class ConfigError(Exception):
    """Raised when a config file is unreadable or malformed."""


@dataclass(frozen=True)
class ModeConstants:
    """Per-mode transport constants (detour on great-circle distance,
    per-passenger emission factor, fare model, cruise speed, fixed overhead)."""

    detour_factor: float
    co2e_kg_per_km: float
    base_fare_eur: float
    cost_eur_per_km: float
    speed_kmh: float
    overhead_h: float


@dataclass(frozen=True)
class NudgeConstants:
    interest_tolerance: float = 0.15
    max_alternatives: int = 3
    co2e_kg_per_tree_year: float = 21.0


@dataclass(frozen=True)
class AccommodationBand:
    price_min_eur: float
    price_max_eur: float
    co2e_kg_per_night: float
    eco_label: bool


DEFAULT_WEIGHTS: dict[str, float] = {
    "transport": 0.30,
    "popularity": 0.15,
    "seasonality": 0.15,
    "interest": 0.20,
    "personalization": 0.20,
}

DEFAULT_MODE_CONSTANTS: dict[str, ModeConstants] = {
    "train": ModeConstants(1.20, 0.035, 10.0, 0.12, 120.0, 0.5),
    "bus": ModeConstants(1.30, 0.027, 5.0, 0.08, 70.0, 0.5),
    "flight": ModeConstants(1.10, 0.246, 40.0, 0.10, 700.0, 2.5),
}

DEFAULT_FLIGHT_MIN_ROUTE_KM = 300.0

DEFAULT_ACCOMMODATION_BANDS: dict[str, AccommodationBand] = {
    "budget": AccommodationBand(60.0, 90.0, 20.0, False),
    "standard": AccommodationBand(100.0, 160.0, 15.0, False),
    "eco": AccommodationBand(90.0, 140.0, 6.0, True),
}

DEFAULT_EVENT_KINDS: tuple[str, ...] = (
    "query_submitted",
    "city_viewed",
    "banner_shown",
    "banner_clicked",
    "booking_confirmed",
)


@dataclass(frozen=True)
class EngineConfig:
    weights: dict[str, float] = field(default_factory=lambda: dict(DEFAULT_WEIGHTS))
    modes: dict[str, ModeConstants] = field(
        default_factory=lambda: dict(DEFAULT_MODE_CONSTANTS)
    )
    flight_min_route_km: float = DEFAULT_FLIGHT_MIN_ROUTE_KM
    nudge: NudgeConstants = NudgeConstants()
    accommodation_bands: dict[str, AccommodationBand] = field(
        default_factory=lambda: dict(DEFAULT_ACCOMMODATION_BANDS)
    )
    event_kinds: tuple[str, ...] = DEFAULT_EVENT_KINDS
    port: int = 8000
    catalog_csv: str = "data/cities.csv"
    column_mapping: str = "data/mapping.ini"
    receipts_path: str = "var/receipts.jsonl"
    events_path: str = "var/events.jsonl"


def _read_ini(path: str) -> configparser.ConfigParser:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        with open(path, "r", encoding="utf-8") as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path!r}: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"malformed config file {path!r}: {exc}") from exc
    return parser


def _get_float(section: configparser.SectionProxy, key: str, fallback: float) -> float:
    try:
        return section.getfloat(key, fallback=fallback)
    except ValueError as exc:
        raise ConfigError(f"[{section.name}] {key}: not a number") from exc


def load_config(path: str | None = None) -> EngineConfig:
    """Build an EngineConfig from defaults, an optional INI file, and env vars."""
    cfg = EngineConfig()
    if path is not None:
        cfg = _apply_ini(cfg, _read_ini(path))
    return _apply_env(cfg)


def _apply_ini(cfg: EngineConfig, parser: configparser.ConfigParser) -> EngineConfig:
    weights = dict(cfg.weights)
    if parser.has_section("weights"):
        sec = parser["weights"]
        for key in weights:
            weights[key] = _get_float(sec, key, weights[key])

    modes = dict(cfg.modes)
    for mode, defaults in modes.items():
        section = f"transport.{mode}"
        if parser.has_section(section):
            sec = parser[section]
            modes[mode] = ModeConstants(
                detour_factor=_get_float(sec, "detour_factor", defaults.detour_factor),
                co2e_kg_per_km=_get_float(sec, "co2e_kg_per_km", defaults.co2e_kg_per_km),
                base_fare_eur=_get_float(sec, "base_fare_eur", defaults.base_fare_eur),
                cost_eur_per_km=_get_float(sec, "cost_eur_per_km", defaults.cost_eur_per_km),
                speed_kmh=_get_float(sec, "speed_kmh", defaults.speed_kmh),
                overhead_h=_get_float(sec, "overhead_h", defaults.overhead_h),
            )

    flight_min = cfg.flight_min_route_km
    if parser.has_section("transport"):
        flight_min = _get_float(parser["transport"], "flight_min_route_km", flight_min)

    nudge = cfg.nudge
    if parser.has_section("nudge"):
        sec = parser["nudge"]
        nudge = NudgeConstants(
            interest_tolerance=_get_float(sec, "interest_tolerance", nudge.interest_tolerance),
            max_alternatives=sec.getint("max_alternatives", fallback=nudge.max_alternatives),
            co2e_kg_per_tree_year=_get_float(
                sec, "co2e_kg_per_tree_year", nudge.co2e_kg_per_tree_year
            ),
        )

    bands = dict(cfg.accommodation_bands)
    for tier, defaults in bands.items():
        section = f"accommodation.{tier}"
        if parser.has_section(section):
            sec = parser[section]
            bands[tier] = AccommodationBand(
                price_min_eur=_get_float(sec, "price_min_eur", defaults.price_min_eur),
                price_max_eur=_get_float(sec, "price_max_eur", defaults.price_max_eur),
                co2e_kg_per_night=_get_float(
                    sec, "co2e_kg_per_night", defaults.co2e_kg_per_night
                ),
                eco_label=sec.getboolean("eco_label", fallback=defaults.eco_label),
            )

    event_kinds = cfg.event_kinds
    if parser.has_section("events") and parser["events"].get("kinds"):
        event_kinds = tuple(
            k.strip() for k in parser["events"]["kinds"].split(",") if k.strip()
        )

    port = cfg.port
    catalog_csv = cfg.catalog_csv
    column_mapping = cfg.column_mapping
    receipts_path = cfg.receipts_path
    events_path = cfg.events_path
    if parser.has_section("service"):
        sec = parser["service"]
        port = sec.getint("port", fallback=port)
        catalog_csv = sec.get("catalog_csv", fallback=catalog_csv)
        column_mapping = sec.get("column_mapping", fallback=column_mapping)
        receipts_path = sec.get("receipts_path", fallback=receipts_path)
        events_path = sec.get("events_path", fallback=events_path)

    return EngineConfig(
        weights=weights,
        modes=modes,
        flight_min_route_km=flight_min,
        nudge=nudge,
        accommodation_bands=bands,
        event_kinds=event_kinds,
        port=port,
        catalog_csv=catalog_csv,
        column_mapping=column_mapping,
        receipts_path=receipts_path,
        events_path=events_path,
    )


def _apply_env(cfg: EngineConfig) -> EngineConfig:
    updates: dict[str, object] = {}
    if os.environ.get("ECOTRIP_PORT"):
        try:
            updates["port"] = int(os.environ["ECOTRIP_PORT"])
        except ValueError as exc:
            raise ConfigError("ECOTRIP_PORT must be an integer") from exc
    for env, attr in (
        ("ECOTRIP_CATALOG_CSV", "catalog_csv"),
        ("ECOTRIP_COLUMN_MAPPING", "column_mapping"),
        ("ECOTRIP_RECEIPTS_PATH", "receipts_path"),
        ("ECOTRIP_EVENTS_PATH", "events_path"),
    ):
        if os.environ.get(env):
            updates[attr] = os.environ[env]
    return replace(cfg, **updates) if updates else cfg


def format_constants(cfg: EngineConfig | None = None) -> str:
    """Render the effective constants as INI text (for --show-constants)."""
    cfg = cfg or EngineConfig()
    out = io.StringIO()
    out.write("[weights]\n")
    for key, value in cfg.weights.items():
        out.write(f"{key} = {value}\n")
    out.write("\n[transport]\n")
    out.write(f"flight_min_route_km = {cfg.flight_min_route_km}\n")
    for mode, mc in cfg.modes.items():
        out.write(f"\n[transport.{mode}]\n")
        out.write(f"detour_factor = {mc.detour_factor}\n")
        out.write(f"co2e_kg_per_km = {mc.co2e_kg_per_km}\n")
        out.write(f"base_fare_eur = {mc.base_fare_eur}\n")
        out.write(f"cost_eur_per_km = {mc.cost_eur_per_km}\n")
        out.write(f"speed_kmh = {mc.speed_kmh}\n")
        out.write(f"overhead_h = {mc.overhead_h}\n")
    out.write("\n[nudge]\n")
    out.write(f"interest_tolerance = {cfg.nudge.interest_tolerance}\n")
    out.write(f"max_alternatives = {cfg.nudge.max_alternatives}\n")
    out.write(f"co2e_kg_per_tree_year = {cfg.nudge.co2e_kg_per_tree_year}\n")
    for tier, band in cfg.accommodation_bands.items():
        out.write(f"\n[accommodation.{tier}]\n")
        out.write(f"price_min_eur = {band.price_min_eur}\n")
        out.write(f"price_max_eur = {band.price_max_eur}\n")
        out.write(f"co2e_kg_per_night = {band.co2e_kg_per_night}\n")
        out.write(f"eco_label = {str(band.eco_label).lower()}\n")
    return out.getvalue()
