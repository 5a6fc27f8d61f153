"""Transport estimates between cities: distance, CO2e, cost, duration.

All estimates derive from the great-circle distance scaled by a per-mode
detour factor; emission factors, fares, speeds, and overheads come from the
engine configuration (see config.DEFAULT_MODE_CONSTANTS for the pinned
defaults). Flights are only offered on routes of at least 300 km.

Emission classification uses a traffic-light scheme relative to the
candidate set: green up to the 33rd percentile, red above the 66th,
yellow in between (nearest-rank percentiles, so the partition is exact
and deterministic).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .config import DEFAULT_FLIGHT_MIN_ROUTE_KM, DEFAULT_MODE_CONSTANTS, ModeConstants
from .dataset import CityRecord, GeoPoint

EARTH_RADIUS_KM = 6371.0

TRAIN = "train"
BUS = "bus"
FLIGHT = "flight"
MODES = (TRAIN, BUS, FLIGHT)

GREEN = "green"
YELLOW = "yellow"
RED = "red"

RADAR_AXES = ("emissions", "cost", "duration")


class TransportError(Exception):
    pass


class SameCity(TransportError):
    pass


class EmptyCandidates(TransportError):
    pass


class TooFewModes(TransportError):
    pass


@dataclass(frozen=True)
class TransportEstimate:
    mode: str
    distance_km: float
    co2e_kg: float  # per passenger
    cost_eur: float
    duration_h: float


@dataclass(frozen=True)
class RadarProfile:
    """Per-mode axis values in [0,1]; 0 is the best option in the compared set."""

    axes: dict[str, dict[str, float]]  # mode -> {emissions, cost, duration}


def haversine_km(a: GeoPoint, b: GeoPoint) -> float:
    """Great-circle distance in km on a sphere of radius 6371.0 km.

    Symmetric in its arguments and zero exactly when the points coincide.
    """
    lat1 = math.radians(a.lat)
    lat2 = math.radians(b.lat)
    dlat = math.radians(b.lat - a.lat)
    dlon = math.radians(b.lon - a.lon)
    h = math.sin(dlat / 2.0) ** 2 + math.cos(lat1) * math.cos(lat2) * math.sin(dlon / 2.0) ** 2
    return EARTH_RADIUS_KM * 2.0 * math.atan2(math.sqrt(h), math.sqrt(1.0 - h))


def route_distance_km(
    mode: str, gc_km: float, modes: dict[str, ModeConstants] | None = None
) -> float:
    """Travelled distance for a mode: great-circle distance times its detour factor."""
    table = modes or DEFAULT_MODE_CONSTANTS
    if mode not in table:
        raise TransportError(f"unknown mode {mode!r}")
    if gc_km < 0:
        raise TransportError(f"negative distance {gc_km}")
    return gc_km * table[mode].detour_factor


def estimate_transport(
    origin: CityRecord,
    dest: CityRecord,
    modes: dict[str, ModeConstants] | None = None,
    flight_min_route_km: float = DEFAULT_FLIGHT_MIN_ROUTE_KM,
) -> list[TransportEstimate]:
    """One estimate per available mode, in (train, bus, flight) order.

    Flight is dropped when its routed distance falls below the minimum;
    raises SameCity when origin and destination are the same record.
    """
    if origin.id == dest.id:
        raise SameCity(f"{origin.id!r} to itself")
    table = modes or DEFAULT_MODE_CONSTANTS
    gc = haversine_km(origin.location, dest.location)
    estimates = []
    for mode in MODES:
        mc = table[mode]
        route = gc * mc.detour_factor
        if mode == FLIGHT and route < flight_min_route_km:
            continue
        estimates.append(
            TransportEstimate(
                mode=mode,
                distance_km=route,
                co2e_kg=route * mc.co2e_kg_per_km,
                cost_eur=mc.base_fare_eur + route * mc.cost_eur_per_km,
                duration_h=route / mc.speed_kmh + mc.overhead_h,
            )
        )
    return estimates


def nearest_rank_percentile(values: list[float], pct: float) -> float:
    """Nearest-rank percentile: the smallest value with at least pct% of the
    sample at or below it. No interpolation, so results are always sample
    members."""
    ordered = sorted(values)
    rank = math.ceil(pct / 100.0 * len(ordered))
    return ordered[max(1, min(rank, len(ordered))) - 1]


def classify_traffic_light(value: float, candidate_values: list[float]) -> str:
    """green / yellow / red relative to the candidate set's p33 and p66."""
    if not candidate_values:
        raise EmptyCandidates("candidate_values is empty")
    p33 = nearest_rank_percentile(candidate_values, 33.0)
    p66 = nearest_rank_percentile(candidate_values, 66.0)
    if value <= p33:
        return GREEN
    if value > p66:
        return RED
    return YELLOW


def radar_profile(estimates: list[TransportEstimate]) -> RadarProfile:
    """Min-max normalize emissions, cost, and duration across the estimates.

    A constant axis maps to 0.5 for every mode. Needs at least two estimates
    to compare.
    """
    if len(estimates) < 2:
        raise TooFewModes(f"need at least 2 estimates, got {len(estimates)}")
    raw = {
        "emissions": [e.co2e_kg for e in estimates],
        "cost": [e.cost_eur for e in estimates],
        "duration": [e.duration_h for e in estimates],
    }
    axes: dict[str, dict[str, float]] = {e.mode: {} for e in estimates}
    for axis in RADAR_AXES:
        lo, hi = min(raw[axis]), max(raw[axis])
        for e, v in zip(estimates, raw[axis]):
            axes[e.mode][axis] = 0.5 if hi == lo else (v - lo) / (hi - lo)
    return RadarProfile(axes=axes)
