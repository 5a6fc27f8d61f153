"""Simulated booking flow: synthetic accommodation, impact math, receipts.

Accommodation has no data source, so three options per city (budget /
standard / eco) are generated deterministically from a hash of the city id,
with prices inside the configured bands and fixed per-tier nightly
emissions. Impact is linear: transport is per passenger, accommodation per
night, and the whole thing scales with group size as a single final
multiplication so doubling the group doubles the totals exactly.

Receipts persist to a local append-only JSONL store (one self-describing
record per line, UTF-8) that survives restarts.
"""

from __future__ import annotations

import hashlib
import json
import threading
import uuid
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from .config import DEFAULT_ACCOMMODATION_BANDS, AccommodationBand
from .dataset import Catalog, CityRecord, CityNotFound, get_city
from .transport import TransportEstimate

ACCOMMODATION_TIERS = ("budget", "standard", "eco")
_TIER_NAMES = {"budget": "Budget Stay", "standard": "Comfort Hotel", "eco": "Eco Lodge"}


class BookingError(Exception):
    pass


class UnknownCity(BookingError):
    def __init__(self, city_id: str):
        self.city_id = city_id
        super().__init__(f"cannot book unknown city {city_id!r}")


class PersistenceFailure(BookingError):
    pass


class InvalidDraft(BookingError):
    pass


@dataclass(frozen=True)
class AccommodationOption:
    id: str
    name: str
    eur_per_night: float
    co2e_kg_per_night: float
    eco_label: bool


@dataclass(frozen=True)
class BookingDraft:
    city_id: str
    transport: TransportEstimate
    accommodation: AccommodationOption
    nights: int
    group_size: int

    def __post_init__(self) -> None:
        if not isinstance(self.nights, int) or self.nights < 1:
            raise InvalidDraft(f"nights must be a positive integer, got {self.nights!r}")
        if not isinstance(self.group_size, int) or self.group_size < 1:
            raise InvalidDraft(
                f"group_size must be a positive integer, got {self.group_size!r}"
            )


@dataclass(frozen=True)
class BookingImpact:
    total_cost_eur: float
    total_co2e_kg: float
    per_person_co2e_kg: float


@dataclass(frozen=True)
class BookingReceipt:
    booking_id: str
    draft: BookingDraft
    impact: BookingImpact
    created_at: datetime


def _band_fraction(city_id: str, tier: str) -> float:
    digest = hashlib.sha256(f"{city_id}:{tier}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") / 2**64


def accommodation_options(
    city: CityRecord, bands: dict[str, AccommodationBand] | None = None
) -> list[AccommodationOption]:
    """Three synthetic options per city, stable across calls.

    The nightly price sits inside the tier's configured band at a position
    hashed from the city id; emissions are the tier's fixed figure.
    """
    bands = bands or DEFAULT_ACCOMMODATION_BANDS
    options = []
    for tier in ACCOMMODATION_TIERS:
        band = bands[tier]
        frac = _band_fraction(city.id, tier)
        price = round(band.price_min_eur + frac * (band.price_max_eur - band.price_min_eur))
        options.append(
            AccommodationOption(
                id=f"{city.id}-{tier}",
                name=f"{_TIER_NAMES[tier]} {city.name}",
                eur_per_night=float(price),
                co2e_kg_per_night=band.co2e_kg_per_night,
                eco_label=band.eco_label,
            )
        )
    return options


def compute_impact(draft: BookingDraft) -> BookingImpact:
    """Combined financial and environmental impact of a draft.

    Group size enters exactly once, as the outermost multiplication, so the
    totals are exactly proportional to it.
    """
    per_person_co2e = (
        draft.transport.co2e_kg + draft.accommodation.co2e_kg_per_night * draft.nights
    )
    per_person_cost = (
        draft.transport.cost_eur + draft.accommodation.eur_per_night * draft.nights
    )
    return BookingImpact(
        total_cost_eur=per_person_cost * draft.group_size,
        total_co2e_kg=per_person_co2e * draft.group_size,
        per_person_co2e_kg=per_person_co2e,
    )


class ReceiptStore:
    """Append-only JSONL store for booking receipts; single writer, any readers."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()

    def append(self, receipt: BookingReceipt) -> None:
        line = json.dumps(receipt_to_dict(receipt), sort_keys=True)
        try:
            with self._lock:
                self.path.parent.mkdir(parents=True, exist_ok=True)
                with open(self.path, "a", encoding="utf-8") as fh:
                    fh.write(line + "\n")
                    fh.flush()
        except OSError as exc:
            raise PersistenceFailure(f"cannot append to {self.path}: {exc}") from exc

    def load_all(self) -> list[BookingReceipt]:
        if not self.path.exists():
            return []
        try:
            with open(self.path, "r", encoding="utf-8") as fh:
                return [receipt_from_dict(json.loads(line)) for line in fh if line.strip()]
        except OSError as exc:
            raise PersistenceFailure(f"cannot read {self.path}: {exc}") from exc

    def get(self, booking_id: str) -> BookingReceipt | None:
        for receipt in self.load_all():
            if receipt.booking_id == booking_id:
                return receipt
        return None


def confirm_booking(
    draft: BookingDraft, catalog: Catalog, store: ReceiptStore
) -> BookingReceipt:
    """Persist the booking and return its receipt with a fresh unique id."""
    try:
        get_city(catalog, draft.city_id)
    except CityNotFound:
        raise UnknownCity(draft.city_id) from None
    receipt = BookingReceipt(
        booking_id=uuid.uuid4().hex,
        draft=draft,
        impact=compute_impact(draft),
        created_at=datetime.now(timezone.utc),
    )
    store.append(receipt)
    return receipt


def receipt_to_dict(receipt: BookingReceipt) -> dict:
    d = receipt.draft
    return {
        "booking_id": receipt.booking_id,
        "created_at": receipt.created_at.isoformat(),
        "draft": {
            "city_id": d.city_id,
            "transport": {
                "mode": d.transport.mode,
                "distance_km": d.transport.distance_km,
                "co2e_kg": d.transport.co2e_kg,
                "cost_eur": d.transport.cost_eur,
                "duration_h": d.transport.duration_h,
            },
            "accommodation": {
                "id": d.accommodation.id,
                "name": d.accommodation.name,
                "eur_per_night": d.accommodation.eur_per_night,
                "co2e_kg_per_night": d.accommodation.co2e_kg_per_night,
                "eco_label": d.accommodation.eco_label,
            },
            "nights": d.nights,
            "group_size": d.group_size,
        },
        "impact": {
            "total_cost_eur": receipt.impact.total_cost_eur,
            "total_co2e_kg": receipt.impact.total_co2e_kg,
            "per_person_co2e_kg": receipt.impact.per_person_co2e_kg,
        },
    }


def receipt_from_dict(data: dict) -> BookingReceipt:
    draft = data["draft"]
    return BookingReceipt(
        booking_id=data["booking_id"],
        created_at=datetime.fromisoformat(data["created_at"]),
        draft=BookingDraft(
            city_id=draft["city_id"],
            transport=TransportEstimate(**draft["transport"]),
            accommodation=AccommodationOption(**draft["accommodation"]),
            nights=draft["nights"],
            group_size=draft["group_size"],
        ),
        impact=BookingImpact(**data["impact"]),
    )
