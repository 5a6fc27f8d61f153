"""City catalog: CSV ingestion, validation, and immutable lookup.

The engine never depends on a particular source schema. A ColumnMapping
(INI file) names the source columns for each canonical field and an optional
per-field transform, so any pre-computed city table can be adapted without
code changes:

    [columns]
    id = city                 # slugified to a lowercase id
    name = city
    country = country
    lat = lat
    lon = lng
    popularity_count = reviews
    seasonality = season_m{m} # {m} expands to months 1..12
    air_quality = aqi         # optional; defaults to 0.5 when unmapped
    climate_vulnerability = climate_risk
    walkability = walk

    [interests]               # keys declare the closed category set
    cultural = int_cultural
    culinary = int_culinary

    [transforms]              # identity | minmax-to-unit | invert | month-split
    seasonality = month-split
    air_quality = minmax-to-unit

Transforms: `identity` uses the value as-is (must already be in [0,1] for
unit fields), `minmax-to-unit` rescales the column over the whole file,
`invert` flips an already-unit value to 1 - v, and `month-split` reads the
12 monthly seasonality values either from 12 columns (template with `{m}`)
or from one delimited cell.

Rows that violate an invariant are skipped with a diagnostic; the load fails
outright when more than 10% of the data rows are rejected, when a required
column is missing, or when two rows map to the same id.
"""

from __future__ import annotations

import configparser
import csv
import hashlib
import io
import math
import re
from dataclasses import dataclass, field

TRANSFORM_IDENTITY = "identity"
TRANSFORM_MINMAX = "minmax-to-unit"
TRANSFORM_INVERT = "invert"
TRANSFORM_MONTH_SPLIT = "month-split"
TRANSFORMS = (
    TRANSFORM_IDENTITY,
    TRANSFORM_MINMAX,
    TRANSFORM_INVERT,
    TRANSFORM_MONTH_SPLIT,
)

REQUIRED_FIELDS = ("id", "name", "country", "lat", "lon", "popularity_count", "seasonality")
# Sustainability attributes may be absent from the source; they default to a
# neutral 0.5 so missing data neither rewards nor punishes a city.
OPTIONAL_UNIT_FIELDS = ("air_quality", "climate_vulnerability", "walkability")
NEUTRAL_DEFAULT = 0.5
REJECTION_BUDGET = 0.10

_SLUG_RE = re.compile(r"[^a-z0-9]+")
_LIST_SPLIT_RE = re.compile(r"[;|,\s]+")


class CatalogError(Exception):
    """Base class for catalog load/lookup failures."""


class FileUnreadable(CatalogError):
    pass


class SchemaMismatch(CatalogError):
    def __init__(self, missing_columns: list[str]):
        self.missing_columns = list(missing_columns)
        super().__init__(f"missing source columns: {', '.join(self.missing_columns)}")


class DuplicateId(CatalogError):
    def __init__(self, city_id: str):
        self.city_id = city_id
        super().__init__(f"duplicate city id {city_id!r}")


class RejectionBudgetExceeded(CatalogError):
    def __init__(self, rejected: int, total: int, diagnostics: tuple["LoadDiagnostic", ...]):
        self.rejected = rejected
        self.total = total
        self.diagnostics = diagnostics
        super().__init__(
            f"rejection_budget_exceeded: {rejected} of {total} rows rejected (budget 10%)"
        )


class CityNotFound(CatalogError):
    def __init__(self, city_id: str):
        self.city_id = city_id
        super().__init__(f"no city with id {city_id!r}")


class MonthOutOfRange(CatalogError):
    def __init__(self, month: int):
        self.month = month
        super().__init__(f"month must be 1..12, got {month}")


class MappingInvalid(CatalogError):
    pass


@dataclass(frozen=True)
class GeoPoint:
    lat: float
    lon: float

    def __post_init__(self) -> None:
        if not (-90.0 <= self.lat <= 90.0):
            raise ValueError(f"lat out of range: {self.lat}")
        if not (-180.0 <= self.lon <= 180.0):
            raise ValueError(f"lon out of range: {self.lon}")


@dataclass(frozen=True)
class CityRecord:
    id: str
    name: str
    country: str
    location: GeoPoint
    popularity_count: int
    seasonality: tuple[float, ...]  # 12 entries, index 0 = January
    interest_scores: dict[str, float]
    air_quality: float  # higher = worse air
    climate_vulnerability: float  # higher = more vulnerable
    walkability: float  # higher = more walkable


@dataclass(frozen=True)
class LoadDiagnostic:
    row: int  # 1-based line number in the source file
    field: str | None
    message: str
    severity: str  # "warning" or "rejected"

    def __str__(self) -> str:
        where = f"row {self.row}" + (f", field {self.field}" if self.field else "")
        return f"[{self.severity}] {where}: {self.message}"


@dataclass(frozen=True)
class ColumnMapping:
    columns: dict[str, str]
    interests: dict[str, str]
    transforms: dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        missing = [f for f in REQUIRED_FIELDS if f not in self.columns]
        if missing:
            raise MappingInvalid(f"mapping lacks canonical fields: {', '.join(missing)}")
        for name, tag in self.transforms.items():
            if tag not in TRANSFORMS:
                raise MappingInvalid(f"unknown transform {tag!r} for field {name!r}")
        if self.transforms.get("seasonality", TRANSFORM_MONTH_SPLIT) != TRANSFORM_MONTH_SPLIT:
            raise MappingInvalid("seasonality requires the month-split transform")

    @classmethod
    def from_ini(cls, path: str) -> "ColumnMapping":
        parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
        try:
            with open(path, "r", encoding="utf-8") as fh:
                parser.read_file(fh)
        except OSError as exc:
            raise FileUnreadable(f"cannot read mapping file {path!r}: {exc}") from exc
        except configparser.Error as exc:
            raise MappingInvalid(f"malformed mapping file {path!r}: {exc}") from exc
        columns = dict(parser["columns"]) if parser.has_section("columns") else {}
        interests = dict(parser["interests"]) if parser.has_section("interests") else {}
        transforms = dict(parser["transforms"]) if parser.has_section("transforms") else {}
        return cls(columns=columns, interests=interests, transforms=transforms)

    def transform_of(self, name: str) -> str:
        if name == "seasonality":
            return TRANSFORM_MONTH_SPLIT
        return self.transforms.get(name, TRANSFORM_IDENTITY)


@dataclass(frozen=True)
class Catalog:
    cities: tuple[CityRecord, ...]  # sorted by id
    categories: frozenset[str]
    source_fingerprint: str  # lowercase sha256 hex of the source file
    diagnostics: tuple[LoadDiagnostic, ...] = ()
    _index: dict[str, CityRecord] = field(
        default_factory=dict, compare=False, repr=False
    )

    def __post_init__(self) -> None:
        if not self._index:
            object.__setattr__(self, "_index", {c.id: c for c in self.cities})

    def __contains__(self, city_id: str) -> bool:
        return city_id in self._index

    def __len__(self) -> int:
        return len(self.cities)


def slugify(value: str) -> str:
    """Lowercase slug used for city ids ('Den Haag' -> 'den-haag');
    non-alphanumeric runs collapse to a single hyphen."""
    return _SLUG_RE.sub("-", value.strip().lower()).strip("-")


def get_city(catalog: Catalog, city_id: str) -> CityRecord:
    """Exact-match lookup; ids are case-sensitive slugs."""
    try:
        return catalog._index[city_id]
    except KeyError:
        raise CityNotFound(city_id) from None


def seasonality_of(city: CityRecord, month: int) -> float:
    """Crowdedness of the city in the given travel month (1 = January)."""
    if not isinstance(month, int) or isinstance(month, bool) or not 1 <= month <= 12:
        raise MonthOutOfRange(month)
    return city.seasonality[month - 1]


def _seasonality_columns(mapping: ColumnMapping) -> list[str]:
    source = mapping.columns["seasonality"]
    if "{m}" in source:
        return [source.replace("{m}", str(m)) for m in range(1, 13)]
    return [source]


def _mapped_source_columns(mapping: ColumnMapping) -> list[str]:
    cols: list[str] = []
    for name, src in mapping.columns.items():
        if name == "seasonality":
            cols.extend(_seasonality_columns(mapping))
        else:
            cols.append(src)
    cols.extend(mapping.interests.values())
    return cols


class _RowProblem(Exception):
    def __init__(self, field_name: str | None, message: str):
        self.field_name = field_name
        self.message = message
        super().__init__(message)


def _parse_float(raw: str, field_name: str) -> float:
    try:
        value = float(raw)
    except (TypeError, ValueError):
        raise _RowProblem(field_name, f"not a number: {raw!r}") from None
    if not math.isfinite(value):
        raise _RowProblem(field_name, f"non-finite value: {raw!r}")
    return value


def _unit_value(raw: str, field_name: str, transform: str, bounds: tuple[float, float] | None) -> float:
    value = _parse_float(raw, field_name)
    if transform == TRANSFORM_MINMAX:
        lo, hi = bounds
        value = 0.5 if hi == lo else (value - lo) / (hi - lo)
    elif transform == TRANSFORM_INVERT:
        if not 0.0 <= value <= 1.0:
            raise _RowProblem(field_name, f"invert needs a value in [0,1], got {value}")
        value = 1.0 - value
    if not 0.0 <= value <= 1.0:
        raise _RowProblem(field_name, f"value {value} outside [0,1]")
    return value


def load_catalog(csv_path: str, mapping: ColumnMapping) -> Catalog:
    """Load, validate, and index the city table.

    Raises FileUnreadable, SchemaMismatch, DuplicateId, or
    RejectionBudgetExceeded; individual bad rows below the budget are skipped
    and reported through Catalog.diagnostics.
    """
    try:
        with open(csv_path, "rb") as fh:
            blob = fh.read()
    except OSError as exc:
        raise FileUnreadable(f"cannot read {csv_path!r}: {exc}") from exc
    fingerprint = hashlib.sha256(blob).hexdigest()

    try:
        text = blob.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise FileUnreadable(f"{csv_path!r} is not valid UTF-8: {exc}") from exc

    reader = csv.DictReader(io.StringIO(text))
    if not reader.fieldnames:
        raise SchemaMismatch(sorted(set(_mapped_source_columns(mapping))))
    header = set(reader.fieldnames)
    missing = sorted({c for c in _mapped_source_columns(mapping) if c not in header})
    if missing:
        raise SchemaMismatch(missing)

    rows = list(reader)

    # First pass: column extrema for the minmax-to-unit transform.
    minmax_bounds: dict[str, tuple[float, float]] = {}
    minmax_fields = [
        (name, mapping.columns[name])
        for name in OPTIONAL_UNIT_FIELDS
        if name in mapping.columns and mapping.transform_of(name) == TRANSFORM_MINMAX
    ] + [
        (f"interest:{cat}", src)
        for cat, src in mapping.interests.items()
        if mapping.transform_of(cat) == TRANSFORM_MINMAX
    ]
    for name, src in minmax_fields:
        seen = []
        for row in rows:
            try:
                seen.append(float(row.get(src) or ""))
            except ValueError:
                continue
        if seen:
            minmax_bounds[name] = (min(seen), max(seen))

    diagnostics: list[LoadDiagnostic] = []
    for name in OPTIONAL_UNIT_FIELDS:
        if name not in mapping.columns:
            diagnostics.append(
                LoadDiagnostic(1, name, "column unmapped; defaulting to 0.5", "warning")
            )

    cities: dict[str, CityRecord] = {}
    rejected = 0
    for offset, row in enumerate(rows):
        line = offset + 2  # header is line 1
        try:
            record = _build_record(row, mapping, minmax_bounds, line, diagnostics)
        except _RowProblem as problem:
            rejected += 1
            diagnostics.append(
                LoadDiagnostic(line, problem.field_name, problem.message, "rejected")
            )
            continue
        if record.id in cities:
            raise DuplicateId(record.id)
        cities[record.id] = record

    if rows and rejected / len(rows) > REJECTION_BUDGET:
        raise RejectionBudgetExceeded(rejected, len(rows), tuple(diagnostics))

    ordered = tuple(sorted(cities.values(), key=lambda c: c.id))
    return Catalog(
        cities=ordered,
        categories=frozenset(mapping.interests),
        source_fingerprint=fingerprint,
        diagnostics=tuple(diagnostics),
    )


def _build_record(
    row: dict[str, str],
    mapping: ColumnMapping,
    bounds: dict[str, tuple[float, float]],
    line: int,
    diagnostics: list[LoadDiagnostic],
) -> CityRecord:
    def cell(source: str) -> str:
        return (row.get(source) or "").strip()

    city_id = slugify(cell(mapping.columns["id"]))
    if not city_id:
        raise _RowProblem("id", "empty id after slugification")
    name = cell(mapping.columns["name"])
    if not name:
        raise _RowProblem("name", "empty display name")
    country = cell(mapping.columns["country"])

    lat = _parse_float(cell(mapping.columns["lat"]), "lat")
    lon = _parse_float(cell(mapping.columns["lon"]), "lon")
    try:
        location = GeoPoint(lat, lon)
    except ValueError as exc:
        raise _RowProblem("location", str(exc)) from None

    pop_raw = _parse_float(cell(mapping.columns["popularity_count"]), "popularity_count")
    if pop_raw < 0 or pop_raw != int(pop_raw):
        raise _RowProblem("popularity_count", f"needs a non-negative integer, got {pop_raw}")

    season_cols = _seasonality_columns(mapping)
    if len(season_cols) == 12:
        season_raw = [cell(c) for c in season_cols]
    else:
        season_raw = [p for p in _LIST_SPLIT_RE.split(cell(season_cols[0])) if p]
    if len(season_raw) != 12:
        raise _RowProblem("seasonality", f"expected 12 monthly values, got {len(season_raw)}")
    seasonality = []
    for m, raw in enumerate(season_raw, start=1):
        v = _parse_float(raw, f"seasonality[{m}]")
        if not 0.0 <= v <= 1.0:
            raise _RowProblem(f"seasonality[{m}]", f"value {v} outside [0,1]")
        seasonality.append(v)

    interests = {}
    for cat, src in sorted(mapping.interests.items()):
        raw = cell(src)
        if not raw:
            raise _RowProblem(f"interest:{cat}", "empty interest score")
        interests[cat] = _unit_value(
            raw, f"interest:{cat}", mapping.transform_of(cat), bounds.get(f"interest:{cat}")
        )

    extras = {}
    for attr in OPTIONAL_UNIT_FIELDS:
        if attr not in mapping.columns:
            extras[attr] = NEUTRAL_DEFAULT
            continue
        raw = cell(mapping.columns[attr])
        if not raw:
            extras[attr] = NEUTRAL_DEFAULT
            diagnostics.append(
                LoadDiagnostic(line, attr, "empty cell; defaulting to 0.5", "warning")
            )
            continue
        extras[attr] = _unit_value(raw, attr, mapping.transform_of(attr), bounds.get(attr))

    return CityRecord(
        id=city_id,
        name=name,
        country=country,
        location=location,
        popularity_count=int(pop_raw),
        seasonality=tuple(seasonality),
        interest_scores=interests,
        air_quality=extras["air_quality"],
        climate_vulnerability=extras["climate_vulnerability"],
        walkability=extras["walkability"],
    )
