"""Command line entry points: validate data, rank, explain, serve, report.

Exit codes: 0 success, 1 operational failure (unreadable data, port in use),
2 usage error (bad flags, unknown ids).
"""

from __future__ import annotations

import json
import socket
from dataclasses import replace

import click

from .config import ConfigError, EngineConfig, format_constants, load_config
from .dataset import (
    Catalog,
    CityNotFound,
    ColumnMapping,
    CatalogError,
    DuplicateId,
    FileUnreadable,
    MappingInvalid,
    MonthOutOfRange,
    RejectionBudgetExceeded,
    SchemaMismatch,
    get_city,
    load_catalog,
)
from .scoring import (
    UnknownDeparture,
    UnknownInterest,
    UnknownPersonalization,
    UserQuery,
    default_weights,
    rank_destinations,
)
from .service import build_recommendation_payload

TABLE_HEADER = f"{'RANK':>4}  {'CITY':<24}{'SCORE':>10}{'CO2E_KG':>10}  {'LIGHT':<7}{'BADGE':<16}"


def _show_constants(ctx: click.Context, param: click.Parameter, value: bool) -> None:
    if not value or ctx.resilient_parsing:
        return
    click.echo(format_constants(), nl=False)
    ctx.exit(0)


@click.group()
@click.option(
    "--show-constants",
    is_flag=True,
    callback=_show_constants,
    expose_value=False,
    is_eager=True,
    help="Print the embedded engine constants as INI text and exit.",
)
@click.option("--config", "config_path", type=str, default=None, help="Engine config INI.")
@click.pass_context
def cli(ctx: click.Context, config_path: str | None) -> None:
    """Sustainable city-trip recommender."""
    ctx.ensure_object(dict)
    ctx.obj["config_path"] = config_path


def _engine_config(ctx: click.Context) -> EngineConfig:
    try:
        return load_config(ctx.obj.get("config_path"))
    except ConfigError as exc:
        raise click.ClickException(str(exc)) from None


def _load_engine(ctx: click.Context) -> tuple[EngineConfig, Catalog]:
    cfg = _engine_config(ctx)
    try:
        mapping = ColumnMapping.from_ini(cfg.column_mapping)
        catalog = load_catalog(cfg.catalog_csv, mapping)
    except CatalogError as exc:
        raise click.ClickException(str(exc)) from None
    return cfg, catalog


def _split_csv(value: str | None) -> frozenset[str]:
    if not value:
        return frozenset()
    return frozenset(part.strip() for part in value.split(",") if part.strip())


def _build_query(
    catalog: Catalog,
    departure: str,
    month: int,
    interests: str | None,
    personalize: str | None,
) -> UserQuery:
    query = UserQuery(
        departure_id=departure,
        month=month,
        interests=_split_csv(interests),
        personalization=_split_csv(personalize),
    )
    try:
        from .scoring import validate_query

        validate_query(catalog, query)
    except (
        UnknownDeparture,
        MonthOutOfRange,
        UnknownInterest,
        UnknownPersonalization,
    ) as exc:
        raise click.UsageError(str(exc)) from None
    return query


@cli.command()
@click.argument("csv_path", type=str)
@click.argument("mapping_path", type=str)
def validate(csv_path: str, mapping_path: str) -> None:
    """Load a catalog CSV against a column mapping and report diagnostics."""
    try:
        mapping = ColumnMapping.from_ini(mapping_path)
        catalog = load_catalog(csv_path, mapping)
    except FileUnreadable as exc:
        click.echo(f"file_unreadable: {exc}", err=True)
        raise SystemExit(1)
    except MappingInvalid as exc:
        click.echo(f"mapping_invalid: {exc}", err=True)
        raise SystemExit(1)
    except SchemaMismatch as exc:
        click.echo(f"schema_mismatch: missing columns: {', '.join(exc.missing_columns)}", err=True)
        raise SystemExit(1)
    except DuplicateId as exc:
        click.echo(f"duplicate_id: {exc}", err=True)
        raise SystemExit(1)
    except RejectionBudgetExceeded as exc:
        click.echo(f"rejection_budget_exceeded: {exc}", err=True)
        for diag in exc.diagnostics:
            click.echo(f"  row {diag.row}: {diag.message}", err=True)
        raise SystemExit(1)
    click.echo(f"ok: {len(catalog)} cities, {len(catalog.categories)} interest categories")
    for diag in catalog.diagnostics:
        click.echo(f"  {diag.severity} row {diag.row}: {diag.message}")


@cli.command()
@click.option("--from", "departure", required=True, help="Departure city id.")
@click.option("--month", required=True, type=click.IntRange(1, 12), help="Travel month 1..12.")
@click.option("--interests", default=None, help="Comma-separated interest categories.")
@click.option("--personalize", default=None, help="Comma-separated personalization attributes.")
@click.option("--top", "top_n", type=click.IntRange(min=1), default=None, help="Limit rows.")
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["table", "json"]),
    default="table",
    show_default=True,
)
@click.pass_context
def rank(
    ctx: click.Context,
    departure: str,
    month: int,
    interests: str | None,
    personalize: str | None,
    top_n: int | None,
    fmt: str,
) -> None:
    """Rank all candidate destinations for a query."""
    cfg, catalog = _load_engine(ctx)
    query = _build_query(catalog, departure, month, interests, personalize)
    payload = build_recommendation_payload(catalog, query, default_weights(cfg), cfg)
    if top_n is not None:
        payload["results"] = payload["results"][:top_n]
    if fmt == "json":
        click.echo(json.dumps(payload, sort_keys=True, indent=2))
        return
    click.echo(TABLE_HEADER)
    for row in payload["results"]:
        badge = row["badge"] or ""
        click.echo(
            f"{row['rank']:>4}  {row['city_id']:<24}{row['score']:>10.6f}"
            f"{row['min_co2e_kg']:>10.3f}  {row['traffic_light']:<7}{badge:<16}"
        )


@cli.command()
@click.option("--from", "departure", required=True, help="Departure city id.")
@click.option("--city", required=True, help="Destination city id to explain.")
@click.option("--month", required=True, type=click.IntRange(1, 12))
@click.option("--interests", default=None, help="Comma-separated interest categories.")
@click.pass_context
def explain(
    ctx: click.Context, departure: str, city: str, month: int, interests: str | None
) -> None:
    """Break a destination's score into weighted components."""
    cfg, catalog = _load_engine(ctx)
    if city == departure:
        raise click.UsageError("destination equals the departure city")
    try:
        get_city(catalog, city)
    except CityNotFound as exc:
        raise click.UsageError(str(exc)) from None
    query = _build_query(catalog, departure, month, interests, None)
    ranked = rank_destinations(catalog, query, default_weights(cfg), cfg)
    scored = next(s for s in ranked if s.city_id == city)
    rows = (
        ("transport", scored.components.transport, scored.weights.transport),
        ("popularity", scored.components.popularity, scored.weights.popularity),
        ("seasonality", scored.components.seasonality, scored.weights.seasonality),
        ("interest_penalty", scored.components.interest_penalty, scored.weights.interest),
        (
            "personalization_penalty",
            scored.components.personalization_penalty,
            scored.weights.personalization,
        ),
    )
    click.echo(f"city: {city} (rank {scored.rank} of {len(ranked)})")
    click.echo(f"{'component':<26}{'value':>12}{'weight':>10}{'term':>14}")
    total = 0.0
    for name, value, weight in rows:
        term = weight * value
        total += term
        click.echo(f"{name:<26}{value:>12.6f}{weight:>10.4f}{term:>14.6f}")
    click.echo(f"weighted sum: {total!r}")
    click.echo(f"score:        {scored.score!r}")


@cli.command()
@click.option("--port", type=int, default=None, help="Listen port (default from config).")
@click.option("--catalog", "catalog_csv", default=None, help="Catalog CSV path override.")
@click.option("--config", "config_path", default=None, help="Engine config INI.")
@click.pass_context
def serve(
    ctx: click.Context, port: int | None, catalog_csv: str | None, config_path: str | None
) -> None:
    """Run the HTTP API until interrupted; shutdown flushes the event log."""
    import uvicorn

    from .service import create_app

    if config_path is not None:
        ctx.obj["config_path"] = config_path
    cfg = _engine_config(ctx)
    if catalog_csv is not None:
        cfg = replace(cfg, catalog_csv=catalog_csv)
    if port is not None:
        cfg = replace(cfg, port=port)

    # fail fast with exit 1 instead of a uvicorn stack trace on a busy port
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        probe.bind(("0.0.0.0", cfg.port))
    except OSError as exc:
        raise click.ClickException(f"cannot bind port {cfg.port}: {exc}") from None
    finally:
        probe.close()

    app = create_app(cfg)
    uvicorn.run(app, host="0.0.0.0", port=cfg.port, log_level="info")


@cli.command()
@click.option("--from", "departure", required=True, help="Departure city id.")
@click.option("--month", required=True, type=click.IntRange(1, 12))
@click.option("--interests", default=None, help="Comma-separated interest categories.")
@click.option("--personalize", default=None, help="Comma-separated personalization attributes.")
@click.option(
    "--outdir",
    type=str,
    default="report",
    show_default=True,
    help="Directory for the CSV table and rendered figures.",
)
@click.pass_context
def report(
    ctx: click.Context,
    departure: str,
    month: int,
    interests: str | None,
    personalize: str | None,
    outdir: str,
) -> None:
    """Write ranking.csv plus score and radar figures for a query."""
    from .report import generate_report

    cfg, catalog = _load_engine(ctx)
    query = _build_query(catalog, departure, month, interests, personalize)
    paths = generate_report(catalog, query, outdir, default_weights(cfg), cfg)
    for path in paths:
        click.echo(str(path))


def main() -> None:
    cli(obj={})


if __name__ == "__main__":
    main()
