"""Offline report rendering: a delimited ranking table plus figures.

Writes into an output directory:
    ranking.csv     full ranked table (one row per candidate)
    scores.png      bar chart of final scores, colored by traffic light
    radar_top.png   transport radar for the top-ranked destination

Rendering is headless (Agg); no display is required.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .config import EngineConfig
from .dataset import Catalog, get_city
from .nudge import assign_badges, traffic_lights
from .scoring import UserQuery, WeightVector, rank_destinations
from .transport import GREEN, RADAR_AXES, RED, YELLOW, estimate_transport, radar_profile

LIGHT_COLORS = {GREEN: "#2e8b57", YELLOW: "#d4a017", RED: "#b22222"}

CSV_FIELDS = (
    "rank",
    "city_id",
    "name",
    "country",
    "score",
    "transport",
    "popularity",
    "seasonality",
    "interest_penalty",
    "personalization_penalty",
    "interest_match",
    "min_co2e_kg",
    "traffic_light",
    "badge",
)


def _write_ranking_csv(path: Path, ranked, catalog: Catalog, lights, badges) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_FIELDS)
        for s in ranked:
            city = get_city(catalog, s.city_id)
            writer.writerow(
                [
                    s.rank,
                    s.city_id,
                    city.name,
                    city.country,
                    repr(s.score),
                    repr(s.components.transport),
                    repr(s.components.popularity),
                    repr(s.components.seasonality),
                    repr(s.components.interest_penalty),
                    repr(s.components.personalization_penalty),
                    repr(s.interest_match),
                    repr(s.min_co2e_kg),
                    lights[s.city_id],
                    badges.get(s.city_id, ""),
                ]
            )


def _render_scores(path: Path, ranked, catalog: Catalog, lights) -> None:
    labels = [get_city(catalog, s.city_id).name for s in ranked]
    scores = [s.score for s in ranked]
    colors = [LIGHT_COLORS[lights[s.city_id]] for s in ranked]
    fig, ax = plt.subplots(figsize=(max(6.0, 0.6 * len(ranked)), 4.0))
    ax.bar(range(len(ranked)), scores, color=colors)
    ax.set_xticks(range(len(ranked)))
    ax.set_xticklabels(labels, rotation=45, ha="right", fontsize=8)
    ax.set_ylabel("score (lower is better)")
    ax.set_ylim(0.0, 1.0)
    ax.set_title("Ranked destinations")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def _render_radar(path: Path, origin, dest, config: EngineConfig | None) -> None:
    modes = config.modes if config else None
    flight_min = config.flight_min_route_km if config else None
    kwargs = {}
    if modes is not None:
        kwargs["modes"] = modes
    if flight_min is not None:
        kwargs["flight_min_route_km"] = flight_min
    estimates = estimate_transport(origin, dest, **kwargs)
    profile = radar_profile(estimates)

    angles = [2.0 * math.pi * i / len(RADAR_AXES) for i in range(len(RADAR_AXES))]
    angles_closed = angles + angles[:1]
    fig, ax = plt.subplots(figsize=(5.0, 5.0), subplot_kw={"projection": "polar"})
    for mode, values in profile.axes.items():
        series = [values[axis] for axis in RADAR_AXES]
        series_closed = series + series[:1]
        ax.plot(angles_closed, series_closed, label=mode)
        ax.fill(angles_closed, series_closed, alpha=0.15)
    ax.set_xticks(angles)
    ax.set_xticklabels(RADAR_AXES)
    ax.set_ylim(0.0, 1.0)
    ax.set_title(f"{origin.name} to {dest.name}", pad=18)
    ax.legend(loc="lower right", bbox_to_anchor=(1.2, -0.1))
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def generate_report(
    catalog: Catalog,
    query: UserQuery,
    outdir: str | Path,
    defaults: WeightVector | None = None,
    config: EngineConfig | None = None,
) -> list[Path]:
    """Rank, then write the CSV table and both figures. Returns the paths
    written, in a stable order."""
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    ranked = rank_destinations(catalog, query, defaults, config)
    lights = traffic_lights(ranked)
    badges = assign_badges(ranked)

    csv_path = out / "ranking.csv"
    scores_path = out / "scores.png"
    radar_path = out / "radar_top.png"

    _write_ranking_csv(csv_path, ranked, catalog, lights, badges)
    _render_scores(scores_path, ranked, catalog, lights)
    origin = get_city(catalog, query.departure_id)
    top = get_city(catalog, ranked[0].city_id)
    _render_radar(radar_path, origin, top, config)
    return [csv_path, scores_path, radar_path]
