/** Explore map: one marker per ranked city, colored by its API light
 * class, with per-mode route lines to a clicked city.
 *
 * The API does not expose the departure's coordinates, so the origin
 * anchors to the west edge of the frame; route lines are schematic
 * connectors, not geographic paths.
 */

import type { RankedCity, TransportEstimate, TrafficLight } from '../types.js';
import { fmtEur, fmtHours, fmtKg, fmtKm } from './format.js';
import { escapeHtml } from './html.js';

export const LIGHT_COLORS: Record<TrafficLight, string> = {
  green: '#2e7d32',
  yellow: '#f9a825',
  red: '#c62828',
};

export const MODE_COLORS: Record<string, string> = {
  train: '#1565c0',
  bus: '#6a1b9a',
  flight: '#ef6c00',
};

const WIDTH = 800;
const HEIGHT = 500;
const PAD = 48;

export interface MapSelection {
  cityId: string;
  estimates: TransportEstimate[];
}

export interface MapModel {
  originId: string;
  results: RankedCity[];
  selection?: MapSelection | null;
  /** Set when the transport fetch for the clicked city failed. */
  transportError?: string | null;
}

interface Projected {
  city: RankedCity;
  x: number;
  y: number;
}

function project(results: RankedCity[]): Projected[] {
  const lats = results.map((r) => r.location.lat);
  const lons = results.map((r) => r.location.lon);
  const latSpan = Math.max(Math.max(...lats) - Math.min(...lats), 0.1);
  const lonSpan = Math.max(Math.max(...lons) - Math.min(...lons), 0.1);
  const minLat = Math.min(...lats);
  const minLon = Math.min(...lons);
  return results.map((city) => ({
    city,
    x: PAD + ((city.location.lon - minLon) / lonSpan) * (WIDTH - 2 * PAD),
    // screen y grows downward, latitude grows upward
    y: HEIGHT - PAD - ((city.location.lat - minLat) / latSpan) * (HEIGHT - 2 * PAD),
  }));
}

function renderRoutes(selection: MapSelection, target: Projected): string {
  const originX = 8;
  const originY = HEIGHT / 2;
  return selection.estimates
    .map((estimate, i) => {
      const bend = (i - (selection.estimates.length - 1) / 2) * 40;
      const midX = (originX + target.x) / 2;
      const midY = (originY + target.y) / 2 + bend;
      const color = MODE_COLORS[estimate.mode] ?? '#555';
      return (
        `<path class="route route-${estimate.mode}" data-mode="${estimate.mode}" data-co2e="${estimate.co2e_kg}" ` +
        `d="M ${originX} ${originY} Q ${midX.toFixed(1)} ${midY.toFixed(1)} ${target.x.toFixed(1)} ${target.y.toFixed(1)}" ` +
        `fill="none" stroke="${color}"></path>`
      );
    })
    .join('\n    ');
}

function renderDetail(selection: MapSelection): string {
  const rows = selection.estimates
    .map(
      (e) => `
    <tr class="estimate-row" data-mode="${e.mode}" data-light="${e.traffic_light}">
      <td>${e.mode}</td>
      <td>${fmtKm(e.distance_km)}</td>
      <td>${fmtKg(e.co2e_kg)}</td>
      <td>${fmtEur(e.cost_eur)}</td>
      <td>${fmtHours(e.duration_h)}</td>
      <td><span class="tag tag-${e.traffic_light}">${e.traffic_light}</span></td>
    </tr>`,
    )
    .join('');
  return `
<aside class="map-detail" data-city="${escapeHtml(selection.cityId)}">
  <table class="estimate-table">
    <thead><tr><th>mode</th><th>distance</th><th>CO&#8322;e</th><th>cost</th><th>duration</th><th>class</th></tr></thead>
    <tbody>${rows}
    </tbody>
  </table>
</aside>
`.trim();
}

function renderLegend(): string {
  const entries = (['green', 'yellow', 'red'] as TrafficLight[])
    .map(
      (light) =>
        `<li class="legend-entry legend-${light}"><span class="swatch" style="background: ${LIGHT_COLORS[light]}"></span>${light}</li>`,
    )
    .join('');
  return `<ul class="map-legend">${entries}</ul>`;
}

export function renderMap(model: MapModel): string {
  if (!model.results.length) {
    return '<p class="state state-empty">No destinations to map.</p>';
  }
  const projected = project(model.results);
  const selectionTarget = model.selection
    ? projected.find((p) => p.city.city_id === model.selection?.cityId)
    : undefined;
  const routes =
    model.selection && selectionTarget ? renderRoutes(model.selection, selectionTarget) : '';
  const markers = projected
    .map(
      ({ city, x, y }) =>
        `<circle class="marker marker-${city.traffic_light}" data-city="${escapeHtml(city.city_id)}" data-light="${city.traffic_light}" ` +
        `cx="${x.toFixed(1)}" cy="${y.toFixed(1)}" r="9" fill="${LIGHT_COLORS[city.traffic_light]}">` +
        `<title>${escapeHtml(city.name)}</title></circle>`,
    )
    .join('\n    ');
  const origin =
    `<g class="origin" data-origin="${escapeHtml(model.originId)}">` +
    `<rect x="2" y="${HEIGHT / 2 - 8}" width="12" height="16"></rect>` +
    `<text x="18" y="${HEIGHT / 2 + 4}">${escapeHtml(model.originId)}</text></g>`;
  const error = model.transportError
    ? `<div class="map-error">${escapeHtml(model.transportError)} <button type="button" class="retry" data-city="${escapeHtml(model.selection?.cityId ?? '')}">Retry</button></div>`
    : '';
  const detail = model.selection && !model.transportError ? renderDetail(model.selection) : '';
  return `
<figure class="map">
  <svg viewBox="0 0 ${WIDTH} ${HEIGHT}" role="img" aria-label="destination map">
    ${origin}
    ${routes}
    ${markers}
  </svg>
  ${renderLegend()}
  ${error}
  ${detail}
</figure>
`.trim();
}
