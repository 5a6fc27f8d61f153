/** City details: score breakdown, transport options, and the radar
 * comparison. Component values come straight from the API response. */

import type { RankedCity, TransportResponse } from '../types.js';
import { fmtEur, fmtHours, fmtKg, fmtKm, fmtPercent, fmtScore } from './format.js';
import { escapeHtml } from './html.js';
import { renderRadar } from './radar.js';

const COMPONENT_LABELS: Record<string, string> = {
  transport: 'transport emissions',
  popularity: 'crowding',
  seasonality: 'seasonal pressure',
  interest_penalty: 'interest mismatch',
  personalization_penalty: 'personal fit gap',
};

export function renderDetails(city: RankedCity, transport: TransportResponse | null): string {
  const componentRows = Object.entries(city.components)
    .map(
      ([key, value]) => `
    <tr data-component="${key}" data-value="${value}">
      <td>${COMPONENT_LABELS[key] ?? key}</td>
      <td>${fmtScore(value)}</td>
      <td>${fmtScore(city.weights[key as keyof typeof city.weights] ?? 0)}</td>
    </tr>`,
    )
    .join('');
  const estimateRows = transport
    ? transport.estimates
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
        .join('')
    : '';
  const transportSection = transport
    ? `
  <h3>Getting there</h3>
  <table class="estimate-table">
    <thead><tr><th>mode</th><th>distance</th><th>CO&#8322;e</th><th>cost</th><th>duration</th><th>class</th></tr></thead>
    <tbody>${estimateRows}
    </tbody>
  </table>
  <h3>Trade-offs by mode</h3>
  ${renderRadar(transport.radar)}`
    : '<p class="state state-loading">Loading transport options&hellip;</p>';
  return `
<section class="details" data-city="${escapeHtml(city.city_id)}">
  <header>
    <h2>${escapeHtml(city.name)} <small>${escapeHtml(city.country)}</small></h2>
    <span class="tag tag-${city.traffic_light}" data-light="${city.traffic_light}">${city.traffic_light}</span>
    ${city.badge ? `<span class="badge" data-badge="${escapeHtml(city.badge)}">${escapeHtml(city.badge)}</span>` : ''}
  </header>
  <p class="details-score">rank #${city.rank}, score ${fmtScore(city.score)}, interest fit ${fmtPercent(city.interest_match)}</p>
  <table class="component-table">
    <thead><tr><th>component</th><th>value</th><th>weight</th></tr></thead>
    <tbody>${componentRows}
    </tbody>
  </table>
  ${transportSection}
  <button type="button" class="to-booking" data-city="${escapeHtml(city.city_id)}">Book this trip</button>
</section>
`.trim();
}
