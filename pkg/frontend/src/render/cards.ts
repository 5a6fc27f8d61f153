/** Explore card grid. Cards appear in API rank order; the emission tag
 * carries the API's traffic-light class unchanged and the badge label is
 * the engine's string verbatim. */

import type { RankedCity, RecommendationResponse } from '../types.js';
import { renderBannerRegion } from './banner.js';
import { fmtKg, fmtPercent, fmtScore } from './format.js';
import { escapeHtml } from './html.js';

export function renderCard(city: RankedCity): string {
  const badge = city.badge
    ? `<span class="badge" data-badge="${escapeHtml(city.badge)}">${escapeHtml(city.badge)}</span>`
    : '';
  const barWidth = fmtPercent(city.interest_match);
  return `
<article class="city-card" data-city="${escapeHtml(city.city_id)}" data-rank="${city.rank}">
  <header class="card-head">
    <span class="card-rank">#${city.rank}</span>
    <h3 class="card-name">${escapeHtml(city.name)}</h3>
    <span class="card-country">${escapeHtml(city.country)}</span>
    ${badge}
  </header>
  <span class="tag tag-${city.traffic_light}" data-light="${city.traffic_light}" data-co2e="${city.min_co2e_kg}">${city.traffic_light} &middot; ${fmtKg(city.min_co2e_kg)} CO&#8322;e</span>
  <div class="interest-bar" title="interest fit ${barWidth}">
    <div class="interest-fill" style="width: ${barWidth}" data-match="${city.interest_match}"></div>
  </div>
  <p class="card-score">score ${fmtScore(city.score)}</p>
</article>
`.trim();
}

export function renderCardGrid(response: RecommendationResponse): string {
  if (!response.results.length) {
    return '<p class="state state-empty">No destinations to show.</p>';
  }
  const cards = response.results.map((city) => renderCard(city)).join('\n');
  return `<section class="card-grid">${cards}</section>\n${renderBannerRegion(response.banners)}`;
}
