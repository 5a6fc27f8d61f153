/** Nudge banners. Alternative lists keep the API's order and numbers;
 * reinforcement banners turn trees_equivalent into icon counts with no
 * other math. */

import type { NudgeBanner } from '../types.js';
import { fmtKg, fmtPercent } from './format.js';
import { escapeHtml } from './html.js';

/** Icons proportional to the tree equivalent: one full icon per whole
 * tree, one partial icon for any remainder. 2.0 gives exactly two. */
export function renderTreeIcons(treesEquivalent: number): string {
  const full = Math.floor(treesEquivalent + 1e-9);
  const fraction = treesEquivalent - full;
  const icons: string[] = [];
  for (let i = 0; i < full; i += 1) {
    icons.push('<span class="tree-icon tree-full" role="img" aria-label="tree"></span>');
  }
  if (fraction > 1e-9) {
    icons.push(
      `<span class="tree-icon tree-partial" role="img" aria-label="partial tree" style="opacity: ${fraction.toFixed(2)}"></span>`,
    );
  }
  return `<span class="trees" data-trees="${treesEquivalent}">${icons.join('')}</span>`;
}

export function renderBanner(banner: NudgeBanner): string {
  if (banner.kind === 'alternative_suggestion') {
    const items = (banner.alternatives ?? [])
      .map(
        (alt) => `
    <li class="banner-alt-item">
      <button type="button" class="banner-alt" data-city="${escapeHtml(alt.city_id)}" data-saving="${alt.co2e_saving_kg}" data-match="${alt.interest_match}">
        ${escapeHtml(alt.city_id)} &middot; saves ${fmtKg(alt.co2e_saving_kg)} CO&#8322;e &middot; fit ${fmtPercent(alt.interest_match)}
      </button>
    </li>`,
      )
      .join('');
    return `
<aside class="banner banner-alternatives" data-kind="${banner.kind}" data-context="${banner.context}">
  <p class="banner-title">Greener picks with a similar fit</p>
  <ul class="banner-alt-list">${items}
  </ul>
</aside>
`.trim();
  }
  const r = banner.reinforcement;
  if (!r) {
    return '';
  }
  return `
<aside class="banner banner-reinforcement" data-kind="${banner.kind}" data-context="${banner.context}">
  <p class="banner-title">Good choice: ${fmtKg(r.co2e_saved_kg)} CO&#8322;e saved</p>
  <p class="banner-detail" data-saved="${r.co2e_saved_kg}">That is about ${r.trees_equivalent} tree-years of uptake. ${renderTreeIcons(r.trees_equivalent)}</p>
</aside>
`.trim();
}

/** Banner strip below the card grid; empty string when there is nothing
 * to nudge about. */
export function renderBannerRegion(banners: NudgeBanner[]): string {
  if (!banners.length) {
    return '';
  }
  return `<div class="banner-region">${banners.map(renderBanner).join('\n')}</div>`;
}
