/** Booking panel and confirmation receipt.
 *
 * Totals update live through the mirrored impact formula; any greener-pick
 * banner for a red-class selection renders above the confirm button so it
 * is seen before committing.
 */

import { mirroredImpact } from '../impact.js';
import type {
  AccommodationOption,
  BookingReceipt,
  NudgeBanner,
  TransportEstimate,
} from '../types.js';
import { renderBanner } from './banner.js';
import { fmtEur, fmtKg, fmtPercent } from './format.js';
import { escapeHtml } from './html.js';

export interface BookingModel {
  cityId: string;
  estimates: TransportEstimate[];
  selectedMode: string;
  options: AccommodationOption[];
  selectedOptionId: string;
  nights: number;
  groupSize: number;
  banner: NudgeBanner | null;
  fieldError?: string | null;
}

export function selectedEstimate(model: BookingModel): TransportEstimate {
  const found = model.estimates.find((e) => e.mode === model.selectedMode);
  if (!found) {
    throw new Error(`no estimate for mode ${model.selectedMode}`);
  }
  return found;
}

export function selectedOption(model: BookingModel): AccommodationOption {
  const found = model.options.find((o) => o.id === model.selectedOptionId);
  if (!found) {
    throw new Error(`no accommodation option ${model.selectedOptionId}`);
  }
  return found;
}

export function renderImpactSummary(model: BookingModel): string {
  const transport = selectedEstimate(model);
  const option = selectedOption(model);
  const impact = mirroredImpact({
    transportCo2eKg: transport.co2e_kg,
    transportCostEur: transport.cost_eur,
    accommodationEurPerNight: option.eur_per_night,
    accommodationCo2eKgPerNight: option.co2e_kg_per_night,
    nights: model.nights,
    groupSize: model.groupSize,
  });
  return `
<dl class="impact">
  <dt>Total cost</dt>
  <dd class="impact-cost" data-value="${impact.total_cost_eur}">${fmtEur(impact.total_cost_eur)}</dd>
  <dt>Total CO&#8322;e</dt>
  <dd class="impact-co2e" data-value="${impact.total_co2e_kg}">${fmtKg(impact.total_co2e_kg)}</dd>
  <dt>Per person CO&#8322;e</dt>
  <dd class="impact-per-person" data-value="${impact.per_person_co2e_kg}">${fmtKg(impact.per_person_co2e_kg)}</dd>
</dl>
`.trim();
}

export function renderBookingPanel(model: BookingModel): string {
  const modeOptions = model.estimates
    .map(
      (e) =>
        `<option value="${e.mode}" data-light="${e.traffic_light}"${e.mode === model.selectedMode ? ' selected' : ''}>${e.mode} (${fmtKg(e.co2e_kg)}, ${fmtEur(e.cost_eur)})</option>`,
    )
    .join('');
  const stayOptions = model.options
    .map(
      (o) =>
        `<option value="${escapeHtml(o.id)}"${o.id === model.selectedOptionId ? ' selected' : ''}>${escapeHtml(o.name)} (${fmtEur(o.eur_per_night)}/night${o.eco_label ? ', eco label' : ''})</option>`,
    )
    .join('');
  const banner = model.banner ? renderBanner(model.banner) : '';
  const error = model.fieldError
    ? `<p class="form-error">${escapeHtml(model.fieldError)}</p>`
    : '';
  return `
<section class="booking" data-city="${escapeHtml(model.cityId)}">
  <label>Transport
    <select name="mode" class="booking-mode">${modeOptions}</select>
  </label>
  <label>Stay
    <select name="accommodation" class="booking-stay">${stayOptions}</select>
  </label>
  <label>Nights
    <input type="number" name="nights" min="1" value="${model.nights}">
  </label>
  <label>Travellers
    <input type="number" name="group_size" min="1" value="${model.groupSize}">
  </label>
  ${renderImpactSummary(model)}
  ${error}
  ${banner}
  <button type="button" class="confirm">Confirm booking</button>
</section>
`.trim();
}

/** Confirmation view: receipt, reinforcement banner, and a CO2e bar that
 * compares the chosen transport against the candidate median baseline.
 * baselineCo2eKg comes from the recommendation response's per-city minima. */
export function renderConfirmation(
  receipt: BookingReceipt,
  banner: NudgeBanner | null,
  baselineCo2eKg: number | null,
): string {
  const d = receipt.draft;
  const chosen = d.transport.co2e_kg;
  let bar = '';
  if (baselineCo2eKg !== null && baselineCo2eKg > 0) {
    const ratio = Math.min(chosen / baselineCo2eKg, 1);
    bar = `
  <div class="co2-bar" title="vs median candidate">
    <div class="co2-fill" style="width: ${fmtPercent(ratio)}" data-value="${chosen}" data-baseline="${baselineCo2eKg}"></div>
  </div>`;
  }
  return `
<section class="confirmation" data-booking="${escapeHtml(receipt.booking_id)}">
  <h2>Trip booked</h2>
  <dl class="receipt">
    <dt>Booking</dt><dd class="receipt-id">${escapeHtml(receipt.booking_id)}</dd>
    <dt>City</dt><dd class="receipt-city">${escapeHtml(d.city_id)}</dd>
    <dt>Transport</dt><dd class="receipt-mode">${d.transport.mode}</dd>
    <dt>Stay</dt><dd class="receipt-stay">${escapeHtml(d.accommodation.name)}</dd>
    <dt>Nights</dt><dd class="receipt-nights">${d.nights}</dd>
    <dt>Travellers</dt><dd class="receipt-group">${d.group_size}</dd>
    <dt>Total cost</dt><dd class="receipt-cost" data-value="${receipt.impact.total_cost_eur}">${fmtEur(receipt.impact.total_cost_eur)}</dd>
    <dt>Total CO&#8322;e</dt><dd class="receipt-co2e" data-value="${receipt.impact.total_co2e_kg}">${fmtKg(receipt.impact.total_co2e_kg)}</dd>
  </dl>${bar}
  ${banner ? renderBanner(banner) : ''}
</section>
`.trim();
}
