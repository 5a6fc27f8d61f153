import { describe, expect, it } from 'vitest';

import { mirroredImpact } from '../src/impact.js';
import {
  renderBookingPanel,
  renderConfirmation,
  type BookingModel,
} from '../src/render/booking.js';
import { median } from '../src/render/format.js';
import type {
  AccommodationsResponse,
  BookingResponse,
  RecommendationResponse,
  TransportResponse,
} from '../src/types.js';
import { extractAll, loadFixture } from './helpers.js';

const recommendations = loadFixture<RecommendationResponse>('recommendations.json');
const shortHaul = loadFixture<TransportResponse>('transport_short.json');
const longHaul = loadFixture<TransportResponse>('transport_long.json');
const stays = loadFixture<AccommodationsResponse>('accommodations.json');
const greenBooking = loadFixture<BookingResponse>('booking_green.json');
const redBooking = loadFixture<BookingResponse>('booking_red.json');

function model(overrides: Partial<BookingModel> = {}): BookingModel {
  return {
    cityId: shortHaul.city_id,
    estimates: shortHaul.estimates,
    selectedMode: shortHaul.estimates[0].mode,
    options: stays.options,
    selectedOptionId: stays.options[0].id,
    nights: 3,
    groupSize: 1,
    banner: null,
    ...overrides,
  };
}

function displayedTotals(html: string): { cost: number; co2e: number } {
  const cost = extractAll(html, /class="impact-cost" data-value="([^"]+)"/g);
  const co2e = extractAll(html, /class="impact-co2e" data-value="([^"]+)"/g);
  return { cost: Number(cost[0]), co2e: Number(co2e[0]) };
}

describe('booking panel totals', () => {
  it('shows the mirrored-formula totals for the current draft', () => {
    const m = model();
    const html = renderBookingPanel(m);
    const expected = mirroredImpact({
      transportCo2eKg: m.estimates[0].co2e_kg,
      transportCostEur: m.estimates[0].cost_eur,
      accommodationEurPerNight: m.options[0].eur_per_night,
      accommodationCo2eKgPerNight: m.options[0].co2e_kg_per_night,
      nights: 3,
      groupSize: 1,
    });
    const shown = displayedTotals(html);
    expect(shown.cost).toBe(expected.total_cost_eur);
    expect(shown.co2e).toBe(expected.total_co2e_kg);
  });

  it('doubles the displayed totals when the group goes from 1 to 2', () => {
    const one = displayedTotals(renderBookingPanel(model({ groupSize: 1 })));
    const two = displayedTotals(renderBookingPanel(model({ groupSize: 2 })));
    expect(two.cost).toBe(2 * one.cost);
    expect(two.co2e).toBe(2 * one.co2e);
  });

  it('recomputes when the transport or stay selection changes', () => {
    const trainTotals = displayedTotals(
      renderBookingPanel(model({ selectedMode: 'train' })),
    );
    const busTotals = displayedTotals(renderBookingPanel(model({ selectedMode: 'bus' })));
    expect(busTotals.co2e).not.toBe(trainTotals.co2e);
  });
});

describe('booking panel nudges and errors', () => {
  it('renders the alternatives banner above the confirm button for a red pick', () => {
    const html = renderBookingPanel(
      model({
        cityId: longHaul.city_id,
        estimates: longHaul.estimates,
        selectedMode: 'flight',
        banner: redBooking.banner,
      }),
    );
    const bannerAt = html.indexOf('banner-alternatives');
    const confirmAt = html.indexOf('class="confirm"');
    expect(bannerAt).toBeGreaterThan(-1);
    expect(confirmAt).toBeGreaterThan(bannerAt);
  });

  it('omits the banner when the API sent none', () => {
    expect(renderBookingPanel(model())).not.toContain('banner-alternatives');
  });

  it('renders API validation errors inline', () => {
    const html = renderBookingPanel(model({ fieldError: 'nights must be a positive integer' }));
    expect(html).toContain('class="form-error"');
    expect(html).toContain('nights must be a positive integer');
  });

  it('matches the frozen markup snapshot', () => {
    expect(renderBookingPanel(model())).toMatchSnapshot();
  });
});

describe('confirmation view', () => {
  const baseline = median(recommendations.results.map((r) => r.min_co2e_kg));

  it('shows the receipt fields from the booking response verbatim', () => {
    const html = renderConfirmation(greenBooking.receipt, greenBooking.banner, baseline);
    const r = greenBooking.receipt;
    expect(html).toContain(`data-booking="${r.booking_id}"`);
    expect(html).toContain(`<dd class="receipt-city">${r.draft.city_id}</dd>`);
    expect(html).toContain(`data-value="${r.impact.total_cost_eur}"`);
    expect(html).toContain(`data-value="${r.impact.total_co2e_kg}"`);
  });

  it('draws the CO2e bar against the candidate median baseline', () => {
    const html = renderConfirmation(greenBooking.receipt, greenBooking.banner, baseline);
    expect(html).toContain(`data-baseline="${baseline}"`);
    expect(html).toContain(`data-value="${greenBooking.receipt.draft.transport.co2e_kg}"`);
  });

  it('caps the bar at full width for above-baseline choices', () => {
    const html = renderConfirmation(redBooking.receipt, redBooking.banner, baseline);
    expect(redBooking.receipt.draft.transport.co2e_kg).toBeGreaterThan(baseline);
    expect(html).toContain('style="width: 100%"');
  });

  it('shows the reinforcement banner with its tree icons', () => {
    const html = renderConfirmation(greenBooking.receipt, greenBooking.banner, baseline);
    expect(html).toContain('banner-reinforcement');
    expect(html).toContain(
      `data-trees="${greenBooking.banner!.reinforcement!.trees_equivalent}"`,
    );
  });

  it('matches the frozen markup snapshot', () => {
    expect(
      renderConfirmation(greenBooking.receipt, greenBooking.banner, baseline),
    ).toMatchSnapshot();
  });
});
