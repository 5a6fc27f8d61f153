import { describe, expect, it } from 'vitest';

import { renderBanner, renderTreeIcons } from '../src/render/banner.js';
import type { BookingResponse, NudgeResponse } from '../src/types.js';
import { extractAll, loadFixture } from './helpers.js';

const redBooking = loadFixture<BookingResponse>('booking_red.json');
const greenBooking = loadFixture<BookingResponse>('booking_green.json');
const bookingNudge = loadFixture<NudgeResponse>('nudge_booking_red.json');

describe('alternative-suggestion banners', () => {
  it('lists the fixture alternatives verbatim, in order, clickable', () => {
    const banner = redBooking.banner!;
    const html = renderBanner(banner);
    const cities = extractAll(html, /class="banner-alt" data-city="([^"]+)"/g);
    expect(cities).toEqual(banner.alternatives!.map((a) => a.city_id));
    const savings = extractAll(html, /data-saving="([^"]+)"/g).map(Number);
    expect(savings).toEqual(banner.alternatives!.map((a) => a.co2e_saving_kg));
    expect(html).toContain('<button type="button" class="banner-alt"');
  });

  it('tags the banner with the API kind and context', () => {
    const html = renderBanner(bookingNudge.banner!);
    expect(html).toContain('data-kind="alternative_suggestion"');
    expect(html).toContain('data-context="booking"');
  });

  it('matches the frozen markup snapshot', () => {
    expect(renderBanner(redBooking.banner!)).toMatchSnapshot();
  });
});

describe('reinforcement banners and tree icons', () => {
  it('renders saved kg and tree equivalent from the fixture', () => {
    const banner = greenBooking.banner!;
    const html = renderBanner(banner);
    expect(html).toContain(`data-saved="${banner.reinforcement!.co2e_saved_kg}"`);
    expect(html).toContain(`data-trees="${banner.reinforcement!.trees_equivalent}"`);
  });

  it('turns 2.0 trees into exactly two full icons', () => {
    const html = renderTreeIcons(2.0);
    expect(extractAll(html, /class="tree-icon (tree-full)"/g)).toHaveLength(2);
    expect(html).not.toContain('tree-partial');
  });

  it('turns 0 trees into no icons', () => {
    const html = renderTreeIcons(0);
    expect(html).not.toContain('tree-icon');
  });

  it('renders a partial icon for the fractional remainder', () => {
    const html = renderTreeIcons(2.4);
    expect(extractAll(html, /class="tree-icon (tree-full)"/g)).toHaveLength(2);
    expect(html).toContain('tree-partial');
  });

  it('matches the frozen markup snapshot', () => {
    expect(renderBanner(greenBooking.banner!)).toMatchSnapshot();
  });
});
