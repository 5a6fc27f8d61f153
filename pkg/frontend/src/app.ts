/** Browser bootstrap: wires the API client, view store, event emitter, and
 * renderers together with delegated DOM events. All decision logic stays
 * server-side; this layer only routes data between the API and the screen.
 */

import { ApiClient, ApiError } from './api.js';
import { resolveConfig } from './config.js';
import { EventEmitter } from './events.js';
import { renderCardGrid } from './render/cards.js';
import { renderBookingPanel, renderConfirmation, type BookingModel } from './render/booking.js';
import { renderDetails } from './render/details.js';
import { renderLandingForm, type LandingModel } from './render/landing.js';
import { renderMap, type MapSelection } from './render/map.js';
import { median } from './render/format.js';
import { ViewStore } from './state.js';
import type {
  AccommodationOption,
  BookingReceipt,
  NudgeBanner,
  RankedCity,
  TransportResponse,
} from './types.js';
import {
  EMPTY_FORM,
  fieldForMachineCode,
  isSubmittable,
  toQueryBody,
  validateForm,
  type FieldErrors,
  type QueryFormState,
} from './validation.js';

export class App {
  private readonly root: HTMLElement;
  private readonly client: ApiClient;
  private readonly store = new ViewStore();
  private readonly emitter: EventEmitter;

  private form: QueryFormState = { ...EMPTY_FORM };
  private apiFieldErrors: FieldErrors = {};
  private submitting = false;
  private consent = false;

  private transport: TransportResponse | null = null;
  private mapSelection: MapSelection | null = null;
  private mapError: string | null = null;
  private accommodations: AccommodationOption[] = [];
  private booking: BookingModel | null = null;
  private receipt: BookingReceipt | null = null;
  private confirmationBanner: NudgeBanner | null = null;
  private bannerShownFor: string | null = null;

  constructor(root: HTMLElement, baseUrl?: string) {
    this.root = root;
    this.client = new ApiClient(resolveConfig(baseUrl).baseUrl);
    this.emitter = new EventEmitter((event) => this.client.submitEvent(event));
    this.store.subscribe(() => this.render());
    root.addEventListener('click', (e) => this.onClick(e));
    root.addEventListener('change', (e) => this.onChange(e));
    root.addEventListener('input', (e) => this.onChange(e));
    root.addEventListener('submit', (e) => {
      e.preventDefault();
      void this.submitQuery();
    });
    this.render();
  }

  private selectedCity(): RankedCity | null {
    const { lastResponse, selectedCityId } = this.store.current;
    if (!lastResponse || !selectedCityId) {
      return null;
    }
    return lastResponse.results.find((r) => r.city_id === selectedCityId) ?? null;
  }

  private render(): void {
    const state = this.store.current;
    const nav =
      state.view === 'explore-cards' || state.view === 'explore-map'
        ? `<nav class="layout-toggle">
             <button type="button" class="show-cards">Cards</button>
             <button type="button" class="show-map">Map</button>
             <button type="button" class="back-landing">New search</button>
           </nav>`
        : state.view === 'landing'
          ? ''
          : '<nav class="layout-toggle"><button type="button" class="show-cards">Back to results</button></nav>';
    let body = '';
    switch (state.view) {
      case 'landing': {
        const model: LandingModel = {
          form: this.form,
          errors: { ...validateForm(this.form), ...this.apiFieldErrors },
          consent: this.consent,
          submitting: this.submitting,
        };
        body = renderLandingForm(model);
        break;
      }
      case 'explore-cards': {
        body = state.lastResponse ? renderCardGrid(state.lastResponse) : '';
        this.noteBannersShown();
        break;
      }
      case 'explore-map': {
        body = state.lastResponse
          ? renderMap({
              originId: state.query?.departure_id ?? '',
              results: state.lastResponse.results,
              selection: this.mapSelection,
              transportError: this.mapError,
            })
          : '';
        break;
      }
      case 'details': {
        const city = this.selectedCity();
        body = city ? renderDetails(city, this.transport) : '';
        break;
      }
      case 'booking': {
        body = this.booking ? renderBookingPanel(this.booking) : '';
        break;
      }
      case 'confirmation': {
        if (this.receipt) {
          const minima = state.lastResponse?.results.map((r) => r.min_co2e_kg) ?? [];
          const baseline = minima.length ? median(minima) : null;
          body = renderConfirmation(this.receipt, this.confirmationBanner, baseline);
        }
        break;
      }
    }
    this.root.innerHTML = `${nav}\n<main class="view view-${state.view}">${body}</main>`;
  }

  /** banner_shown fires once per recommendation response, not per rerender. */
  private noteBannersShown(): void {
    const response = this.store.current.lastResponse;
    if (!response || !response.banners.length) {
      return;
    }
    const key = JSON.stringify(response.query);
    if (this.bannerShownFor !== key) {
      this.bannerShownFor = key;
      for (const banner of response.banners) {
        this.emitter.emit('banner_shown', { kind: banner.kind, context: banner.context });
      }
    }
  }

  private async submitQuery(): Promise<void> {
    if (!isSubmittable(this.form) || this.submitting) {
      return;
    }
    this.apiFieldErrors = {};
    this.submitting = true;
    this.render();
    const query = toQueryBody(this.form);
    const token = this.store.beginRecommendation(query);
    try {
      const response = await this.client.recommendations(query);
      this.submitting = false;
      if (this.store.completeRecommendation(token, response)) {
        this.emitter.emit('query_submitted', { departure_id: query.departure_id });
      }
    } catch (err) {
      this.submitting = false;
      if (err instanceof ApiError) {
        const field = fieldForMachineCode(err.machineCode);
        if (field) {
          this.apiFieldErrors = { [field]: err.message };
        } else {
          this.apiFieldErrors = { departure: err.message };
        }
      } else {
        this.apiFieldErrors = { departure: 'network error, try again' };
      }
      this.render();
    }
  }

  private async openDetails(cityId: string): Promise<void> {
    this.transport = null;
    this.store.selectCity(cityId);
    this.emitter.emit('city_viewed', { city_id: cityId });
    const from = this.store.current.query?.departure_id ?? '';
    try {
      this.transport = await this.client.transport(cityId, from);
    } catch {
      this.transport = null;
    }
    this.render();
  }

  private async openMapDetail(cityId: string): Promise<void> {
    const from = this.store.current.query?.departure_id ?? '';
    this.emitter.emit('city_viewed', { city_id: cityId });
    try {
      const detail = await this.client.transport(cityId, from);
      this.mapSelection = { cityId, estimates: detail.estimates };
      this.mapError = null;
    } catch (err) {
      this.mapSelection = { cityId, estimates: [] };
      this.mapError = err instanceof ApiError ? err.message : 'could not load transport options';
    }
    this.render();
  }

  private async openBooking(cityId: string): Promise<void> {
    const query = this.store.current.query;
    if (!query || !this.transport || this.transport.city_id !== cityId) {
      return;
    }
    try {
      const stays = await this.client.accommodations(cityId);
      this.accommodations = stays.options;
    } catch {
      this.accommodations = [];
    }
    if (!this.accommodations.length || !this.transport.estimates.length) {
      return;
    }
    let banner: NudgeBanner | null = null;
    try {
      banner = (await this.client.nudge('booking', cityId, query)).banner;
    } catch {
      banner = null;
    }
    this.booking = {
      cityId,
      estimates: this.transport.estimates,
      selectedMode: this.transport.estimates[0].mode,
      options: this.accommodations,
      selectedOptionId: this.accommodations[0].id,
      nights: 3,
      groupSize: 1,
      banner,
      fieldError: null,
    };
    this.store.startBooking();
  }

  private async confirmBooking(): Promise<void> {
    const query = this.store.current.query;
    if (!this.booking || !query) {
      return;
    }
    const transport = this.booking.estimates.find((e) => e.mode === this.booking?.selectedMode);
    const option = this.booking.options.find((o) => o.id === this.booking?.selectedOptionId);
    if (!transport || !option) {
      return;
    }
    try {
      const result = await this.client.book({
        city_id: this.booking.cityId,
        transport: {
          mode: transport.mode,
          distance_km: transport.distance_km,
          co2e_kg: transport.co2e_kg,
          cost_eur: transport.cost_eur,
          duration_h: transport.duration_h,
        },
        accommodation: option,
        nights: this.booking.nights,
        group_size: this.booking.groupSize,
        query,
      });
      this.receipt = result.receipt;
      this.confirmationBanner = result.banner;
      this.store.confirmBooking();
      this.emitter.emit('booking_confirmed', {
        city_id: this.booking.cityId,
        booking_id: result.receipt.booking_id,
      });
    } catch (err) {
      this.booking = {
        ...this.booking,
        fieldError: err instanceof ApiError ? err.message : 'booking failed, try again',
      };
      this.render();
    }
  }

  private onClick(e: Event): void {
    const target = e.target instanceof Element ? e.target : null;
    if (!target) {
      return;
    }
    const card = target.closest('.city-card');
    if (card instanceof HTMLElement && card.dataset.city) {
      void this.openDetails(card.dataset.city);
      return;
    }
    const marker = target.closest('.marker');
    if (marker instanceof Element) {
      const cityId = marker.getAttribute('data-city');
      if (cityId) {
        void this.openMapDetail(cityId);
      }
      return;
    }
    const alt = target.closest('.banner-alt');
    if (alt instanceof HTMLElement && alt.dataset.city) {
      this.emitter.emit('banner_clicked', { city_id: alt.dataset.city });
      void this.openDetails(alt.dataset.city);
      return;
    }
    if (target.closest('.retry') instanceof HTMLElement) {
      const cityId = (target.closest('.retry') as HTMLElement).dataset.city;
      if (cityId) {
        void this.openMapDetail(cityId);
      }
      return;
    }
    const toBooking = target.closest('.to-booking');
    if (toBooking instanceof HTMLElement && toBooking.dataset.city) {
      void this.openBooking(toBooking.dataset.city);
      return;
    }
    if (target.closest('.confirm')) {
      void this.confirmBooking();
      return;
    }
    if (target.closest('.show-map')) {
      this.store.showExplore('map');
      return;
    }
    if (target.closest('.show-cards')) {
      this.mapSelection = null;
      this.mapError = null;
      this.store.showExplore('cards');
      return;
    }
    if (target.closest('.back-landing')) {
      this.store.backToLanding();
    }
  }

  private onChange(e: Event): void {
    const input = e.target;
    if (!(input instanceof HTMLInputElement) && !(input instanceof HTMLSelectElement)) {
      return;
    }
    const state = this.store.current;
    if (state.view === 'landing') {
      this.readLandingForm();
      this.apiFieldErrors = {};
      // rerender only to refresh the submit button and error hints; the
      // focused input keeps its value because we read it back first
      this.render();
      return;
    }
    if (state.view === 'booking' && this.booking) {
      if (input.name === 'mode') {
        this.booking = { ...this.booking, selectedMode: input.value };
      } else if (input.name === 'accommodation') {
        this.booking = { ...this.booking, selectedOptionId: input.value };
      } else if (input.name === 'nights') {
        this.booking = { ...this.booking, nights: Math.max(1, Number(input.value) || 1) };
      } else if (input.name === 'group_size') {
        this.booking = { ...this.booking, groupSize: Math.max(1, Number(input.value) || 1) };
      }
      this.render();
    }
  }

  private readLandingForm(): void {
    const q = (selector: string) => this.root.querySelector(selector);
    const departure = q('input[name="departure"]');
    const month = q('select[name="month"]');
    const consent = q('input[name="consent"]');
    const checked = (name: string) =>
      Array.from(this.root.querySelectorAll(`input[name="${name}"]:checked`)).map(
        (el) => (el as HTMLInputElement).value,
      );
    this.form = {
      departureId: departure instanceof HTMLInputElement ? departure.value : '',
      month:
        month instanceof HTMLSelectElement && month.value !== '' ? Number(month.value) : null,
      interests: checked('interests'),
      personalization: checked('personalization'),
    };
    this.consent = consent instanceof HTMLInputElement ? consent.checked : false;
    this.emitter.setConsent(this.consent);
  }
}

export function mount(rootId = 'app', baseUrl?: string): App {
  const root = document.getElementById(rootId);
  if (!root) {
    throw new Error(`no element with id ${rootId}`);
  }
  return new App(root, baseUrl);
}
