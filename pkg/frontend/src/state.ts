/** Session view state and navigation invariants.
 *
 * The store is the single place that decides which view is visible.
 * Transitions enforce the journey's preconditions: explore views need a
 * completed query, details and booking need a selected city. Recommendation
 * requests carry a token so that when two overlap, only the latest response
 * is applied (latest wins).
 */

import type { QueryBody, RecommendationResponse } from './types.js';

export type ViewName =
  | 'landing'
  | 'explore-cards'
  | 'explore-map'
  | 'details'
  | 'booking'
  | 'confirmation';

export interface ViewState {
  view: ViewName;
  query: QueryBody | null;
  selectedCityId: string | null;
  lastResponse: RecommendationResponse | null;
}

export class InvalidTransition extends Error {}

type Listener = (state: ViewState) => void;

export class ViewStore {
  private state: ViewState = {
    view: 'landing',
    query: null,
    selectedCityId: null,
    lastResponse: null,
  };
  private listeners: Listener[] = [];
  private requestCounter = 0;

  get current(): ViewState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private commit(next: ViewState): void {
    this.state = next;
    for (const listener of this.listeners) {
      listener(next);
    }
  }

  /** Begin a recommendation request; returns a token to pass back when the
   * response arrives. Issuing a new token invalidates all earlier ones. */
  beginRecommendation(query: QueryBody): number {
    this.requestCounter += 1;
    this.commit({ ...this.state, query });
    return this.requestCounter;
  }

  /** Apply a recommendation response unless a newer request has been
   * issued since. Returns whether the response was applied. */
  completeRecommendation(token: number, response: RecommendationResponse): boolean {
    if (token !== this.requestCounter) {
      return false;
    }
    this.commit({
      ...this.state,
      view: 'explore-cards',
      lastResponse: response,
      selectedCityId: null,
    });
    return true;
  }

  showExplore(layout: 'cards' | 'map'): void {
    if (this.state.lastResponse === null || this.state.query === null) {
      throw new InvalidTransition('explore views require a completed query');
    }
    this.commit({ ...this.state, view: layout === 'map' ? 'explore-map' : 'explore-cards' });
  }

  selectCity(cityId: string): void {
    if (this.state.lastResponse === null) {
      throw new InvalidTransition('cannot select a city before results arrive');
    }
    if (!this.state.lastResponse.results.some((r) => r.city_id === cityId)) {
      throw new InvalidTransition(`city ${cityId} is not in the current results`);
    }
    this.commit({ ...this.state, view: 'details', selectedCityId: cityId });
  }

  startBooking(): void {
    if (this.state.selectedCityId === null) {
      throw new InvalidTransition('booking requires a selected city');
    }
    this.commit({ ...this.state, view: 'booking' });
  }

  confirmBooking(): void {
    if (this.state.view !== 'booking') {
      throw new InvalidTransition('confirmation follows the booking view');
    }
    this.commit({ ...this.state, view: 'confirmation' });
  }

  backToLanding(): void {
    this.commit({
      view: 'landing',
      query: this.state.query,
      selectedCityId: null,
      lastResponse: this.state.lastResponse,
    });
  }
}
