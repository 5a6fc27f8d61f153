/** Thin JSON client for the recommendation service.
 *
 * Every non-2xx response carries a machine-readable error document; the
 * client surfaces it as an ApiError so views can render human_message
 * inline. The fetch function is injectable for tests.
 */

import type {
  AccommodationsResponse,
  ApiErrorDocument,
  BookingDraftBody,
  BookingResponse,
  EventBody,
  HealthResponse,
  NudgeResponse,
  QueryBody,
  RecommendationResponse,
  TransportResponse,
} from './types.js';

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  readonly document: ApiErrorDocument;

  constructor(document: ApiErrorDocument) {
    super(document.human_message);
    this.name = 'ApiError';
    this.document = document;
  }

  get machineCode(): string {
    return this.document.machine_code;
  }

  get httpStatus(): number {
    return this.document.http_status;
  }
}

function errorDocument(status: number, body: unknown): ApiErrorDocument {
  if (
    typeof body === 'object' &&
    body !== null &&
    typeof (body as ApiErrorDocument).machine_code === 'string' &&
    typeof (body as ApiErrorDocument).human_message === 'string'
  ) {
    return body as ApiErrorDocument;
  }
  // Defensive: the server always sends the document, but a proxy might not.
  return {
    http_status: status,
    machine_code: 'unexpected_response',
    human_message: `server returned status ${status} without an error document`,
  };
}

export class ApiClient {
  private readonly baseUrl: string;
  private readonly fetchFn: FetchLike;

  constructor(baseUrl: string, fetchFn: FetchLike = (...args) => fetch(...args)) {
    this.baseUrl = baseUrl.replace(/\/+$/, '');
    this.fetchFn = fetchFn;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { 'content-type': 'application/json' } };
    if (body !== undefined) {
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchFn(this.baseUrl + path, init);
    let parsed: unknown = null;
    try {
      parsed = await response.json();
    } catch {
      parsed = null;
    }
    if (!response.ok) {
      throw new ApiError(errorDocument(response.status, parsed));
    }
    return parsed as T;
  }

  health(): Promise<HealthResponse> {
    return this.request('GET', '/api/health');
  }

  recommendations(query: QueryBody): Promise<RecommendationResponse> {
    return this.request('POST', '/api/recommendations', query);
  }

  transport(cityId: string, from: string): Promise<TransportResponse> {
    const q = `?from=${encodeURIComponent(from)}`;
    return this.request('GET', `/api/cities/${encodeURIComponent(cityId)}/transport${q}`);
  }

  accommodations(cityId: string): Promise<AccommodationsResponse> {
    return this.request('GET', `/api/cities/${encodeURIComponent(cityId)}/accommodations`);
  }

  book(draft: BookingDraftBody): Promise<BookingResponse> {
    return this.request('POST', '/api/bookings', draft);
  }

  nudge(context: string, cityId: string, query: QueryBody): Promise<NudgeResponse> {
    return this.request('POST', '/api/nudges', { context, city_id: cityId, query });
  }

  /** Fire a session event. Callers treat the result as advisory; see
   * events.ts for the retry policy. */
  submitEvent(event: EventBody): Promise<{ status: string }> {
    return this.request('POST', '/api/events', event);
  }
}
