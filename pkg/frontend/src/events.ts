/** Consent-gated session event emission.
 *
 * Nothing is sent while consent is off. With consent on, each emit gets the
 * next per-session sequence number and is posted fire-and-forget: the UI
 * never waits on the response, failures retry silently with backoff, and
 * an event is dropped after three failed attempts.
 */

export const EVENT_KINDS = [
  'query_submitted',
  'city_viewed',
  'banner_shown',
  'banner_clicked',
  'booking_confirmed',
] as const;

export type EventKind = (typeof EVENT_KINDS)[number];

export type EventPoster = (event: {
  session_id: string;
  seq: number;
  kind: string;
  payload: Record<string, unknown>;
}) => Promise<unknown>;

export type Sleeper = (ms: number) => Promise<void>;

const MAX_ATTEMPTS = 3;
const BACKOFF_BASE_MS = 250;

const defaultSleep: Sleeper = (ms) => new Promise((resolve) => setTimeout(resolve, ms));

export function newSessionId(): string {
  const alphabet = 'abcdefghijklmnopqrstuvwxyz0123456789';
  let id = 'web-';
  for (let i = 0; i < 12; i += 1) {
    id += alphabet[Math.floor(Math.random() * alphabet.length)];
  }
  return id;
}

export class EventEmitter {
  readonly sessionId: string;
  private consent = false;
  private seq = 0;
  private readonly post: EventPoster;
  private readonly sleep: Sleeper;
  private inFlight: Promise<void>[] = [];

  constructor(post: EventPoster, sessionId: string = newSessionId(), sleep: Sleeper = defaultSleep) {
    this.post = post;
    this.sessionId = sessionId;
    this.sleep = sleep;
  }

  setConsent(value: boolean): void {
    this.consent = value;
  }

  get consentGiven(): boolean {
    return this.consent;
  }

  get lastSeq(): number {
    return this.seq;
  }

  /** Emit an event if consent is on. Returns the assigned seq, or null when
   * the event was suppressed. The network work runs detached. */
  emit(kind: EventKind, payload: Record<string, unknown> = {}): number | null {
    if (!this.consent) {
      return null;
    }
    this.seq += 1;
    const event = { session_id: this.sessionId, seq: this.seq, kind, payload };
    const task = this.deliver(event).catch(() => undefined);
    this.inFlight.push(task);
    return this.seq;
  }

  private async deliver(event: Parameters<EventPoster>[0]): Promise<void> {
    for (let attempt = 1; attempt <= MAX_ATTEMPTS; attempt += 1) {
      try {
        await this.post(event);
        return;
      } catch {
        if (attempt === MAX_ATTEMPTS) {
          return; // dropped silently
        }
        await this.sleep(BACKOFF_BASE_MS * 2 ** (attempt - 1));
      }
    }
  }

  /** Wait for all started deliveries to settle (used by tests and by the
   * page-hide handler; the UI itself never blocks on this). */
  async flush(): Promise<void> {
    const pending = this.inFlight;
    this.inFlight = [];
    await Promise.all(pending);
  }
}
