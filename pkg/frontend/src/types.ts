/** Wire types for the ecotrip JSON API. Field names mirror the server
 * payloads exactly; the UI renders them without reordering or rescaling. */

export type TrafficLight = 'green' | 'yellow' | 'red';

export type TransportMode = 'train' | 'bus' | 'flight';

export type BannerContext = 'explore' | 'booking' | 'confirmation';

export interface QueryBody {
  departure_id: string;
  month: number;
  interests: string[];
  personalization: string[];
}

export interface ScoreComponents {
  transport: number;
  popularity: number;
  seasonality: number;
  interest_penalty: number;
  personalization_penalty: number;
}

export interface WeightVector {
  transport: number;
  popularity: number;
  seasonality: number;
  interest: number;
  personalization: number;
}

export interface RankedCity {
  rank: number;
  city_id: string;
  name: string;
  country: string;
  location: { lat: number; lon: number };
  score: number;
  components: ScoreComponents;
  weights: WeightVector;
  interest_match: number;
  min_co2e_kg: number;
  traffic_light: TrafficLight;
  badge: string | null;
}

export interface AlternativeSuggestion {
  city_id: string;
  co2e_saving_kg: number;
  interest_match: number;
  score: number;
}

export interface Reinforcement {
  co2e_saved_kg: number;
  trees_equivalent: number;
}

export interface NudgeBanner {
  kind: 'alternative_suggestion' | 'positive_reinforcement';
  context: BannerContext;
  alternatives?: AlternativeSuggestion[];
  reinforcement?: Reinforcement;
}

export interface RecommendationResponse {
  query: QueryBody;
  results: RankedCity[];
  banners: NudgeBanner[];
}

export interface TransportEstimate {
  mode: TransportMode;
  distance_km: number;
  co2e_kg: number;
  cost_eur: number;
  duration_h: number;
  traffic_light: TrafficLight;
}

/** Per-mode normalized axes, e.g. radar.train.emissions in [0, 1]. */
export type RadarAxes = Record<string, { emissions: number; cost: number; duration: number }>;

export interface TransportResponse {
  from: string;
  city_id: string;
  estimates: TransportEstimate[];
  radar: RadarAxes;
}

export interface AccommodationOption {
  id: string;
  name: string;
  eur_per_night: number;
  co2e_kg_per_night: number;
  eco_label: boolean;
}

export interface AccommodationsResponse {
  city_id: string;
  options: AccommodationOption[];
}

export interface BookingDraftBody {
  city_id: string;
  transport: {
    mode: TransportMode;
    distance_km: number;
    co2e_kg: number;
    cost_eur: number;
    duration_h: number;
  };
  accommodation: AccommodationOption;
  nights: number;
  group_size: number;
  query: QueryBody;
}

export interface BookingImpact {
  total_cost_eur: number;
  total_co2e_kg: number;
  per_person_co2e_kg: number;
}

export interface BookingReceipt {
  booking_id: string;
  created_at: string;
  draft: {
    city_id: string;
    transport: Omit<TransportEstimate, 'traffic_light'>;
    accommodation: AccommodationOption;
    nights: number;
    group_size: number;
  };
  impact: BookingImpact;
}

export interface BookingResponse {
  receipt: BookingReceipt;
  banner: NudgeBanner | null;
}

export interface NudgeResponse {
  banner: NudgeBanner | null;
}

export interface HealthResponse {
  status: string;
  version: string;
  catalog_fingerprint: string;
  city_count: number;
}

export interface EventBody {
  session_id: string;
  seq: number;
  kind: string;
  payload?: Record<string, unknown>;
}

/** Error document returned by every non-2xx response. */
export interface ApiErrorDocument {
  http_status: number;
  machine_code: string;
  human_message: string;
}
