/** Client-side mirror of the server's booking impact arithmetic.
 *
 * The booking view live-updates totals as the draft changes without a
 * round trip. The expressions below keep the server's operation order
 * (per-person first, group size as the outermost multiplication) so both
 * sides produce bit-identical IEEE doubles on the same inputs.
 */

import type { BookingImpact } from './types.js';

export interface ImpactInputs {
  transportCo2eKg: number;
  transportCostEur: number;
  accommodationEurPerNight: number;
  accommodationCo2eKgPerNight: number;
  nights: number;
  groupSize: number;
}

export function mirroredImpact(inputs: ImpactInputs): BookingImpact {
  const perPersonCo2e = inputs.transportCo2eKg + inputs.accommodationCo2eKgPerNight * inputs.nights;
  const perPersonCost = inputs.transportCostEur + inputs.accommodationEurPerNight * inputs.nights;
  return {
    total_cost_eur: perPersonCost * inputs.groupSize,
    total_co2e_kg: perPersonCo2e * inputs.groupSize,
    per_person_co2e_kg: perPersonCo2e,
  };
}
