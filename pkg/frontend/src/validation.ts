/** Client-side mirror of the server's query validation.
 *
 * The landing form disables submission while any rule fails, so well-formed
 * sessions never see a 400 for shape problems; unknown departures still
 * come back from the API as a 404 and are surfaced inline.
 */

import type { QueryBody } from './types.js';

export interface QueryFormState {
  departureId: string;
  month: number | null;
  interests: string[];
  personalization: string[];
}

export interface FieldErrors {
  departure?: string;
  month?: string;
  interests?: string;
}

export const EMPTY_FORM: QueryFormState = {
  departureId: '',
  month: null,
  interests: [],
  personalization: [],
};

export function validateForm(form: QueryFormState): FieldErrors {
  const errors: FieldErrors = {};
  if (form.departureId.trim() === '') {
    errors.departure = 'pick a departure city';
  }
  if (form.month === null) {
    errors.month = 'pick a travel month';
  } else if (!Number.isInteger(form.month) || form.month < 1 || form.month > 12) {
    errors.month = 'month must be between 1 and 12';
  }
  if (form.interests.some((i) => i.trim() === '')) {
    errors.interests = 'interests must be non-empty labels';
  }
  return errors;
}

export function isSubmittable(form: QueryFormState): boolean {
  return Object.keys(validateForm(form)).length === 0;
}

/** Shape the request body once the form passes validation. */
export function toQueryBody(form: QueryFormState): QueryBody {
  if (form.month === null) {
    throw new Error('cannot build a query without a month');
  }
  return {
    departure_id: form.departureId.trim(),
    month: form.month,
    interests: form.interests,
    personalization: form.personalization,
  };
}

/** Map an API error document onto the form field it concerns, so e.g. an
 * unknown departure renders next to the departure input rather than as a
 * page-level failure. */
export function fieldForMachineCode(machineCode: string): keyof FieldErrors | null {
  switch (machineCode) {
    case 'unknown_departure':
    case 'departure_id_invalid':
      return 'departure';
    case 'month_out_of_range':
      return 'month';
    case 'interests_invalid':
    case 'unknown_interest':
      return 'interests';
    default:
      return null;
  }
}
