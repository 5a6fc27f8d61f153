/** Landing form: departure, month, interests, personalization, consent.
 * Submission stays disabled until the mirrored validation passes. */

import type { FieldErrors, QueryFormState } from '../validation.js';
import { isSubmittable } from '../validation.js';
import { escapeHtml } from './html.js';

export const MONTH_NAMES = [
  'January',
  'February',
  'March',
  'April',
  'May',
  'June',
  'July',
  'August',
  'September',
  'October',
  'November',
  'December',
];

export const INTEREST_CHOICES = ['cultural', 'culinary', 'nature', 'nightlife'];

export const PERSONALIZATION_CHOICES = ['walkability', 'air_quality', 'climate_vulnerability'];

export interface LandingModel {
  form: QueryFormState;
  /** Client-rule failures plus any API error already mapped to a field. */
  errors: FieldErrors;
  consent: boolean;
  submitting?: boolean;
}

function fieldError(errors: FieldErrors, field: keyof FieldErrors): string {
  const message = errors[field];
  return message
    ? `<p class="field-error" data-field="${field}">${escapeHtml(message)}</p>`
    : '';
}

function checkboxes(name: string, choices: string[], checked: string[]): string {
  return choices
    .map(
      (choice) => `
    <label class="check">
      <input type="checkbox" name="${name}" value="${choice}"${checked.includes(choice) ? ' checked' : ''}>
      ${choice.replace(/_/g, ' ')}
    </label>`,
    )
    .join('');
}

export function renderLandingForm(model: LandingModel): string {
  const monthOptions = [
    `<option value=""${model.form.month === null ? ' selected' : ''}>choose a month</option>`,
    ...MONTH_NAMES.map(
      (name, i) =>
        `<option value="${i + 1}"${model.form.month === i + 1 ? ' selected' : ''}>${name}</option>`,
    ),
  ].join('');
  const disabled = !isSubmittable(model.form) || model.submitting ? ' disabled' : '';
  return `
<form class="landing" novalidate>
  <label>Departure city
    <input type="text" name="departure" value="${escapeHtml(model.form.departureId)}" placeholder="e.g. munich">
  </label>
  ${fieldError(model.errors, 'departure')}
  <label>Travel month
    <select name="month">${monthOptions}</select>
  </label>
  ${fieldError(model.errors, 'month')}
  <fieldset class="interests">
    <legend>Interests</legend>${checkboxes('interests', INTEREST_CHOICES, model.form.interests)}
  </fieldset>
  ${fieldError(model.errors, 'interests')}
  <fieldset class="personalization">
    <legend>Matters to me</legend>${checkboxes('personalization', PERSONALIZATION_CHOICES, model.form.personalization)}
  </fieldset>
  <label class="consent">
    <input type="checkbox" name="consent"${model.consent ? ' checked' : ''}>
    Share anonymous usage events to improve suggestions
  </label>
  <button type="submit" class="submit"${disabled}>Find greener trips</button>
</form>
`.trim();
}
