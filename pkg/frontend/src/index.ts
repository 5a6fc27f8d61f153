export { ApiClient, ApiError } from './api.js';
export { App, mount } from './app.js';
export { resolveConfig } from './config.js';
export { EventEmitter, EVENT_KINDS, newSessionId } from './events.js';
export { mirroredImpact } from './impact.js';
export { ViewStore, InvalidTransition } from './state.js';
export * from './types.js';
export {
  EMPTY_FORM,
  fieldForMachineCode,
  isSubmittable,
  toQueryBody,
  validateForm,
} from './validation.js';
export { renderBanner, renderBannerRegion, renderTreeIcons } from './render/banner.js';
export {
  renderBookingPanel,
  renderConfirmation,
  renderImpactSummary,
} from './render/booking.js';
export { renderCard, renderCardGrid } from './render/cards.js';
export { renderDetails } from './render/details.js';
export { renderLandingForm } from './render/landing.js';
export { renderMap, LIGHT_COLORS, MODE_COLORS } from './render/map.js';
export {
  radarVertices,
  renderRadar,
  verticesToPoints,
  RADAR_AXES,
  RADAR_CENTER,
  RADAR_RADIUS,
} from './render/radar.js';
