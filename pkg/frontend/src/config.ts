/** Deployment configuration is limited to the API base URL. */

const DEFAULT_BASE_URL = 'http://127.0.0.1:8000';

export interface AppConfig {
  baseUrl: string;
}

declare global {
  interface Window {
    ECOTRIP_API_BASE?: string;
  }
}

/** Resolve the base URL: explicit argument, then the host page's
 * `window.ECOTRIP_API_BASE`, then the local default. Trailing slashes are
 * stripped so path joining stays uniform. */
export function resolveConfig(explicit?: string): AppConfig {
  const fromPage =
    typeof window !== 'undefined' && typeof window.ECOTRIP_API_BASE === 'string'
      ? window.ECOTRIP_API_BASE
      : undefined;
  const raw = explicit ?? fromPage ?? DEFAULT_BASE_URL;
  return { baseUrl: raw.replace(/\/+$/, '') };
}
