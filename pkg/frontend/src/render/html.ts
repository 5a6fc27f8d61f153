export function escapeHtml(value: string): string {
  return value
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;')
    .replace(/'/g, '&#39;');
}

/** Attribute-safe JSON payload for data-* passthrough attributes. */
export function jsonAttr(value: unknown): string {
  return escapeHtml(JSON.stringify(value));
}
