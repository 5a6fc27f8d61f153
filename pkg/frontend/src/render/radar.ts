/** Radar chart over the per-mode trade-off axes.
 *
 * Vertex radius is the API value times the chart radius, so a 0 touches
 * the center, a 1 touches the rim, and 0.5 sits exactly halfway; the
 * values themselves are rendered unmodified.
 */

import type { RadarAxes } from '../types.js';
import { jsonAttr } from './html.js';

export const RADAR_AXES = ['emissions', 'cost', 'duration'] as const;

export type RadarAxis = (typeof RADAR_AXES)[number];

export const RADAR_CENTER = { x: 150, y: 150 };
export const RADAR_RADIUS = 110;

function axisAngle(index: number): number {
  return -Math.PI / 2 + (index * 2 * Math.PI) / RADAR_AXES.length;
}

/** Chart-space vertices for one mode, in fixed axis order. */
export function radarVertices(values: Record<RadarAxis, number>): Array<{ x: number; y: number }> {
  return RADAR_AXES.map((axis, i) => {
    const angle = axisAngle(i);
    const r = values[axis] * RADAR_RADIUS;
    return {
      x: RADAR_CENTER.x + r * Math.cos(angle),
      y: RADAR_CENTER.y + r * Math.sin(angle),
    };
  });
}

export function verticesToPoints(vertices: Array<{ x: number; y: number }>): string {
  return vertices.map((v) => `${v.x.toFixed(2)},${v.y.toFixed(2)}`).join(' ');
}

function gridRing(fraction: number): string {
  const ring = radarVertices({
    emissions: fraction,
    cost: fraction,
    duration: fraction,
  });
  return `<polygon class="radar-grid" points="${verticesToPoints(ring)}"></polygon>`;
}

export function renderRadar(radar: RadarAxes): string {
  const rings = [0.25, 0.5, 0.75, 1.0].map(gridRing).join('\n    ');
  const axes = RADAR_AXES.map((axis, i) => {
    const angle = axisAngle(i);
    const endX = RADAR_CENTER.x + RADAR_RADIUS * Math.cos(angle);
    const endY = RADAR_CENTER.y + RADAR_RADIUS * Math.sin(angle);
    const labelX = RADAR_CENTER.x + (RADAR_RADIUS + 16) * Math.cos(angle);
    const labelY = RADAR_CENTER.y + (RADAR_RADIUS + 16) * Math.sin(angle);
    return (
      `<line class="radar-axis" x1="${RADAR_CENTER.x}" y1="${RADAR_CENTER.y}" x2="${endX.toFixed(2)}" y2="${endY.toFixed(2)}"></line>\n    ` +
      `<text class="radar-label" x="${labelX.toFixed(2)}" y="${labelY.toFixed(2)}" text-anchor="middle">${axis}</text>`
    );
  }).join('\n    ');
  const polygons = Object.entries(radar)
    .map(([mode, values]) => {
      const points = verticesToPoints(radarVertices(values));
      return `<polygon class="radar-poly radar-${mode}" data-mode="${mode}" data-values="${jsonAttr(values)}" points="${points}"></polygon>`;
    })
    .join('\n    ');
  return `
<svg class="radar" viewBox="0 0 300 300" role="img" aria-label="transport trade-off radar">
    ${rings}
    ${axes}
    ${polygons}
</svg>
`.trim();
}
