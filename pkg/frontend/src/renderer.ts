// Scene -> SVG. Pure string generation with a painter's depth sort, so the
// full rendering path is testable without a DOM or GPU.

import type { CameraState, Viewport } from "./camera.js";
import { projectPoint, viewBasis, type ViewBasis } from "./camera.js";
import type { SceneDoc, SceneGlyph, SceneMarker, Vec3 } from "./types.js";
import { cubeOrigin } from "./types.js";

export interface RenderOptions {
  viewport: Viewport;
  toggles: Record<string, boolean>;
  classVisible?: Record<string, boolean>;
}

const GRAY = "#9a9a9a";
const BACKGROUND = "#14161c";

const ROLE_STYLE: Record<string, { fill: string; stroke: string; opacity: number }> = {
  threshold: { fill: "#e9c51a", stroke: "#e9c51a", opacity: 0.35 },
  rule: { fill: "#ffffff", stroke: "#ffffff", opacity: 0.12 },
  interval: { fill: "#6fb7e9", stroke: "#6fb7e9", opacity: 0.3 },
  regression: { fill: "#e98fb7", stroke: "#e98fb7", opacity: 0.3 },
};

const fmt = (v: number): string => v.toFixed(2);

interface Drawable {
  depth: number;
  markup: string;
}

function projectAll(camera: CameraState, basis: ViewBasis, points: Vec3[],
                    viewport: Viewport) {
  return points.map((p) => projectPoint(camera, basis, p, viewport));
}

function polylineMarkup(projected: { x: number; y: number }[], color: string,
                        width: number): string {
  const points = projected.map((p) => `${fmt(p.x)},${fmt(p.y)}`).join(" ");
  return `<polyline points="${points}" fill="none" stroke="${color}" ` +
    `stroke-width="${width}"/>`;
}

function meanDepth(projected: { depth: number }[]): number {
  return projected.reduce((acc, p) => acc + p.depth, 0) / projected.length;
}

function markerRadius(role: SceneMarker["role"]): number {
  return role === "apex" ? 4 : role === "contribution-dot" ? 3 : 2;
}

function markerColor(role: SceneMarker["role"], classColor: string): string {
  return role === "contribution-dot" ? "#ffffff" : classColor;
}

function glyphDrawables(glyph: SceneGlyph, color: string, camera: CameraState,
                        basis: ViewBasis, opts: RenderOptions): Drawable[] {
  const out: Drawable[] = [];
  const grayed = glyph.visibility === "grayed";

  if (!grayed) {
    const lines = [glyph.nodes, ...(opts.toggles["glcl-overlay"] !== false
      ? glyph.extra_polylines : [])];
    for (const line of lines) {
      if (line.length < 2) continue;
      const projected = projectAll(camera, basis, line, opts.viewport);
      out.push({
        depth: meanDepth(projected),
        markup: polylineMarkup(projected, color, 1.2),
      });
    }
    if (glyph.kind === "spc3d-figure") {
      // vertical f lines: k-th origin marker up to the k-th apex marker
      const origins = glyph.markers.filter((m) => m.role === "origin");
      const apexes = glyph.markers.filter((m) => m.role === "apex");
      for (let k = 0; k < Math.min(origins.length, apexes.length); k += 1) {
        const projected = projectAll(
          camera, basis, [origins[k].point, apexes[k].point], opts.viewport);
        out.push({
          depth: meanDepth(projected),
          markup: polylineMarkup(projected, color, 1.0),
        });
      }
    }
  }

  for (const marker of glyph.markers) {
    if (marker.role === "contribution-dot" && !grayed &&
        opts.toggles["contribution-dots"] === false) {
      continue;
    }
    const p = projectPoint(camera, basis, marker.point, opts.viewport);
    const fill = grayed ? GRAY : markerColor(marker.role, color);
    out.push({
      depth: p.depth,
      markup: `<circle cx="${fmt(p.x)}" cy="${fmt(p.y)}" ` +
        `r="${markerRadius(marker.role)}" fill="${fill}"` +
        (grayed ? ` fill-opacity="0.5"` : ``) + `/>`,
    });
  }
  return out;
}

function overlayVisible(kind: string, toggles: Record<string, boolean>): boolean {
  if (kind === "threshold-plane") return toggles["threshold-plane"] !== false;
  if (kind === "interval-plane-pair") return toggles["interval-planes"] !== false;
  return true;
}

export function renderScene(scene: SceneDoc, camera: CameraState,
                            opts: RenderOptions): string {
  const basis = viewBasis(camera);
  const drawables: Drawable[] = [];

  scene.glyphs.forEach((glyph) => {
    if (glyph.visibility === "hidden") return;
    if (glyph.visibility === "grayed" && opts.toggles["grayed-cases"] === false) {
      return;
    }
    if (opts.classVisible && opts.classVisible[glyph.class_label] === false) {
      return;
    }
    const color = scene.palette[glyph.class_label] ?? "#ffffff";
    drawables.push(...glyphDrawables(glyph, color, camera, basis, opts));
  });

  scene.overlays.forEach((overlay, index) => {
    if (!overlayVisible(overlay.kind, opts.toggles)) return;
    const style = ROLE_STYLE[overlay.color_role] ??
      { fill: "#cccccc", stroke: "#cccccc", opacity: 0.3 };
    for (const quad of overlay.quads) {
      const projected = projectAll(camera, basis, quad, opts.viewport);
      const points = projected.map((p) => `${fmt(p.x)},${fmt(p.y)}`).join(" ");
      drawables.push({
        depth: meanDepth(projected) + 1e-6, // nudge planes behind coincident lines
        markup: `<polygon points="${points}" fill="${style.fill}" ` +
          `fill-opacity="${style.opacity}" stroke="${style.stroke}" ` +
          `stroke-width="1" data-overlay="${index}"` +
          (overlay.interactive ? ` data-interactive="true"` : ``) + `/>`,
      });
    }
  });

  drawables.sort((a, b) => b.depth - a.depth); // far first
  const { width, height } = opts.viewport;
  return `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" ` +
    `height="${height}" viewBox="0 0 ${width} ${height}">` +
    `<rect width="${width}" height="${height}" fill="${BACKGROUND}"/>` +
    drawables.map((d) => d.markup).join("") +
    `</svg>`;
}

/**
 * Invert an orthographic projection onto the horizontal plane Z = z. Used by
 * rectangle editing in the top view, where pointer positions must become
 * cube-local coordinates.
 */
export function screenToZPlane(camera: CameraState, viewport: Viewport,
                               sx: number, sy: number, z = 0): Vec3 | null {
  if (camera.projection !== "orthographic") return null;
  const basis = viewBasis(camera);
  if (Math.abs(basis.forward[2]) < 1e-9) return null;
  const cx = (sx - viewport.width / 2) / viewport.scale;
  const cy = -(sy - viewport.height / 2) / viewport.scale;
  const origin: Vec3 = [
    camera.position[0] + basis.right[0] * cx + basis.trueUp[0] * cy,
    camera.position[1] + basis.right[1] * cx + basis.trueUp[1] * cy,
    camera.position[2] + basis.right[2] * cx + basis.trueUp[2] * cy,
  ];
  const t = (z - origin[2]) / basis.forward[2];
  return [
    origin[0] + basis.forward[0] * t,
    origin[1] + basis.forward[1] * t,
    z,
  ];
}

/** World point on Z = 0 -> (pair index, cube-local coordinates). */
export function worldToCubeLocal(scene: SceneDoc, point: Vec3):
    { pair: number; u: number; v: number } {
  const size = scene.layout.cube_size;
  const stride = size + (scene.layout.cube_spacing ?? 0.25 * size);
  const pair = Math.max(0, Math.floor(point[0] / stride));
  return {
    pair,
    u: (point[0] - cubeOrigin(scene.layout, pair)) / size,
    v: point[1] / size,
  };
}
