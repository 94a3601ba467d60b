// Camera state, orbit controls, and the 3D -> screen projection.

import type { SceneCamera, Vec3 } from "./types.js";

export interface CameraState {
  position: Vec3;
  lookAt: Vec3;
  up: Vec3;
  projection: "perspective" | "orthographic";
}

export interface Viewport {
  width: number;
  height: number;
  /** world units to pixels (at distance 1 for perspective) */
  scale: number;
}

export interface Projected {
  x: number;
  y: number;
  /** distance along the view direction; larger is farther */
  depth: number;
}

const sub = (a: Vec3, b: Vec3): Vec3 => [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
const add = (a: Vec3, b: Vec3): Vec3 => [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
const dot = (a: Vec3, b: Vec3): number => a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
const cross = (a: Vec3, b: Vec3): Vec3 => [
  a[1] * b[2] - a[2] * b[1],
  a[2] * b[0] - a[0] * b[2],
  a[0] * b[1] - a[1] * b[0],
];
const norm = (a: Vec3): number => Math.sqrt(dot(a, a));

function normalize(a: Vec3): Vec3 {
  const n = norm(a);
  if (n === 0) throw new Error("cannot normalize a zero vector");
  return [a[0] / n, a[1] / n, a[2] / n];
}

export function presetToState(preset: SceneCamera): CameraState {
  return {
    position: [...preset.position],
    lookAt: [...preset.look_at],
    up: [...preset.up],
    projection: preset.projection,
  };
}

export interface ViewBasis {
  right: Vec3;
  trueUp: Vec3;
  forward: Vec3;
}

export function viewBasis(camera: CameraState): ViewBasis {
  const forward = normalize(sub(camera.lookAt, camera.position));
  const right = normalize(cross(forward, camera.up));
  const trueUp = cross(right, forward);
  return { right, trueUp, forward };
}

/**
 * Project a world point to viewport pixels. Orthographic drops depth from the
 * screen position entirely, so a top-view projection of Z-stacked points
 * reproduces their flat 2-D arrangement exactly.
 */
export function projectPoint(camera: CameraState, basis: ViewBasis,
                             point: Vec3, viewport: Viewport): Projected {
  const rel = sub(point, camera.position);
  const cx = dot(basis.right, rel);
  const cy = dot(basis.trueUp, rel);
  const cz = dot(basis.forward, rel);
  let sx: number;
  let sy: number;
  if (camera.projection === "perspective") {
    const z = Math.max(cz, 1e-6); // clamp points behind the eye
    sx = cx / z;
    sy = cy / z;
  } else {
    sx = cx;
    sy = cy;
  }
  return {
    x: viewport.width / 2 + sx * viewport.scale,
    y: viewport.height / 2 - sy * viewport.scale,
    depth: cz,
  };
}

/** Arrow keys rotate by this many radians per press. */
export const ORBIT_STEP = (5 * Math.PI) / 180;

/**
 * Rotate the camera position around the look-at point (world +Z is the pole).
 * The look-at target never moves; elevation is clamped to keep the basis
 * well defined.
 */
export function orbit(camera: CameraState, dAzimuth: number,
                      dElevation: number): CameraState {
  const offset = sub(camera.position, camera.lookAt);
  const r = norm(offset);
  const azimuth = Math.atan2(offset[1], offset[0]) + dAzimuth;
  const elevation = Math.min(
    Math.PI / 2 - 0.01,
    Math.max(-Math.PI / 2 + 0.01,
             Math.asin(offset[2] / r) + dElevation),
  );
  const position: Vec3 = add(camera.lookAt, [
    r * Math.cos(elevation) * Math.cos(azimuth),
    r * Math.cos(elevation) * Math.sin(azimuth),
    r * Math.sin(elevation),
  ]);
  return { position, lookAt: [...camera.lookAt], up: [0, 0, 1],
           projection: camera.projection };
}
