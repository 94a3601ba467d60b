// Typed mirror of the canonical scene document (FORMAT.md) plus its parser.

export type Vec3 = [number, number, number];

export type MarkerRole = "origin" | "apex" | "contribution-dot";
export type Visibility = "normal" | "grayed" | "hidden";

export interface SceneMarker {
  point: Vec3;
  role: MarkerRole;
}

export interface SceneGlyph {
  case_id: number;
  class_label: string;
  kind: string;
  nodes: Vec3[];
  extra_polylines: Vec3[][];
  markers: SceneMarker[];
  source_dim: number;
  visibility: Visibility;
}

export interface SceneOverlay {
  kind: "threshold-plane" | "regression-plane" | "rule-rectangle" | "interval-plane-pair";
  quads: Vec3[][];
  color_role: string;
  interactive: boolean;
}

export interface SceneCamera {
  name: string;
  position: Vec3;
  look_at: Vec3;
  up: Vec3;
  projection: "perspective" | "orthographic";
}

export interface SceneLayout {
  cube_size: number;
  cube_spacing: number | null;
  glcl_placement: string;
  random_seed: number;
}

export interface SceneDoc {
  format_version: number;
  view: string;
  glyphs: SceneGlyph[];
  overlays: SceneOverlay[];
  cameras: SceneCamera[];
  palette: Record<string, string>;
  layout: SceneLayout;
  toggles: Record<string, boolean>;
}

export const SUPPORTED_FORMAT_VERSIONS = [1];

export class SceneParseError extends Error {}

function isVec3(value: unknown): value is Vec3 {
  return Array.isArray(value) && value.length === 3 &&
    value.every((v) => typeof v === "number" && Number.isFinite(v));
}

/** Parse and validate scene bytes; throws SceneParseError, never half-parses. */
export function parseScene(text: string): SceneDoc {
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch (err) {
    throw new SceneParseError(`scene is not valid JSON: ${(err as Error).message}`);
  }
  const doc = raw as Partial<SceneDoc>;
  if (typeof doc !== "object" || doc === null) {
    throw new SceneParseError("scene document must be an object");
  }
  if (!SUPPORTED_FORMAT_VERSIONS.includes(doc.format_version as number)) {
    throw new SceneParseError(
      `unsupported scene format_version ${doc.format_version}; ` +
      `supported versions: ${SUPPORTED_FORMAT_VERSIONS.join(", ")}`,
    );
  }
  if (!Array.isArray(doc.glyphs) || !Array.isArray(doc.overlays) ||
      !Array.isArray(doc.cameras) || typeof doc.view !== "string" ||
      typeof doc.palette !== "object" || typeof doc.toggles !== "object" ||
      typeof doc.layout !== "object") {
    throw new SceneParseError("scene document is missing required fields");
  }
  for (const glyph of doc.glyphs as SceneGlyph[]) {
    if (!glyph.nodes.every(isVec3) ||
        !glyph.markers.every((m) => isVec3(m.point)) ||
        !glyph.extra_polylines.every((line) => line.every(isVec3))) {
      throw new SceneParseError(`glyph ${glyph.case_id} carries malformed geometry`);
    }
  }
  return doc as SceneDoc;
}

/** X origin of cube k under the scene's layout. */
export function cubeOrigin(layout: SceneLayout, k: number): number {
  const spacing = layout.cube_spacing ?? 0.25 * layout.cube_size;
  return k * (layout.cube_size + spacing);
}
