import type { SceneDoc } from "../src/types.js";

/** Hand-built two-case scene: one normal figure, one grayed to markers. */
export function tinyScene(): SceneDoc {
  return {
    format_version: 1,
    view: "spc3d",
    glyphs: [
      {
        case_id: 0,
        class_label: "A",
        kind: "spc3d-figure",
        nodes: [[0.2, 0.3, 0.9], [1.55, 0.7, 0.9]],
        extra_polylines: [],
        markers: [
          { point: [0.2, 0.3, 0.0], role: "origin" },
          { point: [0.2, 0.3, 0.9], role: "apex" },
          { point: [0.2, 0.3, 0.4], role: "contribution-dot" },
          { point: [1.55, 0.7, 0.0], role: "origin" },
          { point: [1.55, 0.7, 0.9], role: "apex" },
          { point: [1.55, 0.7, 0.5], role: "contribution-dot" },
        ],
        source_dim: 4,
        visibility: "normal",
      },
      {
        case_id: 1,
        class_label: "B",
        kind: "spc3d-figure",
        nodes: [],
        extra_polylines: [],
        markers: [
          { point: [0.6, 0.1, 0.0], role: "origin" },
          { point: [0.6, 0.1, 0.3], role: "apex" },
          { point: [0.6, 0.1, 0.2], role: "contribution-dot" },
          { point: [0.6, 0.1, 0.3], role: "origin" },
        ],
        source_dim: 4,
        visibility: "grayed",
      },
    ],
    overlays: [
      {
        kind: "threshold-plane",
        quads: [[[-0.1, -0.1, 0.5], [2.35, -0.1, 0.5], [2.35, 1.1, 0.5], [-0.1, 1.1, 0.5]]],
        color_role: "threshold",
        interactive: true,
      },
      {
        kind: "rule-rectangle",
        quads: [[[1.25, 0.0, 0.0], [1.75, 0.0, 0.0], [1.75, 0.4, 0.0], [1.25, 0.4, 0.0]]],
        color_role: "rule",
        interactive: true,
      },
    ],
    cameras: [
      {
        name: "top",
        position: [1.125, 0.5, 4.0],
        look_at: [1.125, 0.5, 0.5],
        up: [0.0, 1.0, 0.0],
        projection: "orthographic",
      },
      {
        name: "center",
        position: [1.125, 4.0, 1.5],
        look_at: [1.125, 0.5, 0.5],
        up: [0.0, 0.0, 1.0],
        projection: "perspective",
      },
    ],
    palette: { A: "#e6194b", B: "#3cb44b" },
    layout: { cube_size: 1.0, cube_spacing: null, glcl_placement: "anchored-plane",
              random_seed: 0 },
    toggles: {
      "threshold-plane": true,
      "interval-planes": true,
      "contribution-dots": true,
      "grayed-cases": true,
      "glcl-overlay": false,
    },
  };
}

export const VIEWPORT = { width: 800, height: 600, scale: 200 };
