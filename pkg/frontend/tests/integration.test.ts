// End-to-end loop against the real session service: upload iris, search a
// discriminant, drag the rule rectangle to the setosa bounds derived from the
// scene itself, and check that the panel shows the service's bytes verbatim.

import { spawn, type ChildProcess } from "node:child_process";
import { readFileSync } from "node:fs";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { presetToState, projectPoint, viewBasis } from "../src/camera.js";
import { ServiceClient } from "../src/client.js";
import { RectangleEditor, snapOutward, type Box } from "../src/rectangleEdit.js";
import { ThresholdEditor } from "../src/thresholdEdit.js";
import { cubeOrigin, parseScene, type SceneDoc } from "../src/types.js";
import { ViewState } from "../src/viewState.js";

const PORT = 8765 + Math.floor(Math.random() * 500);
const BASE = `http://127.0.0.1:${PORT}`;
const IRIS = readFileSync(new URL("../../data/iris.csv", import.meta.url));

let server: ChildProcess;

async function waitForServer(): Promise<void> {
  for (let attempt = 0; attempt < 100; attempt += 1) {
    try {
      const response = await fetch(`${BASE}/sessions/probe/stats`);
      if (response.status === 404) return;
    } catch {
      // not listening yet
    }
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
  throw new Error("service did not come up");
}

beforeAll(async () => {
  server = spawn("python3", ["-m", "glcbench", "serve", "--port", String(PORT)],
                 { stdio: "ignore" });
  await waitForServer();
});

afterAll(() => {
  server?.kill();
});

/** Setosa bounds on the second cube pair, derived from scene geometry. */
function setosaBoxFromScene(scene: SceneDoc): Box {
  const size = scene.layout.cube_size;
  const origin = cubeOrigin(scene.layout, 1);
  let bounds = { x: [1, 0] as [number, number], y: [1, 0] as [number, number] };
  for (const glyph of scene.glyphs) {
    if (glyph.class_label !== "setosa") continue;
    const bases = glyph.markers.filter((m) => m.role === "origin");
    const [x, y] = bases[1].point;
    const u = (x - origin) / size;
    const v = y / size;
    bounds = {
      x: [Math.min(bounds.x[0], u), Math.max(bounds.x[1], u)],
      y: [Math.min(bounds.y[0], v), Math.max(bounds.y[1], v)],
    };
  }
  return snapOutward(bounds);
}

describe("viewer loop against the live service", () => {
  it("runs the search, drag, and stats round-trip", async () => {
    const client = new ServiceClient(BASE);
    const info = await client.createSession(IRIS);
    expect(info.classes).toEqual(["setosa", "versicolor", "virginica"]);

    // activate a searched discriminant, then load the 3D scene
    const modelPut = await client.putModel(info.sessionId, 0, {
      search: { target_class: "setosa", seed: 1 },
    });
    expect(modelPut.kind).toBe("ok");

    const { text, revision } = await client.getScene(info.sessionId, "spc3d");
    const scene = parseScene(text);
    expect(scene.glyphs).toHaveLength(150);
    expect(revision).toBe(1);
    const state = new ViewState(scene, revision);
    if (modelPut.kind === "ok") state.acceptStats(modelPut.body);

    // drag the rule rectangle from the full square to the derived bounds
    const target = setosaBoxFromScene(scene);
    const editor = new RectangleEditor(1, { x: [0, 1], y: [0, 1] }, "setosa");
    editor.begin("max-corner", [1, 1]);
    editor.drag([target.x[1], target.y[1]]);
    editor.begin("min-corner", [0, 0]);
    editor.drag([target.x[0], target.y[0]]);
    editor.release();

    const result = await state.submit(() =>
      client.putRule(info.sessionId, state.revision, editor.rulePayload()));
    expect(result).toBe("applied");
    expect(state.statsTokens?.covered).toBe("50");
    expect(state.statsTokens?.purity).toBe("1.0");
    expect(state.statsTokens?.classCounts["setosa"]).toBe("50");

    // every displayed token is byte-equal to the stats endpoint's response
    const statsBody = await client.getStatsText(info.sessionId);
    expect(statsBody).toContain(`"covered":${state.statsTokens!.covered}`);
    expect(statsBody).toContain(`"purity":${state.statsTokens!.purity}`);
    expect(statsBody).toContain(`"accuracy":${state.statsTokens!.accuracy}`);
    const fresh = new ViewState(scene, state.revision);
    fresh.acceptStats(statsBody);
    expect(fresh.statsTokens).toEqual(state.statsTokens);

    // the refreshed scene grays exactly the uncovered cases
    const after = parseScene((await client.getScene(info.sessionId, "spc3d")).text);
    const normal = after.glyphs.filter((g) => g.visibility === "normal");
    expect(normal).toHaveLength(50);
    expect(normal.every((g) => g.class_label === "setosa")).toBe(true);

    await client.deleteSession(info.sessionId);
  });

  it("reproduces the flat paired view from the top preset", async () => {
    const client = new ServiceClient(BASE);
    const info = await client.createSession(IRIS);
    await client.putModel(info.sessionId, 0,
                          { search: { target_class: "setosa", seed: 1 } });
    const tall = parseScene((await client.getScene(info.sessionId, "spc3d")).text);
    const flat = parseScene((await client.getScene(info.sessionId, "spc2d")).text);

    const top = presetToState(tall.cameras.find((c) => c.name === "top")!);
    expect(top.projection).toBe("orthographic");
    const basis = viewBasis(top);
    const viewport = { width: 960, height: 600, scale: 220 };

    for (let i = 0; i < tall.glyphs.length; i += 1) {
      const bases = tall.glyphs[i].markers
        .filter((m) => m.role === "origin")
        .map((m) => projectPoint(top, basis, m.point, viewport));
      const flatNodes = flat.glyphs[i].nodes
        .map((p) => projectPoint(top, basis, p, viewport));
      expect(bases.length).toBe(flatNodes.length);
      for (let k = 0; k < bases.length; k += 1) {
        expect(bases[k].x).toBe(flatNodes[k].x); // exact, same bytes in, same out
        expect(bases[k].y).toBe(flatNodes[k].y);
      }
    }
    await client.deleteSession(info.sessionId);
  });

  it("drags the threshold plane and restores perfect accuracy", async () => {
    const client = new ServiceClient(BASE);
    const info = await client.createSession(IRIS);
    const searched = await client.putModel(info.sessionId, 0, {
      search: { target_class: "setosa", seed: 1 },
    });
    expect(searched.kind).toBe("ok");
    const searchedThreshold =
      JSON.parse((searched as { body: string }).body).model.threshold as number;

    const scene = parseScene((await client.getScene(info.sessionId, "spc3d")).text);
    const state = new ViewState(scene, 1);
    const plane = scene.overlays.find((o) => o.kind === "threshold-plane")!;
    const editor = new ThresholdEditor(plane.quads[0][0][2]);

    // drag far below every case: the whole dataset lands in class 1
    editor.drag(-10 - editor.value);
    editor.release();
    let result = await state.submit(() =>
      client.putModel(info.sessionId, state.revision, editor.payload()));
    expect(result).toBe("applied");
    expect(state.statsTokens?.covered).toBe("150");

    // drag back to the searched threshold: accuracy returns to 1.0
    editor.drag(searchedThreshold - editor.value);
    result = await state.submit(() =>
      client.putModel(info.sessionId, state.revision,
                      { threshold: searchedThreshold }));
    expect(result).toBe("applied");
    expect(state.statsTokens?.accuracy).toBe("1.0");
    expect(state.statsTokens?.covered).toBe("50");

    // a stale edit raises the conflict banner and changes nothing
    const stale = await state.submit(() =>
      client.putModel(info.sessionId, 0, { threshold: 0.0 }));
    expect(stale).toBe("conflict");
    expect(state.banner?.kind).toBe("conflict");

    await client.deleteSession(info.sessionId);
  });
});
