// Browser entry point: wires the session service, renderer, and controls.

import { ServiceClient } from "./client.js";
import { renderScene, screenToZPlane, worldToCubeLocal } from "./renderer.js";
import { RectangleEditor, snapOutward, type Box } from "./rectangleEdit.js";
import { ThresholdEditor } from "./thresholdEdit.js";
import { parseScene, SceneParseError, type SceneDoc } from "./types.js";
import { ViewState } from "./viewState.js";

const $ = <T extends HTMLElement>(id: string): T =>
  document.getElementById(id) as T;

interface AppState {
  client: ServiceClient;
  sessionId: string;
  view: string;
  scene: SceneDoc;
  state: ViewState;
  rectEditor: RectangleEditor | null;
  thresholdEditor: ThresholdEditor | null;
}

let app: AppState | null = null;

function viewport() {
  const host = $("viewport");
  return { width: host.clientWidth || 960, height: host.clientHeight || 600,
           scale: 220 };
}

function showBanner(): void {
  const banner = $("banner");
  if (!app || !app.state.banner) {
    banner.textContent = "";
    banner.className = "banner hidden";
    return;
  }
  banner.textContent = app.state.banner.message;
  banner.className = `banner ${app.state.banner.kind}`;
}

function renderStats(): void {
  const tokens = app?.state.statsTokens ?? null;
  $("stat-covered").textContent = tokens?.covered ?? "-";
  $("stat-purity").textContent = tokens?.purity ?? "-";
  $("stat-accuracy").textContent = tokens?.accuracy ?? "-";
  const counts = $("stat-classes");
  counts.innerHTML = "";
  for (const [label, count] of Object.entries(tokens?.classCounts ?? {})) {
    const row = document.createElement("div");
    row.textContent = `${label}: ${count}`;
    counts.appendChild(row);
  }
}

function redraw(): void {
  if (!app) return;
  $("viewport").innerHTML = renderScene(app.scene, app.state.camera, {
    viewport: viewport(),
    toggles: app.state.toggles,
    classVisible: app.state.classVisible,
  });
  showBanner();
  renderStats();
}

async function reloadScene(): Promise<void> {
  if (!app) return;
  try {
    const { text, revision } = await app.client.getScene(app.sessionId, app.view);
    app.scene = parseScene(text);
    const previous = app.state;
    app.state = new ViewState(app.scene, revision);
    app.state.camera = previous.camera;
    app.state.toggles = previous.toggles;
    app.state.classVisible = previous.classVisible;
    app.state.statsBody = previous.statsBody;
    app.state.statsTokens = previous.statsTokens;
    const stats = await app.client.getStatsText(app.sessionId);
    app.state.acceptStats(stats);
  } catch (err) {
    if (app) {
      app.state.banner = {
        kind: "error",
        message: err instanceof SceneParseError
          ? err.message
          : `scene load failed: ${(err as Error).message}`,
      };
    }
  }
  redraw();
}

function buildToggleControls(): void {
  if (!app) return;
  const host = $("toggles");
  host.innerHTML = "";
  const entries = [
    ...Object.keys(app.state.toggles).map((name) => ({ name, cls: false })),
    ...Object.keys(app.state.classVisible).map((name) => ({ name, cls: true })),
  ];
  for (const entry of entries) {
    const label = document.createElement("label");
    const input = document.createElement("input");
    input.type = "checkbox";
    input.checked = entry.cls
      ? app.state.classVisible[entry.name]
      : app.state.toggles[entry.name];
    input.addEventListener("change", () => {
      if (!app) return;
      if (entry.cls) app.state.setClassVisible(entry.name, input.checked);
      else app.state.setToggle(entry.name, input.checked);
      redraw();
    });
    label.appendChild(input);
    label.appendChild(document.createTextNode(entry.name));
    host.appendChild(label);
  }
}

async function submitRule(): Promise<void> {
  if (!app || !app.rectEditor) return;
  const editor = app.rectEditor;
  const result = await app.state.submit(() =>
    app!.client.putRule(app!.sessionId, app!.state.revision, editor.rulePayload()));
  if (result === "applied") {
    editor.commit();
    await reloadScene();
  } else if (result === "invalid") {
    editor.revert();
    redraw();
  } else {
    redraw();
  }
}

async function submitThreshold(): Promise<void> {
  if (!app || !app.thresholdEditor) return;
  const editor = app.thresholdEditor;
  const result = await app.state.submit(() =>
    app!.client.putModel(app!.sessionId, app!.state.revision, editor.payload()));
  if (result === "applied") {
    editor.commit();
    await reloadScene();
  } else if (result === "invalid") {
    editor.revert();
    redraw();
  } else {
    redraw();
  }
}

function attachPointerEditing(): void {
  const host = $("viewport");
  let dragging: "rect" | "threshold" | null = null;
  let lastY = 0;

  host.addEventListener("pointerdown", (event) => {
    if (!app || !app.state.editingEnabled()) return;
    const target = event.target as Element;
    if (target.getAttribute("data-interactive") !== "true") return;
    const overlay = app.scene.overlays[Number(target.getAttribute("data-overlay"))];
    if (!overlay) return;
    if (overlay.kind === "rule-rectangle" &&
        app.state.camera.projection === "orthographic") {
      const world = screenToZPlane(app.state.camera, viewport(),
                                   event.offsetX, event.offsetY);
      if (!world) return;
      const local = worldToCubeLocal(app.scene, world);
      // the overlay quad is in world units; map its corners into the frame
      // of the cube the pointer landed in
      const quad = overlay.quads[0];
      const xs = quad.map((p) => p[0]);
      const ys = quad.map((p) => p[1]);
      const minCorner = worldToCubeLocal(
        app.scene, [Math.min(...xs), Math.min(...ys), 0]);
      const maxCorner = worldToCubeLocal(
        app.scene, [Math.max(...xs), Math.max(...ys), 0]);
      const box: Box = {
        x: [minCorner.u, maxCorner.u],
        y: [minCorner.v, maxCorner.v],
      };
      app.rectEditor = new RectangleEditor(minCorner.pair, box,
                                           firstClass(app.scene));
      app.rectEditor.begin("move", [local.u, local.v]);
      dragging = "rect";
    } else if (overlay.kind === "threshold-plane") {
      const z = overlay.quads[0][0][2];
      app.thresholdEditor = new ThresholdEditor(z);
      lastY = event.clientY;
      dragging = "threshold";
    }
  });

  host.addEventListener("pointermove", (event) => {
    if (!app || !dragging) return;
    if (dragging === "rect" && app.rectEditor) {
      const world = screenToZPlane(app.state.camera, viewport(),
                                   event.offsetX, event.offsetY);
      if (world) {
        const local = worldToCubeLocal(app.scene, world);
        app.rectEditor.drag([local.u, local.v]);
      }
    } else if (dragging === "threshold" && app.thresholdEditor) {
      const dz = (lastY - event.clientY) / viewport().scale;
      lastY = event.clientY;
      app.thresholdEditor.drag(dz);
    }
  });

  host.addEventListener("pointerup", () => {
    if (!app || !dragging) return;
    if (dragging === "rect" && app.rectEditor) {
      app.rectEditor.release();
      void submitRule();
    } else if (dragging === "threshold" && app.thresholdEditor) {
      app.thresholdEditor.release();
      void submitThreshold();
    }
    dragging = null;
  });
}

function firstClass(scene: SceneDoc): string {
  return Object.keys(scene.palette)[0] ?? "";
}

function attachControls(): void {
  for (const name of ["front", "top", "ortho-left", "low-front",
                      "middle-front", "center"]) {
    $(`preset-${name}`)?.addEventListener("click", () => {
      app?.state.snapToPreset(name);
      redraw();
    });
  }
  document.addEventListener("keydown", (event) => {
    const keys: Record<string, "left" | "right" | "up" | "down"> = {
      ArrowLeft: "left", ArrowRight: "right", ArrowUp: "up", ArrowDown: "down",
    };
    const key = keys[event.key];
    if (key && app) {
      app.state.arrowKey(key);
      redraw();
      event.preventDefault();
    }
  });
  $("connect").addEventListener("click", () => void connect());
}

async function connect(): Promise<void> {
  const base = ($("service-url") as HTMLInputElement).value.replace(/\/$/, "");
  const view = ($("view-kind") as HTMLSelectElement).value;
  const file = ($("csv-file") as HTMLInputElement).files?.[0];
  if (!file) return;
  const client = new ServiceClient(base);
  const csv = new Uint8Array(await file.arrayBuffer());
  const info = await client.createSession(csv);
  const { text, revision } = await client.getScene(info.sessionId, view);
  const scene = parseScene(text);
  app = {
    client,
    sessionId: info.sessionId,
    view,
    scene,
    state: new ViewState(scene, revision),
    rectEditor: null,
    thresholdEditor: null,
  };
  buildToggleControls();
  redraw();
}

attachControls();
attachPointerEditing();
export { snapOutward }; // handy in the devtools console for box derivation
