// Viewer-side state: camera, toggles, revision tracking, and the
// single-in-flight edit gate. Statistics are never computed here; the panel
// state is the raw response text from the service plus its extracted tokens.

import type { CameraState } from "./camera.js";
import { orbit, ORBIT_STEP, presetToState } from "./camera.js";
import type { PutOutcome } from "./client.js";
import { extractStatsTokens, type StatsTokens } from "./tokens.js";
import type { SceneDoc } from "./types.js";

export type Banner =
  | { kind: "error" | "conflict" | "info"; message: string }
  | null;

export type SubmitResult = "applied" | "ignored" | "conflict" | "invalid";

export class ViewState {
  revision = 0;
  camera: CameraState;
  toggles: Record<string, boolean> = {};
  classVisible: Record<string, boolean> = {};
  banner: Banner = null;
  statsBody: string | null = null;
  statsTokens: StatsTokens | null = null;
  private inFlight = false;

  constructor(public scene: SceneDoc, revision = 0) {
    this.revision = revision;
    this.toggles = { ...scene.toggles };
    for (const label of Object.keys(scene.palette)) {
      this.classVisible[label] = true;
    }
    const center = scene.cameras.find((c) => c.name === "center") ?? scene.cameras[0];
    this.camera = presetToState(center);
  }

  editingEnabled(): boolean {
    return !this.inFlight;
  }

  snapToPreset(name: string): void {
    const preset = this.scene.cameras.find((c) => c.name === name);
    if (!preset) {
      this.banner = { kind: "error", message: `unknown camera preset ${name}` };
      return;
    }
    this.camera = presetToState(preset);
  }

  arrowKey(key: "left" | "right" | "up" | "down"): void {
    const dAz = key === "left" ? ORBIT_STEP : key === "right" ? -ORBIT_STEP : 0;
    const dEl = key === "up" ? ORBIT_STEP : key === "down" ? -ORBIT_STEP : 0;
    this.camera = orbit(this.camera, dAz, dEl);
  }

  setToggle(name: string, on: boolean): void {
    this.toggles[name] = on;
  }

  setClassVisible(label: string, on: boolean): void {
    this.classVisible[label] = on;
  }

  acceptStats(body: string): void {
    this.statsBody = body;
    this.statsTokens = extractStatsTokens(body);
  }

  /**
   * Run one mutation round-trip, allowing a single edit in flight: a second
   * call while one is pending is ignored. Conflict responses raise a reload
   * banner; validation responses report "invalid" so the caller can revert
   * its drag handles.
   */
  async submit(op: () => Promise<PutOutcome>): Promise<SubmitResult> {
    if (this.inFlight) return "ignored";
    this.inFlight = true;
    try {
      const outcome = await op();
      if (outcome.kind === "ok") {
        this.revision = outcome.revision;
        this.acceptStats(outcome.body);
        this.banner = null;
        return "applied";
      }
      if (outcome.kind === "conflict") {
        this.banner = {
          kind: "conflict",
          message: `edit based on stale revision; server is at ` +
            `${outcome.currentRevision}. Reload the scene to continue.`,
        };
        return "conflict";
      }
      this.banner = { kind: "error", message: `edit rejected: ${outcome.message}` };
      return "invalid";
    } finally {
      this.inFlight = false;
    }
  }
}
