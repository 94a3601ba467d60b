// Drag state for a rule rectangle, in cube-local normalized coordinates.
// Released boxes snap to a 1e-3 grid and clamp inside the unit square.

export interface Box {
  x: [number, number];
  y: [number, number];
}

export const SNAP = 1e-3;

export function snap(value: number): number {
  return Math.min(1, Math.max(0, Math.round(value / SNAP) * SNAP));
}

export function snapDown(value: number): number {
  return Math.min(1, Math.max(0, Math.floor(value / SNAP) * SNAP));
}

export function snapUp(value: number): number {
  return Math.min(1, Math.max(0, Math.ceil(value / SNAP) * SNAP));
}

/** Smallest grid-aligned box enclosing the given bounds. */
export function snapOutward(box: Box): Box {
  return {
    x: [snapDown(box.x[0]), snapUp(box.x[1])],
    y: [snapDown(box.y[0]), snapUp(box.y[1])],
  };
}

export type Handle = "move" | "min-corner" | "max-corner";

export class RectangleEditor {
  private original: Box;
  private pending: Box;
  private handle: Handle | null = null;
  private last: [number, number] = [0, 0];

  constructor(public readonly pair: number, box: Box,
              public readonly predictedClass: string) {
    this.original = structuredClone(box);
    this.pending = structuredClone(box);
  }

  get box(): Box {
    return structuredClone(this.pending);
  }

  get dragging(): boolean {
    return this.handle !== null;
  }

  begin(handle: Handle, at: [number, number]): void {
    this.handle = handle;
    this.last = at;
  }

  drag(to: [number, number]): void {
    if (this.handle === null) return;
    const du = to[0] - this.last[0];
    const dv = to[1] - this.last[1];
    this.last = to;
    const b = this.pending;
    if (this.handle === "move") {
      b.x = [b.x[0] + du, b.x[1] + du];
      b.y = [b.y[0] + dv, b.y[1] + dv];
    } else if (this.handle === "min-corner") {
      b.x[0] = Math.min(b.x[0] + du, b.x[1]);
      b.y[0] = Math.min(b.y[0] + dv, b.y[1]);
    } else {
      b.x[1] = Math.max(b.x[1] + du, b.x[0]);
      b.y[1] = Math.max(b.y[1] + dv, b.y[0]);
    }
  }

  /** Finish the drag: clamp, snap, and return the box to submit. */
  release(): Box {
    this.handle = null;
    this.pending = {
      x: [snap(this.pending.x[0]), snap(this.pending.x[1])],
      y: [snap(this.pending.y[0]), snap(this.pending.y[1])],
    };
    return this.box;
  }

  /** Drop the pending edit (validation failure: handles revert). */
  revert(): void {
    this.pending = structuredClone(this.original);
    this.handle = null;
  }

  /** The edit was accepted: the pending box becomes the baseline. */
  commit(): void {
    this.original = structuredClone(this.pending);
  }

  /** Rule document for the service, as specified in FORMAT.md. */
  rulePayload(): Record<string, unknown> {
    return {
      format_version: 1,
      kind: "rectangle-rule",
      predicted_class: this.predictedClass,
      rectangles: [
        { pair: this.pair, x: [...this.pending.x], y: [...this.pending.y] },
      ],
    };
  }
}
