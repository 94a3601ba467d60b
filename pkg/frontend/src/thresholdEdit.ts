// Vertical drag state for the discrimination plane.

import { SNAP } from "./rectangleEdit.js";

export class ThresholdEditor {
  private original: number;
  private pending: number;

  constructor(threshold: number) {
    this.original = threshold;
    this.pending = threshold;
  }

  get value(): number {
    return this.pending;
  }

  drag(dz: number): void {
    this.pending += dz;
  }

  release(): number {
    this.pending = Math.round(this.pending / SNAP) * SNAP;
    return this.pending;
  }

  revert(): void {
    this.pending = this.original;
  }

  commit(): void {
    this.original = this.pending;
  }

  /** Threshold-only model update payload (coefficients stay server-side). */
  payload(): Record<string, unknown> {
    return { threshold: this.pending };
  }
}
