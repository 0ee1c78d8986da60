/**
 * Pure view models for the composer. The DOM layer (dom.ts) only paints
 * these structures; everything here is plain data and unit-testable.
 *
 * Two complementary displays: a pitch grid for affine worlds (one column
 * per residue) and a Hasse-style subset lattice for power-set worlds,
 * where a "pitch" is itself a set.
 */

import type { ContextMeta, Step } from "./types.js";

export interface ChoiceOption {
  interval: number;
  label: string;
}

export interface ChoicePanel {
  options: ChoiceOption[];
  deadEnd: boolean;
  canCommit: boolean;
  message: string;
}

const MEMBERS = "abcdefghijklmnop";

/** Label an element the way the service does: residues or member lists. */
export function elementLabel(meta: ContextMeta, index: number): string {
  if (meta.kind !== "powerset") {
    return String(index);
  }
  if (index === 0) {
    return "0";
  }
  if (index === meta.size - 1) {
    return "S";
  }
  const members: string[] = [];
  for (let bit = 0; 1 << bit < meta.size; bit += 1) {
    if (index & (1 << bit)) {
      members.push(MEMBERS[bit]!);
    }
  }
  return members.join("-");
}

/**
 * The selectable options for the pending cantus. `offered` must be the
 * service response verbatim; this function only decorates it.
 */
export function buildChoicePanel(
  meta: ContextMeta,
  offered: number[] | null,
  selection: number | null,
): ChoicePanel {
  if (offered === null) {
    return {
      options: [],
      deadEnd: false,
      canCommit: false,
      message: "Enter the next cantus firmus note.",
    };
  }
  if (offered.length === 0) {
    return {
      options: [],
      deadEnd: true,
      canCommit: false,
      message: "Dead end: no interval is admitted here. Change the cantus note.",
    };
  }
  return {
    options: offered.map((interval) => ({ interval, label: elementLabel(meta, interval) })),
    deadEnd: false,
    canCommit: selection !== null && offered.includes(selection),
    message: selection === null ? "Pick one of the admitted intervals." : "Commit the selected interval.",
  };
}

export interface GridCell {
  pitch: number;
  isCantus: boolean;
  isDiscantus: boolean;
}

export interface GridRow {
  step: Step;
  discantus: number;
  cells: GridCell[];
}

/** Pitch-grid rows for affine worlds: one column per residue. */
export function buildPitchGrid(meta: ContextMeta, steps: Step[]): GridRow[] {
  return steps.map((step) => {
    const discantus = (step.cantus + step.interval) % meta.size;
    const cells = Array.from({ length: meta.size }, (_, pitch) => ({
      pitch,
      isCantus: pitch === step.cantus,
      isDiscantus: pitch === discantus,
    }));
    return { step, discantus, cells };
  });
}

export interface LatticeNode {
  index: number;
  label: string;
  layer: number;
  consonant: boolean;
}

export interface SetLattice {
  layers: LatticeNode[][];
  edges: [number, number][];
}

function popcount(value: number): number {
  let count = 0;
  for (let rest = value; rest > 0; rest >>= 1) {
    count += rest & 1;
  }
  return count;
}

/** Hasse-style layers and covering edges of the subset lattice. */
export function buildSetLattice(meta: ContextMeta): SetLattice {
  const memberCount = Math.log2(meta.size);
  const layers: LatticeNode[][] = Array.from({ length: memberCount + 1 }, () => []);
  for (let index = 0; index < meta.size; index += 1) {
    const layer = popcount(index);
    layers[layer]!.push({
      index,
      label: elementLabel(meta, index),
      layer,
      consonant: meta.intervals.includes(index),
    });
  }
  const edges: [number, number][] = [];
  for (let small = 0; small < meta.size; small += 1) {
    for (let bit = 0; 1 << bit < meta.size; bit += 1) {
      if (!(small & (1 << bit))) {
        edges.push([small, small | (1 << bit)]);
      }
    }
  }
  return { layers, edges };
}
