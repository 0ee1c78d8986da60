/**
 * Wire types of the contrapunctus service and the session document schema.
 *
 * Elements are carrier indices: plain residues for affine worlds, member
 * bitmasks for power-set worlds. The session document is intentionally
 * tiny; `parseSessionDocument` validates untrusted input structurally and
 * rejects anything that does not match.
 */

export interface WorldInfo {
  kind: string;
  spec: string;
  morphisms: string;
  example: string;
}

export interface ContextMeta {
  id: string;
  world: string;
  kind: string;
  size: number;
  kappa: number[];
  strong: boolean;
  polarity: string;
  intervals: number[];
  interval_labels: string[];
}

export interface SuccessorsReport {
  id: string;
  world: string;
  K: number[];
  polarity: string;
  interval: number;
  symmetries: string[];
  max_meet_size: number;
  admitted: [number, number][];
}

export interface NextIntervals {
  id: string;
  interval: number;
  cantus: number;
  admitted_intervals: number[];
}

export interface Step {
  cantus: number;
  interval: number;
}

export interface SessionDocument {
  context?: {
    world: string;
    kappa: number[];
    id?: string;
  };
  steps: Step[];
}

export class SchemaError extends Error {}

function isIntArray(value: unknown): value is number[] {
  return Array.isArray(value) && value.every((x) => Number.isInteger(x) && x >= 0);
}

function parseStep(value: unknown, position: number): Step {
  if (typeof value !== "object" || value === null) {
    throw new SchemaError(`step ${position} is not an object`);
  }
  const record = value as Record<string, unknown>;
  const keys = Object.keys(record).sort();
  if (keys.join(",") !== "cantus,interval") {
    throw new SchemaError(`step ${position} must have exactly cantus and interval`);
  }
  const { cantus, interval } = record;
  if (!Number.isInteger(cantus) || (cantus as number) < 0) {
    throw new SchemaError(`step ${position} has a bad cantus`);
  }
  if (!Number.isInteger(interval) || (interval as number) < 0) {
    throw new SchemaError(`step ${position} has a bad interval`);
  }
  return { cantus: cantus as number, interval: interval as number };
}

/** Validate an untrusted session document; throws SchemaError with a message. */
export function parseSessionDocument(value: unknown): SessionDocument {
  if (typeof value !== "object" || value === null) {
    throw new SchemaError("session document is not an object");
  }
  const record = value as Record<string, unknown>;
  for (const key of Object.keys(record)) {
    if (key !== "steps" && key !== "context") {
      throw new SchemaError(`unknown session field ${JSON.stringify(key)}`);
    }
  }
  if (!Array.isArray(record.steps)) {
    throw new SchemaError("session document needs a steps array");
  }
  const steps = record.steps.map(parseStep);
  let context: SessionDocument["context"];
  if (record.context !== undefined) {
    const raw = record.context;
    if (typeof raw !== "object" || raw === null) {
      throw new SchemaError("context must be an object");
    }
    const ctx = raw as Record<string, unknown>;
    if (typeof ctx.world !== "string" || !isIntArray(ctx.kappa)) {
      throw new SchemaError("context needs a world spec and an integer kappa list");
    }
    if (ctx.id !== undefined && typeof ctx.id !== "string") {
      throw new SchemaError("context id must be a string");
    }
    context = { world: ctx.world, kappa: ctx.kappa, ...(ctx.id !== undefined ? { id: ctx.id } : {}) };
  }
  if (steps.length > 0 && context === undefined) {
    throw new SchemaError("a session with steps must carry its context");
  }
  return context === undefined ? { steps } : { context, steps };
}
