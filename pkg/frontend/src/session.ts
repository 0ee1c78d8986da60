/**
 * First-species composition session.
 *
 * The session holds the committed (cantus, interval) history and the
 * option set currently offered for the pending cantus note. Options come
 * exclusively from the service: the full consonance set before the first
 * dyad, and the admitted-successor fiber afterwards. Committing an
 * interval that was not offered is a hard error, so the history can only
 * contain service-approved steps.
 */

import type { ServiceClient } from "./client.js";
import type { ContextMeta, SessionDocument, Step } from "./types.js";
import { parseSessionDocument } from "./types.js";

export interface ReplayFlag {
  position: number;
  step: Step;
  offered: number[];
}

export class SessionStateError extends Error {}

export class CompositionSession {
  readonly steps: Step[] = [];
  pendingCantus: number | null = null;
  offered: number[] | null = null;
  private meta: ContextMeta | null = null;

  constructor(readonly client: ServiceClient) {}

  get context(): ContextMeta | null {
    return this.meta;
  }

  async bindContext(world: string, kappa: string): Promise<ContextMeta> {
    if (this.steps.length > 0) {
      throw new SessionStateError("cannot rebind the context of a composition in progress");
    }
    this.meta = await this.client.createContext(world, kappa);
    this.pendingCantus = null;
    this.offered = null;
    return this.meta;
  }

  private requireContext(): ContextMeta {
    if (this.meta === null) {
      throw new SessionStateError("no context bound yet");
    }
    return this.meta;
  }

  /** The modular distance from the previous cantus to the entered one. */
  private relativeCantus(previous: number, entered: number): number {
    const size = this.requireContext().size;
    return ((entered - previous) % size + size) % size;
  }

  private async offeredFor(previous: Step | null, cantus: number): Promise<number[]> {
    const meta = this.requireContext();
    if (previous === null) {
      return [...meta.intervals];
    }
    return this.client.next(
      meta.id,
      previous.interval,
      this.relativeCantus(previous.cantus, cantus),
    );
  }

  /** Enter the next cantus note; returns the admitted intervals verbatim. */
  async enterCantus(cantus: number): Promise<number[]> {
    const meta = this.requireContext();
    if (cantus < 0 || cantus >= meta.size) {
      throw new SessionStateError(`cantus ${cantus} outside the carrier`);
    }
    const previous = this.steps.length > 0 ? this.steps[this.steps.length - 1]! : null;
    const offered = await this.offeredFor(previous, cantus);
    this.pendingCantus = cantus;
    this.offered = offered;
    return [...offered];
  }

  /** Commit an interval for the pending cantus; it must have been offered. */
  commit(interval: number): Step {
    if (this.pendingCantus === null || this.offered === null) {
      throw new SessionStateError("enter a cantus note before committing an interval");
    }
    if (!this.offered.includes(interval)) {
      throw new SessionStateError(`interval ${interval} was not offered at this step`);
    }
    const step: Step = { cantus: this.pendingCantus, interval };
    this.steps.push(step);
    this.pendingCantus = null;
    this.offered = null;
    return step;
  }

  /** Pop the last dyad and re-query the options it had been chosen from. */
  async undo(): Promise<Step> {
    const popped = this.steps.pop();
    if (popped === undefined) {
      throw new SessionStateError("nothing to undo");
    }
    const previous = this.steps.length > 0 ? this.steps[this.steps.length - 1]! : null;
    this.offered = await this.offeredFor(previous, popped.cantus);
    this.pendingCantus = popped.cantus;
    return popped;
  }

  exportSession(): SessionDocument {
    const steps = this.steps.map((step) => ({ ...step }));
    if (this.meta === null) {
      return { steps };
    }
    return {
      context: { world: this.meta.world, kappa: [...this.meta.kappa], id: this.meta.id },
      steps,
    };
  }

  /**
   * Rebuild a session from an exported document, re-validating every step
   * against the live service. Steps whose interval is no longer admitted
   * are reported as flags; the history itself is imported as recorded.
   */
  static async importSession(
    client: ServiceClient,
    document: unknown,
  ): Promise<{ session: CompositionSession; flags: ReplayFlag[] }> {
    const parsed = parseSessionDocument(document);
    const session = new CompositionSession(client);
    const flags: ReplayFlag[] = [];
    if (parsed.context === undefined) {
      return { session, flags };
    }
    await session.bindContext(parsed.context.world, parsed.context.kappa.join(","));
    for (const [position, step] of parsed.steps.entries()) {
      const previous = position > 0 ? parsed.steps[position - 1]! : null;
      const offered = await session.offeredFor(previous, step.cantus);
      if (!offered.includes(step.interval)) {
        flags.push({ position, step, offered });
      }
      session.steps.push({ ...step });
    }
    return { session, flags };
  }
}
