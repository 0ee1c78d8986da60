/**
 * Thin HTTP client for the contrapunctus service. The transport is
 * injectable so tests can stub responses (e.g. to drive the dead-end
 * path) while the real client uses fetch.
 */

import type { ContextMeta, NextIntervals, SuccessorsReport, WorldInfo } from "./types.js";

export interface TransportResponse {
  status: number;
  body: unknown;
}

export interface Transport {
  get(path: string, params: Record<string, string>): Promise<TransportResponse>;
  post(path: string, payload: unknown): Promise<TransportResponse>;
}

export class ServiceError extends Error {
  constructor(
    message: string,
    readonly status: number,
    readonly witnesses: string[] = [],
  ) {
    super(message);
  }
}

export class HttpTransport implements Transport {
  constructor(readonly baseUrl: string) {}

  async get(path: string, params: Record<string, string>): Promise<TransportResponse> {
    const url = new URL(path, this.baseUrl);
    for (const [key, value] of Object.entries(params)) {
      url.searchParams.set(key, value);
    }
    const response = await fetch(url);
    return { status: response.status, body: await response.json() };
  }

  async post(path: string, payload: unknown): Promise<TransportResponse> {
    const response = await fetch(new URL(path, this.baseUrl), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
    return { status: response.status, body: await response.json() };
  }
}

function raiseForStatus(response: TransportResponse, what: string): unknown {
  if (response.status === 200) {
    return response.body;
  }
  const detail = (response.body as { detail?: unknown })?.detail;
  if (typeof detail === "object" && detail !== null) {
    const { error, witnesses } = detail as { error?: string; witnesses?: string[] };
    throw new ServiceError(error ?? what, response.status, witnesses ?? []);
  }
  throw new ServiceError(typeof detail === "string" ? detail : what, response.status);
}

export class ServiceClient {
  constructor(readonly transport: Transport) {}

  async worlds(): Promise<WorldInfo[]> {
    const body = raiseForStatus(await this.transport.get("/worlds", {}), "worlds failed");
    return (body as { worlds: WorldInfo[] }).worlds;
  }

  async createContext(world: string, kappa: string): Promise<ContextMeta> {
    const response = await this.transport.get("/contexts", { world, kappa });
    return raiseForStatus(response, "context creation failed") as ContextMeta;
  }

  async successors(contextId: string, interval: number): Promise<SuccessorsReport> {
    const response = await this.transport.get(`/contexts/${contextId}/successors`, {
      interval: String(interval),
    });
    return raiseForStatus(response, "successors failed") as SuccessorsReport;
  }

  async next(contextId: string, interval: number, cantus: number): Promise<number[]> {
    const response = await this.transport.get(`/contexts/${contextId}/next`, {
      interval: String(interval),
      cantus: String(cantus),
    });
    const body = raiseForStatus(response, "next-interval query failed") as NextIntervals;
    return body.admitted_intervals;
  }
}
