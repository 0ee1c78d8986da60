import { describe, expect, it } from "vitest";

import { HttpTransport, ServiceClient, ServiceError } from "../src/client.js";
import { CompositionSession, SessionStateError } from "../src/session.js";
import { SchemaError } from "../src/types.js";
import { BASE_URL } from "./globalSetup.js";

const CONSONANT = [0, 3, 4, 7, 8, 9];

function liveClient(): ServiceClient {
  return new ServiceClient(new HttpTransport(BASE_URL));
}

async function classicalSession(): Promise<CompositionSession> {
  const session = new CompositionSession(liveClient());
  await session.bindContext("affine:12", "0,3,4,7,8,9");
  return session;
}

describe("context binding", () => {
  it("loads the classical context with its polarity", async () => {
    const session = await classicalSession();
    expect(session.context?.polarity).toBe("e2.5");
    expect(session.context?.intervals).toEqual(CONSONANT);
  });

  it("surfaces witnesses when the dichotomy is not strong", async () => {
    const session = new CompositionSession(liveClient());
    await expect(session.bindContext("affine:12", "0,2,3,4,7,8")).rejects.toMatchObject({
      status: 422,
      witnesses: ["e1.11", "e9.7"],
    });
  });
});

describe("stepping", () => {
  it("offers all of K before the first dyad", async () => {
    const session = await classicalSession();
    const offered = await session.enterCantus(5);
    expect(offered).toEqual(CONSONANT);
  });

  it("never offers an interval absent from the service response", async () => {
    const session = await classicalSession();
    const transport = new HttpTransport(BASE_URL);
    const contextId = session.context!.id;
    const size = session.context!.size;

    await session.enterCantus(0);
    session.commit(7);

    const cantusWalk = [2, 3, 5, 4, 0];
    for (const cantus of cantusWalk) {
      const previous = session.steps[session.steps.length - 1]!;
      const offered = await session.enterCantus(cantus);
      const relative = ((cantus - previous.cantus) % size + size) % size;
      const raw = await transport.get(`/contexts/${contextId}/next`, {
        interval: String(previous.interval),
        cantus: String(relative),
      });
      expect(raw.status).toBe(200);
      const admitted = (raw.body as { admitted_intervals: number[] }).admitted_intervals;
      expect(offered).toEqual(admitted);
      expect(admitted.length).toBeGreaterThan(0);
      for (const interval of offered) {
        expect(CONSONANT).toContain(interval);
      }
      session.commit(offered[0]!);
    }
    expect(session.steps).toHaveLength(1 + cantusWalk.length);
  });

  it("rejects committing an interval that was not offered", async () => {
    const session = await classicalSession();
    await session.enterCantus(0);
    expect(() => session.commit(1)).toThrow(SessionStateError);
    expect(() => session.commit(5)).toThrow(/not offered/);
    session.commit(7);
    expect(() => session.commit(7)).toThrow(/enter a cantus/);
  });

  it("undo pops the last dyad and re-offers its options", async () => {
    const session = await classicalSession();
    await session.enterCantus(0);
    session.commit(7);
    const offeredBefore = await session.enterCantus(4);
    session.commit(offeredBefore[0]!);

    const popped = await session.undo();
    expect(popped).toEqual({ cantus: 4, interval: offeredBefore[0] });
    expect(session.pendingCantus).toBe(4);
    expect(session.offered).toEqual(offeredBefore);
    expect(session.steps).toEqual([{ cantus: 0, interval: 7 }]);
  });
});

describe("export and import", () => {
  it("exports a fresh session as exactly {steps: []}", () => {
    const session = new CompositionSession(liveClient());
    expect(session.exportSession()).toEqual({ steps: [] });
  });

  it("round-trips a one-step session", async () => {
    const session = await classicalSession();
    await session.enterCantus(0);
    session.commit(7);
    const doc = session.exportSession();
    expect(doc.steps).toEqual([{ cantus: 0, interval: 7 }]);

    const { session: imported, flags } = await CompositionSession.importSession(
      liveClient(),
      JSON.parse(JSON.stringify(doc)),
    );
    expect(flags).toEqual([]);
    expect(imported.exportSession()).toEqual(doc);
  });

  it("flags replayed steps whose interval is no longer admitted", async () => {
    const session = await classicalSession();
    await session.enterCantus(0);
    session.commit(7);
    const offered = await session.enterCantus(0);
    // from a fifth, the same-cantus parallel fifth is never admitted
    expect(offered).not.toContain(7);
    session.commit(offered[0]!);

    const doc = session.exportSession();
    doc.steps[1] = { cantus: 0, interval: 7 };
    const { flags } = await CompositionSession.importSession(liveClient(), doc);
    expect(flags).toHaveLength(1);
    expect(flags[0]).toMatchObject({ position: 1, step: { cantus: 0, interval: 7 } });
    expect(flags[0]!.offered).not.toContain(7);
  });

  it("rejects schema violations with a message", async () => {
    await expect(
      CompositionSession.importSession(liveClient(), { steps: [{ cantus: 0 }] }),
    ).rejects.toThrow(SchemaError);
    await expect(
      CompositionSession.importSession(liveClient(), { steps: [], extra: 1 }),
    ).rejects.toThrow(/unknown session field/);
    await expect(
      CompositionSession.importSession(liveClient(), {
        steps: [{ cantus: 0, interval: 7 }],
      }),
    ).rejects.toThrow(/must carry its context/);
  });
});

describe("service errors", () => {
  it("maps unknown contexts to a 404 ServiceError", async () => {
    const client = liveClient();
    await expect(client.next("bogus", 7, 0)).rejects.toBeInstanceOf(ServiceError);
    await expect(client.next("bogus", 7, 0)).rejects.toMatchObject({ status: 404 });
  });
});
