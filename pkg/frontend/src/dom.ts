/**
 * Browser bootstrap: binds the session and view models to a minimal DOM.
 * All engine state lives server-side; this file only paints view models
 * and forwards clicks.
 */

import { HttpTransport, ServiceClient, ServiceError } from "./client.js";
import { CompositionSession } from "./session.js";
import { buildChoicePanel, buildPitchGrid, buildSetLattice, elementLabel } from "./view.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

function text(parent: HTMLElement, tag: string, content: string, className = ""): HTMLElement {
  const node = document.createElement(tag);
  node.textContent = content;
  if (className) {
    node.className = className;
  }
  parent.appendChild(node);
  return node;
}

export function start(): void {
  const client = new ServiceClient(
    new HttpTransport((el<HTMLInputElement>("service-url").value || "http://127.0.0.1:8000")),
  );
  let session = new CompositionSession(client);
  let selection: number | null = null;

  const status = el<HTMLElement>("status");
  const panelBox = el<HTMLElement>("panel");
  const historyBox = el<HTMLElement>("history");
  const gridBox = el<HTMLElement>("grid");

  function showError(error: unknown): void {
    if (error instanceof ServiceError && error.witnesses.length > 0) {
      status.textContent = `${error.message}; witnesses: ${error.witnesses.join(", ")}`;
    } else {
      status.textContent = String(error instanceof Error ? error.message : error);
    }
  }

  function paint(): void {
    const meta = session.context;
    panelBox.replaceChildren();
    historyBox.replaceChildren();
    gridBox.replaceChildren();
    if (meta === null) {
      status.textContent = "Bind a context to start composing.";
      return;
    }
    status.textContent = `${meta.world}, K = {${meta.interval_labels.join(", ")}}, polarity ${meta.polarity}`;

    const panel = buildChoicePanel(meta, session.offered, selection);
    text(panelBox, "p", panel.message, panel.deadEnd ? "warning" : "");
    for (const option of panel.options) {
      const button = text(panelBox, "button", option.label, "option");
      if (option.interval === selection) {
        button.classList.add("selected");
      }
      button.addEventListener("click", () => {
        selection = option.interval;
        paint();
      });
    }
    if (panel.options.length > 0) {
      const commit = text(panelBox, "button", "commit", "commit") as HTMLButtonElement;
      commit.disabled = !panel.canCommit;
      commit.addEventListener("click", () => {
        if (selection !== null) {
          session.commit(selection);
          selection = null;
          paint();
        }
      });
    }

    for (const [position, step] of session.steps.entries()) {
      text(
        historyBox,
        "li",
        `${position + 1}. cantus ${elementLabel(meta, step.cantus)}, interval ${elementLabel(meta, step.interval)}`,
      );
    }

    if (meta.kind === "powerset") {
      const lattice = buildSetLattice(meta);
      for (const layer of [...lattice.layers].reverse()) {
        const row = text(gridBox, "div", "", "lattice-row");
        for (const node of layer) {
          text(row, "span", node.label, node.consonant ? "node consonant" : "node");
        }
      }
    } else {
      for (const row of buildPitchGrid(meta, session.steps)) {
        const line = text(gridBox, "div", "", "grid-row");
        for (const cell of row.cells) {
          const mark = cell.isCantus ? "C" : cell.isDiscantus ? "D" : "·";
          text(line, "span", mark, "cell");
        }
      }
    }
  }

  el<HTMLButtonElement>("bind").addEventListener("click", async () => {
    try {
      session = new CompositionSession(client);
      selection = null;
      await session.bindContext(
        el<HTMLInputElement>("world").value,
        el<HTMLInputElement>("kappa").value,
      );
      paint();
    } catch (error) {
      showError(error);
    }
  });

  el<HTMLButtonElement>("enter").addEventListener("click", async () => {
    try {
      selection = null;
      await session.enterCantus(Number(el<HTMLInputElement>("cantus").value));
      paint();
    } catch (error) {
      showError(error);
    }
  });

  el<HTMLButtonElement>("undo").addEventListener("click", async () => {
    try {
      selection = null;
      await session.undo();
      paint();
    } catch (error) {
      showError(error);
    }
  });

  el<HTMLButtonElement>("export").addEventListener("click", () => {
    el<HTMLTextAreaElement>("doc").value = JSON.stringify(session.exportSession(), null, 2);
  });

  el<HTMLButtonElement>("import").addEventListener("click", async () => {
    try {
      const parsed = JSON.parse(el<HTMLTextAreaElement>("doc").value);
      const { session: imported, flags } = await CompositionSession.importSession(client, parsed);
      session = imported;
      selection = null;
      paint();
      if (flags.length > 0) {
        status.textContent = `imported with ${flags.length} step(s) no longer admitted: ` +
          flags.map((f) => `#${f.position + 1}`).join(", ");
      }
    } catch (error) {
      showError(error);
    }
  });

  paint();
}

start();
