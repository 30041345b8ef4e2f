// Bootstrap: resolve the API base URL (query param ?api=, then localStorage,
// then the dev default), mount the panels, and wire the sensitivity chart to
// the retrospective form.

import { ApiClient } from "./api.js";
import { ScenarioStore } from "./cards.js";
import {
  mountProspectivePanel,
  mountRetrospectivePanel,
  mountSensitivityPanel,
  renderCards,
} from "./panels.js";

export function resolveBaseUrl(win: Window): string {
  const fromQuery = new URLSearchParams(win.location.search).get("api");
  if (fromQuery) {
    win.localStorage.setItem("prda-api", fromQuery);
    return fromQuery;
  }
  return win.localStorage.getItem("prda-api") ?? "http://127.0.0.1:8000";
}

export function boot(win: Window): void {
  const doc = win.document;
  const client = new ApiClient(resolveBaseUrl(win));

  const cardsBox = doc.getElementById("cards")!;
  const store = new ScenarioStore(client, () => renderCards(cardsBox, store));

  const retro = mountRetrospectivePanel(doc.getElementById("retrospective")!, client, store);
  mountProspectivePanel(doc.getElementById("prospective")!, client, store);
  mountSensitivityPanel(doc.getElementById("sensitivity")!, client, store, (n) => {
    retro.setSampleSizes(n);
    retro.element.scrollIntoView({ behavior: "smooth" });
  });
  renderCards(cardsBox, store);

  const health = doc.getElementById("health");
  if (health) {
    void client.healthy().then((ok) => {
      health.textContent = ok ? `service: ${client.baseUrl}` : `service unreachable: ${client.baseUrl}`;
      health.classList.toggle("error", !ok);
    });
  }
}

declare global {
  interface Window {
    __PRDA_NO_AUTOBOOT__?: boolean;
  }
}

if (typeof window !== "undefined" && !window.__PRDA_NO_AUTOBOOT__) {
  window.addEventListener("DOMContentLoaded", () => boot(window));
}
