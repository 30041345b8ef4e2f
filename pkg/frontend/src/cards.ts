// Scenario cards: every run is recorded with the exact request the server
// echoed back and the seed it actually used, so re-running a card asks the
// service the identical question and must reproduce the displayed numbers.

import { ApiClient } from "./api.js";
import type { Envelope, Mode } from "./types.js";

export type Endpoint = "/retrospective" | "/prospective" | "/design-est" | "/sensitivity";

export interface Scenario {
  id: number;
  label: string;
  endpoint: Endpoint;
  request: Record<string, unknown>;
  seed: number | null;
  mode: Mode;
  summary: string;
  result: unknown;
  pinned: boolean;
}

export type Summarize = (result: unknown) => string;

export class ScenarioStore {
  cards: Scenario[] = [];
  private nextId = 1;

  constructor(
    private client: ApiClient,
    private onChange: () => void = () => {},
  ) {}

  record(
    label: string,
    endpoint: Endpoint,
    envelope: Envelope<unknown>,
    summarize: Summarize,
  ): Scenario {
    const request = { ...envelope.request };
    if (envelope.seed !== null) {
      request["seed"] = envelope.seed; // pin the drawn seed for replay
    }
    const scenario: Scenario = {
      id: this.nextId++,
      label,
      endpoint,
      request,
      seed: envelope.seed,
      mode: (request["mode"] as Mode) ?? "simulate",
      summary: summarize(envelope.result),
      result: envelope.result,
      pinned: false,
    };
    this.cards.unshift(scenario);
    this.onChange();
    return scenario;
  }

  togglePin(id: number): void {
    const card = this.find(id);
    card.pinned = !card.pinned;
    this.onChange();
  }

  /** Re-issue the stored request (stored seed included). Returns whether the
   * service reproduced the previous result exactly. */
  async rerun(id: number, summarize: Summarize): Promise<boolean> {
    const card = this.find(id);
    const envelope = await this.client.post(card.endpoint, card.request, `card-${id}`);
    const reproduced = JSON.stringify(envelope.result) === JSON.stringify(card.result);
    card.result = envelope.result;
    card.seed = envelope.seed;
    card.summary = summarize(envelope.result);
    this.onChange();
    return reproduced;
  }

  /** Copy-as-JSON payload: everything needed to rerun plus what came back. */
  toJson(id: number): string {
    const card = this.find(id);
    return JSON.stringify(
      { endpoint: card.endpoint, request: card.request, seed: card.seed, result: card.result },
      null,
      2,
    );
  }

  private find(id: number): Scenario {
    const card = this.cards.find((c) => c.id === id);
    if (!card) throw new Error(`no scenario card ${id}`);
    return card;
  }
}
