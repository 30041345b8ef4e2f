import { beforeEach, describe, expect, it, vi } from "vitest";

import { ApiClient } from "../src/api.js";
import { ScenarioStore } from "../src/cards.js";
import { fmtTriple } from "../src/format.js";
import { envelope, installFetch } from "./helpers.js";

const TRIPLE = { power: 0.339, typeS: 0.001, typeM: 1.743 };
const summarize = (result: unknown) => fmtTriple(result as typeof TRIPLE);

describe("ScenarioStore", () => {
  beforeEach(() => vi.restoreAllMocks());

  it("records the echoed request with the seed the service used", () => {
    const store = new ScenarioStore(new ApiClient("http://s"));
    const card = store.record(
      "retro", "/retrospective",
      envelope({ d: 0.5, n: 20, alpha: 0.05, B: 10000, mode: "simulate" }, 91, TRIPLE),
      summarize,
    );
    expect(card.request["seed"]).toBe(91);
    expect(card.seed).toBe(91);
    expect(card.summary).toContain("power 0.339");
  });

  it("re-runs with the stored seed and confirms reproduction", async () => {
    const calls = installFetch((path, body) =>
      envelope(body, body["seed"] as number, TRIPLE),
    );
    const store = new ScenarioStore(new ApiClient("http://s"));
    const card = store.record(
      "retro", "/retrospective",
      envelope({ d: 0.5, n: 20, mode: "simulate" }, 91, TRIPLE),
      summarize,
    );
    const reproduced = await store.rerun(card.id, summarize);
    expect(reproduced).toBe(true);
    expect(calls[0].path).toBe("/retrospective");
    expect(calls[0].body["seed"]).toBe(91);
  });

  it("flags a re-run that fails to reproduce", async () => {
    installFetch((path, body) => envelope(body, 91, { ...TRIPLE, power: 0.5 }));
    const store = new ScenarioStore(new ApiClient("http://s"));
    const card = store.record(
      "retro", "/retrospective",
      envelope({ d: 0.5, n: 20, mode: "simulate" }, 91, TRIPLE),
      summarize,
    );
    await expect(store.rerun(card.id, summarize)).resolves.toBe(false);
  });

  it("pins and unpins, notifying the renderer", () => {
    const changes: number[] = [];
    const store = new ScenarioStore(new ApiClient("http://s"), () => changes.push(1));
    const card = store.record(
      "x", "/retrospective", envelope({ d: 0.3, n: 10 }, 1, TRIPLE), summarize,
    );
    store.togglePin(card.id);
    expect(store.cards[0].pinned).toBe(true);
    store.togglePin(card.id);
    expect(store.cards[0].pinned).toBe(false);
    expect(changes.length).toBe(3);
  });

  it("exports a rerunnable JSON payload", () => {
    const store = new ScenarioStore(new ApiClient("http://s"));
    const card = store.record(
      "x", "/design-est",
      envelope({ n1: 31, limits: [0.2, 0.6], mode: "simulate" }, 5, TRIPLE),
      summarize,
    );
    const doc = JSON.parse(store.toJson(card.id));
    expect(doc.endpoint).toBe("/design-est");
    expect(doc.request.seed).toBe(5);
    expect(doc.result.power).toBeCloseTo(0.339);
  });
});
