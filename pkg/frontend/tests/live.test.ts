// Opt-in integration pass against a real running service:
//   PRDA_URL=http://127.0.0.1:8000 npm test
// Skipped when PRDA_URL is unset so the suite stays self-contained.

import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";

const BASE = process.env.PRDA_URL;

describe.skipIf(!BASE)("live service", () => {
  const client = () => new ApiClient(BASE!);

  it("is healthy", async () => {
    await expect(client().healthy()).resolves.toBe(true);
  });

  it("walks the power slider fixture: .80 -> .60 moves n from ~252 to ~158", async () => {
    const at80 = await client().prospective(
      { d: 0.25, power: 0.8, seed: 13, mode: "simulate" }, "p80",
    );
    const at60 = await client().prospective(
      { d: 0.25, power: 0.6, seed: 13, mode: "simulate" }, "p60",
    );
    expect(Math.abs(at80.result.n - 252)).toBeLessThanOrEqual(3);
    expect(Math.abs(at60.result.n - 158)).toBeLessThanOrEqual(3);
  }, 120000); // two full simulated searches

  it("reproduces a seeded retrospective exactly (scenario card contract)", async () => {
    const first = await client().retrospective({ d: 0.5, n: 20, seed: 7 }, "a");
    const again = await client().retrospective({ d: 0.5, n: 20, seed: 7 }, "b");
    expect(again.result).toEqual(first.result);
    expect(again.seed).toBe(first.seed);
  });

  it("serves the sensitivity grid used by the chart", async () => {
    const doc = await client().sensitivity({ d: 0.35, nGrid: [10, 48, 130], mode: "exact" });
    const n48 = doc.result.rows.find((r) => r.n === 48)!;
    expect(n48.power).toBeCloseTo(0.3965, 3);
    expect(n48.typeM!).toBeCloseTo(1.586, 2);
  });
});
