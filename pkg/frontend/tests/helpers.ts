// Shared fetch mocking for the panel and client tests.

import { vi } from "vitest";

export interface RecordedCall {
  path: string;
  body: Record<string, unknown>;
}

export type Responder = (
  path: string,
  body: Record<string, unknown>,
) => { status?: number; payload: unknown } | unknown;

/** Install a fetch mock; the responder maps (path, body) to a payload or
 * {status, payload}. Requests honor AbortSignal. Returns the call log. */
export function installFetch(responder: Responder, delayMs = 0): RecordedCall[] {
  const calls: RecordedCall[] = [];
  globalThis.fetch = vi.fn((input: RequestInfo | URL, init?: RequestInit) => {
    const url = new URL(String(input));
    const body = init?.body ? JSON.parse(String(init.body)) : {};
    const call = { path: url.pathname, body };
    return new Promise<Response>((resolve, reject) => {
      const abort = () => reject(new DOMException("Aborted", "AbortError"));
      if (init?.signal?.aborted) return abort();
      init?.signal?.addEventListener("abort", abort);
      setTimeout(() => {
        calls.push(call);
        const raw = responder(url.pathname, body);
        const wrapped =
          raw !== null && typeof raw === "object" && "payload" in (raw as object)
            ? (raw as { status?: number; payload: unknown })
            : { payload: raw };
        const status = wrapped.status ?? 200;
        resolve({
          ok: status >= 200 && status < 300,
          status,
          json: async () => wrapped.payload,
        } as Response);
      }, delayMs);
    });
  }) as typeof fetch;
  return calls;
}

export function envelope(request: Record<string, unknown>, seed: number | null, result: unknown) {
  return { request, seed, status: "done", result, timingMs: 1.0 };
}

export async function flush(ms = 5): Promise<void> {
  await new Promise((resolve) => setTimeout(resolve, ms));
}
