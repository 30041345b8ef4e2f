// Thin typed client for the design-analysis service. One in-flight request
// per channel: starting a new call on the same channel aborts the previous
// one, so a dragged slider only ever settles on its latest value.

import type {
  ApiErrorBody,
  DesignEstRequest,
  DesignEstResult,
  Envelope,
  ProspectiveRequest,
  ProspectiveResult,
  RetrospectiveRequest,
  RiskTriple,
  SensitivityRequest,
  SensitivityRow,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public body: ApiErrorBody["error"],
  ) {
    super(body.message ?? body.code);
  }
}

export class ApiClient {
  private inflight = new Map<string, AbortController>();

  constructor(public baseUrl: string) {}

  /** POST `body` to `path`; `channel` names the cancellation slot. */
  async post<R>(path: string, body: unknown, channel?: string): Promise<Envelope<R>> {
    let signal: AbortSignal | undefined;
    if (channel !== undefined) {
      this.inflight.get(channel)?.abort();
      const controller = new AbortController();
      this.inflight.set(channel, controller);
      signal = controller.signal;
    }
    const response = await fetch(this.baseUrl.replace(/\/$/, "") + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
      signal,
    });
    const doc = await response.json();
    if (!response.ok) {
      throw new ApiError(response.status, (doc as ApiErrorBody).error);
    }
    return doc as Envelope<R>;
  }

  retrospective(req: RetrospectiveRequest, channel = "retrospective") {
    return this.post<RiskTriple>("/retrospective", req, channel);
  }

  prospective(req: ProspectiveRequest, channel = "prospective") {
    return this.post<ProspectiveResult>("/prospective", req, channel);
  }

  designEst(req: DesignEstRequest, channel = "retrospective") {
    return this.post<DesignEstResult>("/design-est", req, channel);
  }

  sensitivity(req: SensitivityRequest, channel = "sensitivity") {
    return this.post<{ rows: SensitivityRow[] }>("/sensitivity", req, channel);
  }

  async healthy(): Promise<boolean> {
    try {
      const response = await fetch(this.baseUrl.replace(/\/$/, "") + "/healthz");
      return response.ok;
    } catch {
      return false;
    }
  }
}

export function isAbort(err: unknown): boolean {
  return err instanceof DOMException && err.name === "AbortError";
}
