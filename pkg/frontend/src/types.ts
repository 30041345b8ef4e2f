// Request bodies and response shapes of the design-analysis HTTP API.

export type Mode = "simulate" | "exact";

export interface RetrospectiveRequest {
  d: number;
  n: number;
  alpha?: number;
  B?: number;
  seed?: number;
  mode?: Mode;
}

export interface ProspectiveRequest {
  d: number;
  power: number;
  alpha?: number;
  rangen?: [number, number];
  tol?: number;
  B?: number;
  seed?: number;
  mode?: Mode;
}

export interface DesignEstRequest {
  n1: number;
  n2?: number;
  targetD?: number;
  limits?: [number, number];
  distribution?: "uniform" | "normal";
  k?: number;
  alpha?: number;
  B?: number;
  B0?: number;
  returnData?: boolean;
  seed?: number;
  mode?: Mode;
}

export interface SensitivityRequest {
  d: number;
  nGrid: number[];
  alpha?: number;
  B?: number;
  seed?: number;
  mode?: Mode;
}

export interface RiskTriple {
  power: number;
  typeS: number;
  typeM: number | null;
}

export interface ProspectiveResult extends RiskTriple {
  n: number;
  targetPower?: number;
}

export interface SensitivityRow extends RiskTriple {
  n: number;
}

export interface DesignEstResult extends RiskTriple {
  nUndefinedTypeM?: number;
  data?: { columns: string[]; rows: number[][] };
}

export interface Envelope<R> {
  request: Record<string, unknown>;
  seed: number | null;
  status: "done" | "error";
  result: R;
  timingMs: number;
}

export interface ApiErrorBody {
  status: "error";
  error: {
    code: "validation" | "invalid-parameter" | "unreachable-power";
    message?: string;
    fields?: { loc: string[]; message: string }[];
    targetPower?: number;
    nUpper?: number;
    achievedPower?: number;
  };
}
