/** Typed client for the validation service. All numbers shown in the UI come
 *  straight out of these payloads; the client never recomputes a score. */

export interface PerSourceCell {
  sourceId: string;
  value: string | null;
  sim: number;
  matched: boolean;
  error: string | null;
}

export interface TripleView {
  property: string;
  kgValue: string;
  unweighted: number;
  weighted: number;
  perSource: PerSourceCell[];
}

export interface InstanceView {
  subject: string;
  confidence: number;
  valid: boolean;
  threshold: number;
  matchErrors: Record<string, string>;
  triples: TripleView[];
}

export interface ConfigEcho {
  input: Record<string, unknown>;
  domainSpec: {
    name: string;
    targetType: string;
    properties: string[];
    matchingProperties: string[];
  };
  sources: string[];
  weights: number[] | null;
  normalizedWeights: number[];
  threshold: number;
  radiusM: number;
  similarity: Record<string, { kind: string; normalizer: string }>;
}

export interface ReportView {
  config: ConfigEcho;
  instances: InstanceView[];
  skipped: { subject: string; reason: string }[];
  metrics: Record<string, unknown> | null;
  sourceErrors: Record<string, number>;
  meta?: { runId: string; rescoreVersion: number };
}

export interface RunStatus {
  runId: string;
  status: "queued" | "running" | "done" | "error";
  report?: ReportView;
  rescoreVersion?: number;
  error?: string;
}

export interface SourceInfo {
  sourceId: string;
  kind: string;
  endpoint: string;
  authEnv: string | null;
  rateLimit: number;
}

export interface DomainSpecInfo {
  name: string;
  targetType: string;
  properties: string[];
  matchingProperties: string[];
  aliases?: Record<string, Record<string, string>>;
}

export interface RescoreResponse {
  runId: string;
  rescoreVersion: number;
  report: ReportView;
}

async function asJson<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let detail = `HTTP ${response.status}`;
    try {
      const body = await response.json();
      if (body && body.detail) detail = `${detail}: ${body.detail}`;
    } catch {
      // not a JSON error body; keep the status line
    }
    throw new Error(detail);
  }
  return response.json() as Promise<T>;
}

export class ApiClient {
  constructor(private readonly base: string = "") {}

  submitRun(config: Record<string, unknown> | null = null): Promise<{ runId: string }> {
    return fetch(`${this.base}/runs`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(config),
    }).then((r) => asJson<{ runId: string }>(r));
  }

  getRun(runId: string): Promise<RunStatus> {
    return fetch(`${this.base}/runs/${runId}`).then((r) => asJson<RunStatus>(r));
  }

  rescore(
    runId: string,
    body: { weights?: number[]; threshold?: number },
    signal?: AbortSignal,
  ): Promise<RescoreResponse> {
    return fetch(`${this.base}/runs/${runId}/rescore`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
      signal,
    }).then((r) => asJson<RescoreResponse>(r));
  }

  getSources(): Promise<SourceInfo[]> {
    return fetch(`${this.base}/sources`).then((r) => asJson<SourceInfo[]>(r));
  }

  getDomainSpecs(): Promise<DomainSpecInfo[]> {
    return fetch(`${this.base}/domain-specs`).then((r) => asJson<DomainSpecInfo[]>(r));
  }
}
