/** Typed client for the hmreq service HTTP API. */

export type Quartile = "Q1" | "Q2" | "Q3" | "Q4";

export interface OverviewRow {
  id: string;
  renderedText: string;
  stakeholders: string[];
  averageConflict?: number;
  highlightIntensity?: number;
}

export interface ConflictPair {
  stakeholderA: string;
  stakeholderB: string;
  valueA: string;
  valueB: string;
  statementA: string;
  statementB: string;
  score: number;
  quartile: Quartile;
}

export interface ConflictReport {
  requirementId: string;
  pairs: ConflictPair[];
  average?: number;
}

export interface ValueInfo {
  id: string;
  label: string;
  group: string;
}

export interface QuartileThresholds {
  q1: number;
  q2: number;
  q3: number;
}

export interface Assignment {
  requirementId: string;
  stakeholderId: string;
  valueId: string;
  statement: string;
  updatedAt: string;
  revision: number;
}

export interface AssignmentBody {
  valueId: string;
  statement: string;
  revision: number;
}

/** The error body the service sends with every non-2xx response. */
export class ApiError extends Error {
  constructor(
    readonly httpStatus: number,
    readonly code: string,
    readonly detail: string,
  ) {
    super(`${code}: ${detail}`);
    this.name = "ApiError";
  }
}

export type FetchLike = (
  url: string,
  init?: RequestInit,
) => Promise<Response>;

export class HmreqApi {
  constructor(
    readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path, init);
    if (!response.ok) {
      let body: unknown = null;
      try {
        body = await response.json();
      } catch {
        // non-JSON error body; fall through to the generic error
      }
      if (
        body !== null &&
        typeof body === "object" &&
        "code" in body &&
        "detail" in body
      ) {
        const e = body as { httpStatus: number; code: string; detail: string };
        throw new ApiError(e.httpStatus, e.code, e.detail);
      }
      throw new ApiError(
        response.status,
        "http_error",
        response.statusText || "request failed",
      );
    }
    return (await response.json()) as T;
  }

  listRequirements(): Promise<OverviewRow[]> {
    return this.request("/api/requirements");
  }

  conflicts(requirementId: string): Promise<ConflictReport> {
    return this.request(
      `/api/requirements/${encodeURIComponent(requirementId)}/conflicts`,
    );
  }

  assignments(requirementId: string): Promise<Assignment[]> {
    return this.request(
      `/api/requirements/${encodeURIComponent(requirementId)}/assignments`,
    );
  }

  putAssignment(
    requirementId: string,
    stakeholderId: string,
    body: AssignmentBody,
  ): Promise<Assignment> {
    const path =
      `/api/requirements/${encodeURIComponent(requirementId)}` +
      `/assignments/${encodeURIComponent(stakeholderId)}`;
    return this.request(path, {
      method: "PUT",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  values(): Promise<ValueInfo[]> {
    return this.request("/api/values");
  }

  quartiles(): Promise<QuartileThresholds> {
    return this.request("/api/values/quartiles");
  }
}
