/** Typed client for the explanation service; one function per endpoint. */

import type { ExplainResponse, SupportResponse } from "./types.js";

export class ApiError extends Error {
  constructor(
    public code: string,
    message: string,
    public status: number
  ) {
    super(message);
  }
}

type FetchLike = typeof fetch;

export class Client {
  constructor(
    private baseUrl: string,
    private fetchImpl: FetchLike = fetch
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, {
      method,
      headers: body === undefined ? undefined : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await response.json();
    if (!response.ok) {
      const error = (payload as { error?: { code?: string; message?: string } }).error;
      throw new ApiError(
        error?.code ?? "unknown",
        error?.message ?? response.statusText,
        response.status
      );
    }
    return payload as T;
  }

  createSession(ontology: string): Promise<{ id: string; epoch: number }> {
    return this.request("POST", "/sessions", { ontology });
  }

  setQuery(
    sessionId: string,
    missing: string[],
    signature?: { concepts: string[]; roles: string[]; individuals: string[] } | "ALL",
    fixpoints?: string
  ): Promise<{ ok: boolean }> {
    return this.request("PUT", `/sessions/${sessionId}/query`, {
      missing,
      signature,
      fixpoints,
    });
  }

  support(sessionId: string, method: string): Promise<SupportResponse> {
    return this.request(
      "GET",
      `/sessions/${sessionId}/support?method=${encodeURIComponent(method)}`
    );
  }

  explain(
    sessionId: string,
    method: string,
    pageSize = 5,
    maxClasses = 10
  ): Promise<ExplainResponse> {
    return this.request("POST", `/sessions/${sessionId}/explain`, {
      method,
      page_size: pageSize,
      max_classes: maxClasses,
    });
  }

  addDisjointness(sessionId: string, names: string[]): Promise<{ pending: string[] }> {
    return this.request("POST", `/sessions/${sessionId}/disjointnesses`, { names });
  }

  removeDisjointness(sessionId: string, index: number): Promise<{ pending: string[] }> {
    return this.request("DELETE", `/sessions/${sessionId}/disjointnesses/${index}`);
  }

  recompute(sessionId: string, method: string, maxClasses = 10): Promise<ExplainResponse> {
    return this.request("POST", `/sessions/${sessionId}/recompute`, {
      method,
      max_classes: maxClasses,
    });
  }

  applyDisjointnesses(sessionId: string): Promise<{ epoch: number; ontology: string }> {
    return this.request("POST", `/sessions/${sessionId}/apply`, { what: "disjointnesses" });
  }

  applyHypothesis(
    sessionId: string,
    index: number
  ): Promise<{ epoch: number; ontology: string }> {
    return this.request("POST", `/sessions/${sessionId}/apply`, {
      what: "hypothesis",
      index,
    });
  }

  revert(sessionId: string): Promise<{ epoch: number; ontology: string }> {
    return this.request("POST", `/sessions/${sessionId}/revert`, undefined);
  }

  cancel(sessionId: string): Promise<{ cancelled: boolean }> {
    return this.request("POST", `/sessions/${sessionId}/cancel`, undefined);
  }
}
