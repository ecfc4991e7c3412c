/**
 * Thin typed client for the elicitation service. All probability math
 * happens server-side; this module only moves JSON.
 */

import type {
  AcceptResponse,
  AnswersResponse,
  ConsistencyResponse,
  ModelDocument,
  PosteriorResponse,
  QuestionnaireResponse,
  ReconcileResponse,
  ScenarioSpec,
  ServiceError,
  Target,
  WhatIfResponse,
} from './types.js';

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly detail: ServiceError,
  ) {
    super(detail.message);
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string = '',
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, {
      method,
      headers: { 'Content-Type': 'application/json' },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await response.json();
    if (!response.ok) {
      const detail: ServiceError = payload?.error ?? {
        code: 'http_error',
        message: `service returned ${response.status}`,
      };
      throw new ApiError(response.status, detail);
    }
    return payload as T;
  }

  openSession(body: {
    model?: ModelDocument;
    model_path?: string;
    expert?: string;
    tolerance?: string;
  }): Promise<{ session_id: string; tolerance: string }> {
    return this.request('POST', '/sessions', body);
  }

  questions(sessionId: string): Promise<QuestionnaireResponse> {
    return this.request('GET', `/sessions/${sessionId}/questions`);
  }

  submitAnswers(
    sessionId: string,
    answers: { target: Target; value: string; source?: string; note?: string }[],
  ): Promise<AnswersResponse> {
    return this.request('PUT', `/sessions/${sessionId}/answers`, { answers });
  }

  consistency(sessionId: string): Promise<ConsistencyResponse> {
    return this.request('GET', `/sessions/${sessionId}/consistency`);
  }

  reconcile(sessionId: string, mode?: string): Promise<ReconcileResponse> {
    return this.request('POST', `/sessions/${sessionId}/reconcile`, mode ? { mode } : {});
  }

  accept(sessionId: string, actionId: string): Promise<AcceptResponse> {
    return this.request('POST', `/sessions/${sessionId}/actions/${actionId}/accept`);
  }

  reject(sessionId: string, actionId: string): Promise<{ rejected: string; pending: string[] }> {
    return this.request('POST', `/sessions/${sessionId}/actions/${actionId}/reject`);
  }

  sessionModel(sessionId: string): Promise<ModelDocument> {
    return this.request('GET', `/sessions/${sessionId}/model`);
  }

  infer(body: {
    model?: ModelDocument;
    model_path?: string;
    query: string;
    evidence?: Record<string, string>;
  }): Promise<PosteriorResponse> {
    return this.request('POST', '/infer', body);
  }

  whatIf(body: {
    model?: ModelDocument;
    model_path?: string;
    target: string;
    evidence?: Record<string, string>;
    scenarios: ScenarioSpec[];
  }): Promise<WhatIfResponse> {
    return this.request('POST', '/whatif', body);
  }
}
