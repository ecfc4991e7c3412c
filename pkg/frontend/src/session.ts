/**
 * Session state for the expert answer flow.
 *
 * Holds the question queue, the latest per-pair consistency rows, pending
 * reconciliation proposals and the audit timeline. Every stored number is
 * a decimal string copied from a service response.
 */

import { ApiClient, ApiError } from './api.js';
import type {
  ActionProposal,
  ConsistencyResponse,
  ModelDocument,
  PairCheck,
  Question,
  ServiceError,
  Target,
} from './types.js';

export type GaugeLevel = 'ok' | 'warn' | 'alert' | 'unknown';

export interface TimelineEntry {
  kind: 'answer' | 'accept' | 'reject' | 'error' | 'note';
  label: string;
  detail: string;
}

/** Key a pair row by child, child state and parent. */
export function pairKey(p: Pick<PairCheck, 'child' | 'child_state' | 'parent'>): string {
  return `${p.child}=${p.child_state}|${p.parent}`;
}

/** Structural equality for targets regardless of JSON key order. */
export function sameTarget(a: Target, b: Target): boolean {
  if (a.kind !== b.kind) return false;
  if (a.kind === 'marginal' && b.kind === 'marginal') {
    return a.variable === b.variable && a.state === b.state;
  }
  if (a.kind === 'conditional' && b.kind === 'conditional') {
    return (
      a.child === b.child &&
      a.child_state === b.child_state &&
      JSON.stringify(a.given) === JSON.stringify(b.given)
    );
  }
  return false;
}

/**
 * Gauge color thresholds, documented: a pair is `alert` when the service
 * marked it inconsistent (residual above the session tolerance), `warn`
 * when its residual exceeds 80% of the tolerance without being flagged,
 * `ok` otherwise and `unknown` while statements are missing. The numeric
 * comparison is display logic only; the displayed residual stays the
 * service's string.
 */
export function gaugeLevel(pair: PairCheck, tolerance: string): GaugeLevel {
  if (pair.residual === null) return 'unknown';
  if (pair.inconsistent) return 'alert';
  if (parseFloat(pair.residual) > 0.8 * parseFloat(tolerance)) return 'warn';
  return 'ok';
}

export class SessionStore {
  questions: Question[] = [];
  pairs = new Map<string, PairCheck>();
  tolerance = '0.05';
  proposals: ActionProposal[] = [];
  notes: string[] = [];
  timeline: TimelineEntry[] = [];
  lastError: ServiceError | null = null;
  ok: boolean | null = null;

  private constructor(
    private readonly api: ApiClient,
    readonly sessionId: string,
  ) {}

  static async open(
    api: ApiClient,
    model: ModelDocument,
    expert?: string,
    tolerance?: string,
  ): Promise<SessionStore> {
    const opened = await api.openSession({ model, expert, tolerance });
    const store = new SessionStore(api, opened.session_id);
    store.tolerance = opened.tolerance;
    await store.loadQuestions();
    return store;
  }

  async loadQuestions(): Promise<void> {
    const response = await this.api.questions(this.sessionId);
    this.questions = response.questions;
  }

  private absorbConsistency(response: ConsistencyResponse): void {
    this.tolerance = response.tolerance;
    this.ok = response.ok;
    this.pairs.clear();
    for (const pair of [...response.pairs, ...response.missing]) {
      this.pairs.set(pairKey(pair), pair);
    }
  }

  async refreshConsistency(): Promise<void> {
    this.absorbConsistency(await this.api.consistency(this.sessionId));
  }

  /**
   * Submit one answer; the service's per-answer deltas update the gauges
   * immediately. Validation failures land in the timeline and
   * `lastError`, they do not throw.
   */
  async submitAnswer(target: Target, value: string, source?: string): Promise<boolean> {
    this.lastError = null;
    let response;
    try {
      response = await this.api.submitAnswers(this.sessionId, [{ target, value, source }]);
    } catch (err) {
      if (err instanceof ApiError) {
        this.lastError = err.detail;
        this.timeline.push({ kind: 'error', label: 'request failed', detail: err.detail.message });
        return false;
      }
      throw err;
    }
    const result = response.answers[0];
    if (!result || !result.accepted) {
      this.lastError = result?.error ?? { code: 'unknown', message: 'answer not accepted' };
      this.timeline.push({
        kind: 'error',
        label: 'answer rejected',
        detail: this.lastError.message,
      });
      return false;
    }
    for (const pair of result.pairs ?? []) {
      this.pairs.set(pairKey(pair), pair);
    }
    this.questions = this.questions.filter((q) => !sameTarget(q.target, target));
    this.timeline.push({
      kind: 'answer',
      label: describeTarget(target),
      detail: `= ${value}`,
    });
    return true;
  }

  async requestProposals(mode?: string): Promise<ActionProposal[]> {
    const response = await this.api.reconcile(this.sessionId, mode);
    this.proposals = response.proposals;
    this.notes = response.notes;
    return this.proposals;
  }

  /** The proposal an inconsistent pair should jump to, if any. */
  proposalFor(pair: PairCheck): ActionProposal | undefined {
    return this.proposals.find(
      (p) =>
        p.child === pair.child &&
        p.child_state === pair.child_state &&
        (p.parent === pair.parent || p.kind === 'replace_marginal'),
    );
  }

  async accept(actionId: string): Promise<boolean> {
    this.lastError = null;
    try {
      const response = await this.api.accept(this.sessionId, actionId);
      this.absorbConsistency(response.consistency);
      this.proposals = this.proposals.filter((p) => p.id !== actionId);
      this.timeline.push({
        kind: 'accept',
        label: `accepted ${response.applied.id}`,
        detail: response.applied.rationale,
      });
      return true;
    } catch (err) {
      if (err instanceof ApiError) {
        this.lastError = err.detail;
        this.timeline.push({
          kind: 'error',
          label: `accept ${actionId} failed (${err.status})`,
          detail: err.detail.message,
        });
        return false;
      }
      throw err;
    }
  }

  async reject(actionId: string): Promise<void> {
    await this.api.reject(this.sessionId, actionId);
    this.proposals = this.proposals.filter((p) => p.id !== actionId);
    this.timeline.push({ kind: 'reject', label: `rejected ${actionId}`, detail: '' });
  }

  gauge(pair: PairCheck): GaugeLevel {
    return gaugeLevel(pair, this.tolerance);
  }

  pairList(): PairCheck[] {
    return [...this.pairs.values()];
  }
}

export function describeTarget(target: Target): string {
  if (target.kind === 'marginal') {
    return `P(${target.variable}=${target.state})`;
  }
  const given = target.given.map(([v, s]) => `${v}=${s}`).join(',');
  return `P(${target.child}=${target.child_state}|${given})`;
}
