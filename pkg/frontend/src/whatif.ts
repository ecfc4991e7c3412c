/**
 * What-if exploration state: compose maintenance actions into named
 * scenarios, evaluate them against the service, and compare posteriors.
 *
 * Results are cached per (target, evidence, action set); the base network
 * lives server-side and is never mutated here, so re-evaluating a scenario
 * set is always safe.
 */

import { ApiClient } from './api.js';
import type {
  MaintenanceActionSpec,
  ModelDocument,
  PosteriorResponse,
  ScenarioSpec,
} from './types.js';

export interface ComparisonColumn {
  name: string;
  posterior: PosteriorResponse;
}

/** Canonical cache key: scenario content, not object identity. */
export function scenarioKey(
  target: string,
  evidence: Record<string, string>,
  actions: MaintenanceActionSpec[],
): string {
  const canon = (value: unknown): unknown => {
    if (Array.isArray(value)) return value.map(canon);
    if (value && typeof value === 'object') {
      return Object.fromEntries(
        Object.keys(value as Record<string, unknown>)
          .sort()
          .map((k) => [k, canon((value as Record<string, unknown>)[k])]),
      );
    }
    return value;
  };
  return JSON.stringify(canon({ target, evidence, actions }));
}

export class WhatIfStore {
  target: string;
  evidence: Record<string, string> = {};
  scenarios: ScenarioSpec[] = [];
  base: PosteriorResponse | null = null;
  private cache = new Map<string, PosteriorResponse>();

  constructor(
    private readonly api: ApiClient,
    private readonly model: ModelDocument,
    target: string,
  ) {
    this.target = target;
  }

  addScenario(name: string): ScenarioSpec {
    if (this.scenarios.some((s) => s.name === name)) {
      throw new Error(`scenario ${name} already exists`);
    }
    const scenario: ScenarioSpec = { name, actions: [] };
    this.scenarios.push(scenario);
    return scenario;
  }

  removeScenario(name: string): void {
    this.scenarios = this.scenarios.filter((s) => s.name !== name);
  }

  addAction(scenarioName: string, action: MaintenanceActionSpec): void {
    const scenario = this.scenarios.find((s) => s.name === scenarioName);
    if (!scenario) throw new Error(`no scenario ${scenarioName}`);
    scenario.actions.push(action);
  }

  setEvidence(evidence: Record<string, string>): void {
    this.evidence = { ...evidence };
  }

  /**
   * Evaluate base and all scenarios. Scenarios whose action set was
   * already evaluated under the current target/evidence come from the
   * cache without a network round trip.
   */
  async evaluate(): Promise<ComparisonColumn[]> {
    const missing = this.scenarios.filter(
      (s) => !this.cache.has(scenarioKey(this.target, this.evidence, s.actions)),
    );
    const baseKey = scenarioKey(this.target, this.evidence, []);
    const needBase = !this.cache.has(baseKey);
    if (needBase || missing.length > 0) {
      const response = await this.api.whatIf({
        model: this.model,
        target: this.target,
        evidence: this.evidence,
        scenarios: missing.map((s) => ({ name: s.name, actions: s.actions })),
      });
      this.cache.set(baseKey, response.base);
      for (const s of missing) {
        const result = response.scenarios[s.name];
        if (result) {
          this.cache.set(scenarioKey(this.target, this.evidence, s.actions), result);
        }
      }
    }
    this.base = this.cache.get(baseKey) ?? null;
    return this.columns();
  }

  columns(): ComparisonColumn[] {
    const out: ComparisonColumn[] = [];
    if (this.base) out.push({ name: 'base', posterior: this.base });
    for (const s of this.scenarios) {
      const hit = this.cache.get(scenarioKey(this.target, this.evidence, s.actions));
      if (hit) out.push({ name: s.name, posterior: hit });
    }
    return out;
  }

  cachedCount(): number {
    return this.cache.size;
  }

  /** Serialize a scenario for bookmarking (URL-hash friendly). */
  bookmark(scenarioName: string): string {
    const scenario = this.scenarios.find((s) => s.name === scenarioName);
    if (!scenario) throw new Error(`no scenario ${scenarioName}`);
    const payload = JSON.stringify({
      target: this.target,
      evidence: this.evidence,
      scenario,
    });
    return base64encode(payload);
  }

  restoreBookmark(bookmark: string): ScenarioSpec {
    const payload = JSON.parse(base64decode(bookmark)) as {
      target: string;
      evidence: Record<string, string>;
      scenario: ScenarioSpec;
    };
    this.target = payload.target;
    this.evidence = payload.evidence;
    this.scenarios = this.scenarios.filter((s) => s.name !== payload.scenario.name);
    this.scenarios.push(payload.scenario);
    return payload.scenario;
  }
}

// btoa/atob exist in browsers and node alike; the URI dance keeps
// non-ASCII scenario names intact
function base64encode(text: string): string {
  return btoa(unescape(encodeURIComponent(text)));
}

function base64decode(encoded: string): string {
  return decodeURIComponent(escape(atob(encoded)));
}
