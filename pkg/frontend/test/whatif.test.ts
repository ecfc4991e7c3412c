import { describe, expect, it } from 'vitest';

import { ApiClient } from '../src/api';
import { renderComparison } from '../src/render';
import type { MaintenanceActionSpec, ModelDocument, ScenarioSpec } from '../src/types';
import { WhatIfStore, scenarioKey } from '../src/whatif';
import { mockService, probabilityStrings, type Route } from './mockService';
import { RECORDED } from './recorded';

const MODEL = {
  format: 'expertbn-model',
  version: 1,
  variables: RECORDED.application_variables,
  edges: RECORDED.application_edges,
} as unknown as ModelDocument;

const VACUOUS = RECORDED.whatif_request_scenarios[0] as unknown as ScenarioSpec;
const UPGRADE = RECORDED.whatif_request_scenarios[1] as unknown as ScenarioSpec;

/** Replies with recorded posteriors keyed by which action set was sent. */
function whatifRoute(): Route {
  const byActions = new Map<string, unknown>([
    [JSON.stringify(VACUOUS.actions), RECORDED.whatif_response.scenarios['noop']],
    [
      JSON.stringify(UPGRADE.actions),
      RECORDED.whatif_response.scenarios['filter upgrade'],
    ],
  ]);
  return {
    method: 'POST',
    path: '/whatif',
    reply: (body: unknown) => {
      const request = body as { scenarios: ScenarioSpec[] };
      const scenarios: Record<string, unknown> = {};
      for (const s of request.scenarios) {
        const hit = byActions.get(JSON.stringify(s.actions));
        if (!hit) throw new Error(`no recorded posterior for scenario ${s.name}`);
        scenarios[s.name] = hit;
      }
      return { base: RECORDED.whatif_response.base, scenarios };
    },
  };
}

function freshStore() {
  const service = mockService([whatifRoute()]);
  const api = new ApiClient('', service.fetch);
  const store = new WhatIfStore(api, MODEL, 'E');
  return { store, service };
}

describe('what-if flow', () => {
  it('vacuous action renders identical base and scenario posteriors', async () => {
    const { store } = freshStore();
    store.addScenario('noop').actions.push(...VACUOUS.actions);
    const columns = await store.evaluate();
    expect(columns.length).toBe(2);
    const [base, noop] = columns;
    expect(base!.posterior.distribution).toEqual(noop!.posterior.distribution);

    const html = renderComparison(columns);
    const baseCol = html.match(/data-scenario="base"[\s\S]*?<\/div>/)?.[0] ?? '';
    expect(baseCol).toContain(RECORDED.whatif_response.base.distribution.degraded);
    expect(html).toContain('data-scenario="noop"');
  });

  it('a real action moves the posterior and both stay service-sourced', async () => {
    const { store } = freshStore();
    store.addScenario('noop').actions.push(...VACUOUS.actions);
    store.addScenario('filter upgrade').actions.push(...UPGRADE.actions);
    const columns = await store.evaluate();
    expect(columns.length).toBe(3);
    const upgrade = columns.find((c) => c.name === 'filter upgrade')!;
    expect(upgrade.posterior.distribution).not.toEqual(
      RECORDED.whatif_response.base.distribution,
    );
    const allowed = probabilityStrings(RECORDED);
    const html = renderComparison(columns);
    for (const shown of html.replace(/style="[^"]*"/g, '').match(/\d+\.\d+/g) ?? []) {
      expect(allowed.has(shown), `${shown} not service-sourced`).toBe(true);
    }
  });

  it('three scenarios render three labeled columns plus base', async () => {
    const { store } = freshStore();
    store.addScenario('noop').actions.push(...VACUOUS.actions);
    store.addScenario('filter upgrade').actions.push(...UPGRADE.actions);
    // a duplicate action set under a new name exercises the cache, not the network
    store.addScenario('noop bis').actions.push(...VACUOUS.actions);
    const columns = await store.evaluate();
    expect(columns.map((c) => c.name)).toEqual([
      'base',
      'noop',
      'filter upgrade',
      'noop bis',
    ]);
    const html = renderComparison(columns);
    expect(html).toContain('data-columns="4"');
    expect(html).toContain('<h3>noop</h3>');
    expect(html).toContain('<h3>filter upgrade</h3>');
    expect(html).toContain('<h3>noop bis</h3>');
  });

  it('caches per action set: re-evaluation makes no further requests', async () => {
    const { store, service } = freshStore();
    store.addScenario('noop').actions.push(...VACUOUS.actions);
    await store.evaluate();
    const requests = service.calls.length;
    await store.evaluate();
    expect(service.calls.length).toBe(requests);

    // a new action set triggers exactly one more request, for it alone
    store.addScenario('filter upgrade').actions.push(...UPGRADE.actions);
    await store.evaluate();
    expect(service.calls.length).toBe(requests + 1);
    const lastBody = service.calls.at(-1)!.body as { scenarios: ScenarioSpec[] };
    expect(lastBody.scenarios.map((s) => s.name)).toEqual(['filter upgrade']);
  });

  it('the base network is never mutated client-side', async () => {
    const { store } = freshStore();
    const frozen = JSON.stringify(MODEL);
    store.addScenario('noop').actions.push(...VACUOUS.actions);
    await store.evaluate();
    expect(JSON.stringify(MODEL)).toBe(frozen);
  });

  it('bookmarks round-trip a scenario with its target and evidence', async () => {
    const { store } = freshStore();
    store.setEvidence({ O1: 'anomalous' });
    store.addScenario('noop').actions.push(...VACUOUS.actions);
    const mark = store.bookmark('noop');

    const { store: other } = freshStore();
    const restored = other.restoreBookmark(mark);
    expect(restored.name).toBe('noop');
    expect(other.target).toBe('E');
    expect(other.evidence).toEqual({ O1: 'anomalous' });
    expect(restored.actions).toEqual(VACUOUS.actions);
  });

  it('scenario keys are order-insensitive in object fields', () => {
    const a: MaintenanceActionSpec = {
      task: { id: 'T', states: ['y', 'n'] },
      prior: { y: '0.5', n: '0.5' },
      target: 'Ab',
      table: { y: { high: '0.1', low: '0.9' }, n: { high: '0.2', low: '0.8' } },
    };
    const b: MaintenanceActionSpec = {
      target: 'Ab',
      prior: { n: '0.5', y: '0.5' },
      task: { states: ['y', 'n'], id: 'T' },
      table: { n: { low: '0.8', high: '0.2' }, y: { low: '0.9', high: '0.1' } },
    };
    expect(scenarioKey('E', {}, [a])).toBe(scenarioKey('E', {}, [b]));
  });
});
