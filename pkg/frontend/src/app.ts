/**
 * Browser shell: wires the stores to the page regions.
 *
 * The page is served next to the HTTP API (`expertbn serve model.json`);
 * this module is intentionally thin, all state lives in SessionStore and
 * WhatIfStore and all rendering in render.ts so tests cover the whole
 * behavior without a DOM.
 */

import { ApiClient } from './api.js';
import { layeredLayout } from './layout.js';
import {
  renderComparison,
  renderDag,
  renderError,
  renderGauges,
  renderProposals,
  renderQuestionQueue,
  renderTimeline,
} from './render.js';
import { SessionStore } from './session.js';
import type { ModelDocument, Target } from './types.js';
import { WhatIfStore } from './whatif.js';

interface Regions {
  questions: HTMLElement;
  gauges: HTMLElement;
  proposals: HTMLElement;
  timeline: HTMLElement;
  error: HTMLElement;
  dag: HTMLElement;
  comparison: HTMLElement;
}

function region(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing page region #${id}`);
  return el;
}

export async function boot(model: ModelDocument, expert?: string): Promise<void> {
  const api = new ApiClient('');
  const session = await SessionStore.open(api, model, expert);
  await session.refreshConsistency();
  const interest =
    model.variables.find((v) => v.group === 'interest')?.id ?? model.variables[0]!.id;
  const whatIf = new WhatIfStore(api, model, interest);

  const regions: Regions = {
    questions: region('questions'),
    gauges: region('gauges'),
    proposals: region('proposals'),
    timeline: region('timeline'),
    error: region('error'),
    dag: region('dag'),
    comparison: region('comparison'),
  };

  const redraw = () => {
    regions.questions.innerHTML = renderQuestionQueue(session.questions);
    regions.gauges.innerHTML = renderGauges(session.pairList(), session.tolerance);
    regions.proposals.innerHTML = renderProposals(session.proposals, session.notes);
    regions.timeline.innerHTML = renderTimeline(session.timeline);
    regions.error.innerHTML = renderError(session.lastError);
    regions.dag.innerHTML = renderDag(
      layeredLayout(model.variables, model.edges),
      model.edges,
    );
    regions.comparison.innerHTML = renderComparison(whatIf.columns());
  };

  regions.questions.addEventListener('click', async (event) => {
    const button = (event.target as HTMLElement).closest('button.submit-answer');
    if (!button) return;
    const item = button.closest('li.question') as HTMLElement;
    const input = item.querySelector('input.answer-input') as HTMLInputElement;
    const target = JSON.parse(item.dataset.target ?? '{}') as Target;
    await session.submitAnswer(target, input.value.trim());
    redraw();
  });

  regions.proposals.addEventListener('click', async (event) => {
    const button = (event.target as HTMLElement).closest('button[data-action]');
    if (!button) return;
    const actionId = (button as HTMLElement).dataset.action!;
    if (button.classList.contains('accept')) {
      await session.accept(actionId);
    } else {
      await session.reject(actionId);
    }
    redraw();
  });

  const reconcileButton = document.getElementById('request-proposals');
  reconcileButton?.addEventListener('click', async () => {
    await session.requestProposals();
    redraw();
  });

  const evaluateButton = document.getElementById('evaluate-whatif');
  evaluateButton?.addEventListener('click', async () => {
    await whatIf.evaluate();
    redraw();
  });

  redraw();
}

declare global {
  interface Window {
    expertbnBoot: typeof boot;
  }
}

if (typeof window !== 'undefined') {
  window.expertbnBoot = boot;
}
