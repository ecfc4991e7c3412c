import { describe, expect, it } from 'vitest';

import { layeredLayout } from '../src/layout';
import {
  escapeHtml,
  renderDag,
  renderError,
  renderGauges,
  renderQuestionQueue,
} from '../src/render';
import type { ModelVariable, PairCheck, Question } from '../src/types';
import { RECORDED } from './recorded';

describe('escapeHtml', () => {
  it('neutralizes markup in service strings', () => {
    expect(escapeHtml('<img src=x onerror=alert(1)>')).toBe(
      '&lt;img src=x onerror=alert(1)&gt;',
    );
    expect(escapeHtml('a & "b"')).toBe('a &amp; &quot;b&quot;');
  });
});

describe('question queue', () => {
  it('renders prompts, targets and the rare-event badge', () => {
    const questions: Question[] = [
      {
        target: { kind: 'marginal', variable: 'default', state: 'yes' },
        prompt: 'How probable is a component default?',
        rare_event: false,
      },
      {
        target: {
          kind: 'conditional',
          child: 'state',
          child_state: 'failure',
          given: [['default', 'yes']],
        },
        prompt: "Given a default, how probable is failure?",
        rare_event: true,
      },
    ];
    const html = renderQuestionQueue(questions);
    expect(html).toContain('How probable is a component default?');
    expect(html).toContain('P(state=failure|default=yes)');
    expect(html.match(/badge-rare/g)?.length).toBe(1);
  });

  it('announces an empty queue', () => {
    expect(renderQuestionQueue([])).toContain('All questions answered');
  });
});

describe('gauges', () => {
  const pair: PairCheck = {
    child: 'C',
    child_state: 'present',
    parent: 'A',
    computed: '0.1845',
    stated: '0.25',
    residual: '0.0655',
    hull: ['0.05', '0.3'],
    in_hull: true,
    degenerate_boundary: false,
    hull_flag: false,
    inconsistent: true,
    missing: [],
  };

  it('shows hull badges only when flagged', () => {
    const flagged = { ...pair, hull_flag: true };
    expect(renderGauges([pair], '0.05')).not.toContain('badge-hull');
    expect(renderGauges([flagged], '0.05')).toContain('badge-hull');
  });

  it('marks missing pairs as unknown', () => {
    const missing: PairCheck = {
      ...pair,
      computed: null,
      stated: null,
      residual: null,
      hull: null,
      in_hull: null,
      degenerate_boundary: null,
      inconsistent: false,
      missing: ['P(C=present)'],
    };
    const html = renderGauges([missing], '0.05');
    expect(html).toContain('gauge-unknown');
    expect(html).toContain('n/a');
  });
});

describe('error banner', () => {
  it('renders nothing without an error', () => {
    expect(renderError(null)).toBe('');
  });
  it('shows code and message inline', () => {
    const html = renderError({ code: 'zero_weight', message: 'P(A=2) is zero' });
    expect(html).toContain('zero_weight');
    expect(html).toContain('P(A=2) is zero');
    expect(html).toContain('role="alert"');
  });
});

describe('dag rendering', () => {
  const variables = RECORDED.application_variables as unknown as ModelVariable[];
  const edges = RECORDED.application_edges as unknown as [string, string][];

  it('draws every node and edge', () => {
    const nodes = layeredLayout(variables, edges);
    const html = renderDag(nodes, edges);
    expect(html.match(/<g class="node/g)?.length).toBe(22);
    expect(html.match(/<line /g)?.length).toBe(39);
  });

  it('labels marginals verbatim and highlights observed nodes', () => {
    const nodes = layeredLayout(variables, edges);
    const html = renderDag(
      nodes,
      edges,
      { Ab: { high: '0.2731', medium: '0.4105', low: '0.3164' } },
      { O1: 'anomalous' },
    );
    expect(html).toContain('high: 0.2731');
    expect(html).toContain('node-observed');
  });
});
