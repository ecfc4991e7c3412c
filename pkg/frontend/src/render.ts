/**
 * Pure HTML renderers. Each returns a string; the app shell assigns them
 * into containers. Every probability shown is a decimal string from a
 * service response, copied verbatim (bar widths scale numerically, the
 * printed figure does not change).
 */

import type { GaugeLevel, TimelineEntry } from './session.js';
import { describeTarget, gaugeLevel, pairKey } from './session.js';
import type { LayoutNode } from './layout.js';
import type {
  ActionProposal,
  PairCheck,
  PosteriorResponse,
  Question,
  ServiceError,
} from './types.js';
import type { ComparisonColumn } from './whatif.js';

const GAUGE_CLASS: Record<GaugeLevel, string> = {
  ok: 'gauge gauge-ok',
  warn: 'gauge gauge-warn',
  alert: 'gauge gauge-alert',
  unknown: 'gauge gauge-unknown',
};

export function escapeHtml(text: string): string {
  return text
    .replaceAll('&', '&amp;')
    .replaceAll('<', '&lt;')
    .replaceAll('>', '&gt;')
    .replaceAll('"', '&quot;');
}

export function renderQuestionQueue(questions: Question[]): string {
  if (questions.length === 0) {
    return '<p class="queue-empty">All questions answered.</p>';
  }
  const items = questions.map((q) => {
    const rare = q.rare_event
      ? ' <span class="badge badge-rare" title="rare event: answer for the event and its complement">rare</span>'
      : '';
    return (
      `<li class="question" data-target='${escapeHtml(JSON.stringify(q.target))}'>` +
      `<span class="prompt">${escapeHtml(q.prompt)}</span>${rare}` +
      `<code class="target">${escapeHtml(describeTarget(q.target))}</code>` +
      `<input class="answer-input" inputmode="decimal" placeholder="0.00">` +
      `<button class="submit-answer">save</button></li>`
    );
  });
  return `<ol class="question-queue">${items.join('')}</ol>`;
}

export function renderGauges(pairs: PairCheck[], tolerance: string): string {
  const rows = pairs.map((pair) => {
    const level = gaugeLevel(pair, tolerance);
    const residual = pair.residual ?? 'n/a';
    const hull = pair.hull_flag
      ? ' <span class="badge badge-hull" title="stated marginal cannot be a mixture of these conditionals">hull</span>'
      : '';
    const width =
      pair.residual === null
        ? 0
        : Math.min(100, (parseFloat(pair.residual) / parseFloat(tolerance)) * 50);
    return (
      `<tr class="${GAUGE_CLASS[level]}" data-pair="${escapeHtml(pairKey(pair))}">` +
      `<td>${escapeHtml(pair.child)}=${escapeHtml(pair.child_state)}</td>` +
      `<td>${escapeHtml(pair.parent)}</td>` +
      `<td><span class="bar" style="width:${width}%"></span>` +
      `<span class="residual">${escapeHtml(residual)}</span>${hull}</td>` +
      `<td>computed ${escapeHtml(pair.computed ?? 'n/a')} / stated ${escapeHtml(pair.stated ?? 'n/a')}</td>` +
      `</tr>`
    );
  });
  return (
    `<table class="gauges"><thead><tr><th>child</th><th>parent</th>` +
    `<th>residual (tolerance ${escapeHtml(tolerance)})</th><th>values</th></tr></thead>` +
    `<tbody>${rows.join('')}</tbody></table>`
  );
}

export function renderProposals(proposals: ActionProposal[], notes: string[]): string {
  const noteHtml = notes.length
    ? `<ul class="notes">${notes.map((n) => `<li>${escapeHtml(n)}</li>`).join('')}</ul>`
    : '';
  if (proposals.length === 0) {
    return `${noteHtml}<p class="proposals-empty">No pending proposals.</p>`;
  }
  const items = proposals.map((p) => {
    const change =
      p.kind === 'rescale_ratios'
        ? `scale ${escapeHtml(p.scale ?? '')}`
        : `${escapeHtml(p.old_value ?? '')} &rarr; ${escapeHtml(p.new_value ?? '')}`;
    return (
      `<li class="proposal" id="proposal-${escapeHtml(p.id)}">` +
      `<span class="rule">${escapeHtml(p.rule)}</span> ` +
      `<span class="rationale">${escapeHtml(p.rationale)}</span> ` +
      `<span class="change">${change}</span>` +
      `<button class="accept" data-action="${escapeHtml(p.id)}">accept</button>` +
      `<button class="reject" data-action="${escapeHtml(p.id)}">reject</button></li>`
    );
  });
  return `${noteHtml}<ul class="proposals">${items.join('')}</ul>`;
}

export function renderTimeline(entries: TimelineEntry[]): string {
  if (entries.length === 0) return '<p class="timeline-empty">No activity yet.</p>';
  const items = entries.map(
    (e) =>
      `<li class="timeline-${e.kind}"><strong>${escapeHtml(e.label)}</strong> ` +
      `${escapeHtml(e.detail)}</li>`,
  );
  return `<ol class="timeline">${items.join('')}</ol>`;
}

export function renderError(error: ServiceError | null): string {
  if (!error) return '';
  return (
    `<div class="service-error" role="alert">` +
    `<code>${escapeHtml(error.code)}</code> ${escapeHtml(error.message)}</div>`
  );
}

export function renderDag(
  nodes: LayoutNode[],
  edges: [string, string][],
  marginals: Record<string, Record<string, string>> = {},
  evidence: Record<string, string> = {},
): string {
  const byId = new Map(nodes.map((n) => [n.id, n]));
  const width = Math.max(...nodes.map((n) => n.x)) + 140;
  const height = Math.max(...nodes.map((n) => n.y)) + 60;
  const lines = edges
    .filter(([s, t]) => byId.has(s) && byId.has(t))
    .map(([s, t]) => {
      const a = byId.get(s)!;
      const b = byId.get(t)!;
      return `<line x1="${a.x + 50}" y1="${a.y + 12}" x2="${b.x}" y2="${b.y + 12}" class="edge"/>`;
    });
  const boxes = nodes.map((n) => {
    const dist = marginals[n.id];
    const marginalText = dist
      ? Object.entries(dist)
          .map(([s, p]) => `${s}: ${p}`)
          .join(' ')
      : '';
    const observed = evidence[n.id] ? ' node-observed' : '';
    return (
      `<g class="node${observed}" data-variable="${escapeHtml(n.id)}">` +
      `<rect x="${n.x}" y="${n.y}" width="100" height="24" rx="4"/>` +
      `<text x="${n.x + 6}" y="${n.y + 16}">${escapeHtml(n.id)}</text>` +
      (marginalText
        ? `<text x="${n.x + 6}" y="${n.y + 34}" class="marginal">${escapeHtml(marginalText)}</text>`
        : '') +
      `</g>`
    );
  });
  return (
    `<svg viewBox="0 0 ${width} ${height}" class="dag">` +
    lines.join('') +
    boxes.join('') +
    `</svg>`
  );
}

export function renderComparison(columns: ComparisonColumn[]): string {
  if (columns.length === 0) return '<p class="comparison-empty">Nothing evaluated yet.</p>';
  const first = columns[0]!;
  const states = Object.keys(first.posterior.distribution);
  const cols = columns.map((column) => {
    const bars = states.map((state) => {
      const value = column.posterior.distribution[state] ?? '0';
      const width = Math.min(100, parseFloat(value) * 100);
      return (
        `<div class="posterior-row" data-state="${escapeHtml(state)}">` +
        `<span class="state">${escapeHtml(state)}</span>` +
        `<span class="bar" style="width:${width}%"></span>` +
        `<span class="value">${escapeHtml(value)}</span></div>`
      );
    });
    return (
      `<div class="comparison-column" data-scenario="${escapeHtml(column.name)}">` +
      `<h3>${escapeHtml(column.name)}</h3>${bars.join('')}</div>`
    );
  });
  return `<div class="comparison" data-columns="${columns.length}">${cols.join('')}</div>`;
}
