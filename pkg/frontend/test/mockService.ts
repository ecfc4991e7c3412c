/**
 * A fetch mock that replays recorded service payloads and logs every
 * request, so tests can assert both what was rendered and what was asked
 * of the network.
 */

import type { FetchLike } from '../src/api';

export interface RecordedCall {
  method: string;
  path: string;
  body: unknown;
}

export interface Route {
  method: string;
  path: string | RegExp;
  status?: number;
  reply: unknown | ((body: unknown, call: RecordedCall) => unknown);
}

export interface MockService {
  fetch: FetchLike;
  calls: RecordedCall[];
}

export function mockService(routes: Route[]): MockService {
  const calls: RecordedCall[] = [];
  const fetchImpl: FetchLike = async (url, init) => {
    const method = init?.method ?? 'GET';
    const path = url.replace(/^https?:\/\/[^/]+/, '');
    const body = init?.body ? JSON.parse(init.body as string) : undefined;
    const call: RecordedCall = { method, path, body };
    calls.push(call);
    for (const route of routes) {
      const matches =
        route.method === method &&
        (typeof route.path === 'string' ? route.path === path : route.path.test(path));
      if (matches) {
        const payload =
          typeof route.reply === 'function'
            ? (route.reply as (b: unknown, c: RecordedCall) => unknown)(body, call)
            : route.reply;
        return new Response(JSON.stringify(payload), {
          status: route.status ?? 200,
          headers: { 'Content-Type': 'application/json' },
        });
      }
    }
    throw new Error(`mock service has no route for ${method} ${path}`);
  };
  return { fetch: fetchImpl, calls };
}

/** JSON.stringify with object keys sorted at every depth. */
export function canonicalJson(value: unknown): string {
  const canon = (v: unknown): unknown => {
    if (Array.isArray(v)) return v.map(canon);
    if (v && typeof v === 'object') {
      return Object.fromEntries(
        Object.keys(v as Record<string, unknown>)
          .sort()
          .map((k) => [k, canon((v as Record<string, unknown>)[k])]),
      );
    }
    return v;
  };
  return JSON.stringify(canon(value));
}

/** Every decimal-probability string appearing anywhere in a payload. */
export function probabilityStrings(payload: unknown): Set<string> {
  const found = new Set<string>();
  const walk = (value: unknown): void => {
    if (typeof value === 'string' && /^-?\d+(\.\d+)?([eE]-?\d+)?$/.test(value)) {
      found.add(value);
    } else if (Array.isArray(value)) {
      value.forEach(walk);
    } else if (value && typeof value === 'object') {
      Object.values(value).forEach(walk);
    }
  };
  walk(payload);
  return found;
}
