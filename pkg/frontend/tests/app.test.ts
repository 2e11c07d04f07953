// Controller flow against a scripted client: optimistic submit with
// server-confirmed refresh, conflict reload, form validation, trend capture.

import { describe, expect, it } from 'vitest';

import { App, buildDecision, FormError, sideEffectSummary } from '../src/app.js';
import { ApiClient, ConflictError } from '../src/api.js';
import { recordTrend } from '../src/state.js';
import type { DecisionResponse, FlagDetail, FlagPage, StatsResponse } from '../src/types.js';

function statsWith(open: number): StatsResponse {
  return {
    flags: { open: open ? { MISMATCH: open } : {}, resolved: {}, open_total: open, resolved_total: 6 - open },
    vocabulary_revision: 1,
    graph: null,
  };
}

const EMPTY_PAGE: FlagPage = { items: [], total: 0, page: 1, page_size: 10 };

const DETAIL: FlagDetail = {
  id: 'f1',
  entry_id: 'e1',
  reason: 'MISMATCH',
  status: 'open',
  created_at: '2024-07-15T00:00:00Z',
  detail: 'disagreement',
  tuples: [],
  candidates: [],
  resolution: null,
  recipe_context: { entry_id: 'e1', card: [], llm: [] },
};

interface Script {
  stats?: StatsResponse[];
  decisionError?: Error;
  decision?: DecisionResponse;
}

function fakeClient(script: Script): ApiClient {
  let statsCalls = 0;
  const client = Object.create(ApiClient.prototype) as ApiClient;
  Object.assign(client, {
    stats: async () => {
      const sequence = script.stats ?? [statsWith(6)];
      const value = sequence[Math.min(statsCalls, sequence.length - 1)];
      statsCalls += 1;
      return value;
    },
    listFlags: async () => EMPTY_PAGE,
    getFlag: async () => DETAIL,
    submitDecision: async () => {
      if (script.decisionError) throw script.decisionError;
      return script.decision!;
    },
  });
  return client;
}

describe('decision form validation', () => {
  it('correct without a corrected value is rejected inline', () => {
    expect(() => buildDecision({ action: 'correct', curator: 'a' })).toThrow(FormError);
  });

  it('reject with an empty note is allowed', () => {
    const request = buildDecision({ action: 'reject', curator: 'a', note: '' });
    expect(request).toEqual({ action: 'reject', curator: 'a' });
  });

  it('vocabulary addition cannot ride on a reject', () => {
    expect(() =>
      buildDecision({ action: 'reject', curator: 'a', vocab_label: 'kokum' }),
    ).toThrow(FormError);
  });

  it('builds a full correction payload', () => {
    const request = buildDecision({
      action: 'correct',
      curator: 'asha',
      corrected_property: 'has_ingredient',
      corrected_value: 'pudina chutney',
      corrected_source: 'LLM',
      vocab_scheme: 'ingredient',
      vocab_label: 'pudina chutney',
    });
    expect(request.corrected_tuple).toEqual({
      property: 'has_ingredient',
      value: 'pudina chutney',
      source: 'LLM',
    });
    expect(request.vocabulary_addition).toEqual({
      scheme: 'ingredient',
      pref_label: 'pudina chutney',
    });
  });
});

describe('submit flow', () => {
  it('success shows the side-effect summary and decremented server count', async () => {
    const rendered: string[] = [];
    const decision: DecisionResponse = {
      flag: { ...DETAIL, status: 'corrected' },
      side_effects: {
        vocabulary_revision: 2,
        rescored: [{ entry_id: 'e1234567', total: 12, flags: [] }],
      },
    };
    const app = new App(
      fakeClient({ stats: [statsWith(6), statsWith(5)], decision }),
      (html) => rendered.push(html),
    );
    await app.navigate('#/flags/f1');
    await app.submitDecision('f1', { action: 'reject', curator: 'a' });
    const last = rendered[rendered.length - 1];
    expect(last).toContain('flag corrected');
    expect(last).toContain('vocabulary revision 2');
    expect(last).toContain('re-scored to 12');
    expect(last).toContain('5 open'); // nav pill uses the fresh stats value
    expect(app.state.route.view).toBe('queue');
  });

  it('conflict reloads the flag non-destructively', async () => {
    const rendered: string[] = [];
    const app = new App(
      fakeClient({ decisionError: new ConflictError(409, { code: 'conflict', message: 'taken' }) }),
      (html) => rendered.push(html),
    );
    await app.navigate('#/flags/f1');
    await app.submitDecision('f1', { action: 'reject', curator: 'a' });
    expect(app.state.route.view).toBe('flag');
    expect(rendered[rendered.length - 1]).toContain('another curator decided this flag first');
    expect(app.state.error).toBeNull();
  });

  it('api failure renders the error state, not a blank page', async () => {
    const client = fakeClient({});
    (client as unknown as { stats: () => Promise<never> }).stats = async () => {
      throw new Error('connection refused');
    };
    const rendered: string[] = [];
    const app = new App(client, (html) => rendered.push(html));
    await app.navigate('#/queue');
    expect(rendered[rendered.length - 1]).toContain('data-action="retry"');
  });
});

describe('round trend', () => {
  it('captures changing open totals only', () => {
    let trend: number[] = [];
    for (const value of [6, 6, 5, 5, 0]) trend = recordTrend(trend, value);
    expect(trend).toEqual([6, 5, 0]);
  });

  it('two-round fixture trend goes down', async () => {
    const app = new App(fakeClient({ stats: [statsWith(6), statsWith(0)] }), () => {});
    await app.refresh();
    await app.refresh();
    expect(app.state.trend).toEqual([6, 0]);
    expect(app.state.trend[1]).toBeLessThanOrEqual(app.state.trend[0]);
  });
});

describe('side-effect summary', () => {
  it('reads the response, inventing nothing', () => {
    const text = sideEffectSummary({
      flag: { ...DETAIL, status: 'accepted' },
      side_effects: { rescored: [] },
    });
    expect(text).toBe('flag accepted');
  });
});
