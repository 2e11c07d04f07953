// Views are pure string renderers; every count shown comes verbatim from the
// stats payload (no client-side aggregation).

import { describe, expect, it } from 'vitest';

import { initialState } from '../src/state.js';
import { renderApp, renderFlagDetail, renderQueue, renderStats } from '../src/render.js';
import type { FlagDetail, FlagSummary, StatsResponse } from '../src/types.js';

function summary(id: string, reason: FlagSummary['reason']): FlagSummary {
  return {
    id,
    entry_id: 'e1234567',
    reason,
    status: 'open',
    created_at: '2024-07-15T00:00:00Z',
    detail: `detail of ${id}`,
    tuple_count: 1,
  };
}

const STATS: StatsResponse = {
  flags: {
    open: { MULTIWORD_SUSPECT: 1, MISCLASSIFIED_SCHEME: 2 },
    resolved: { MISMATCH: 3 },
    open_total: 3,
    resolved_total: 3,
  },
  vocabulary_revision: 2,
  graph: null,
};

describe('queue view', () => {
  it('lists flags with reason badges', () => {
    const state = initialState();
    state.page = {
      items: [summary('f1', 'MULTIWORD_SUSPECT'), summary('f2', 'MISCLASSIFIED_SCHEME')],
      total: 2,
      page: 1,
      page_size: 10,
    };
    const html = renderQueue(state);
    expect(html).toContain('badge-multiword_suspect');
    expect(html).toContain('badge-misclassified_scheme');
    expect(html).toContain('#/flags/f1');
  });

  it('shows totals from the API even when the page is partial', () => {
    const state = initialState();
    state.filters.page_size = 5;
    state.page = {
      items: [summary('f1', 'MISMATCH')],
      total: 12,
      page: 2,
      page_size: 5,
    };
    const html = renderQueue(state);
    expect(html).toContain('page 2 of 3');
    expect(html).toContain('12 flag(s)');
  });

  it('renders an explicit empty state, never a blank page', () => {
    const state = initialState();
    state.page = { items: [], total: 0, page: 1, page_size: 10 };
    const html = renderQueue(state);
    expect(html).toContain('queue is clear');
  });

  it('escapes hostile values', () => {
    const state = initialState();
    const hostile = summary('f1', 'MISMATCH');
    hostile.detail = '<script>alert(1)</script>';
    state.page = { items: [hostile], total: 1, page: 1, page_size: 10 };
    expect(renderQueue(state)).not.toContain('<script>alert');
  });
});

describe('flag detail view', () => {
  const detail: FlagDetail = {
    id: 'f9',
    entry_id: 'e1',
    reason: 'MULTIWORD_SUSPECT',
    status: 'open',
    created_at: '2024-07-15T00:00:00Z',
    detail: "'pudina' looks like a fragment",
    tuples: [{ subject: 'e1', property: 'has_ingredient', value: 'pudina', source: 'LLM' }],
    candidates: [
      { concept: 'https://x/recipe/pudina-chutney', scheme: 'recipe',
        label: 'pudina chutney', kind: 'multiword' },
    ],
    resolution: null,
    recipe_context: {
      entry_id: 'e1',
      recipe_name: 'Pudina Chutney Sandwich',
      card: [{ subject: 'e1', property: 'has_ingredient', value: 'pudina chutney', source: 'CARD' }],
      llm: [{ subject: 'e1', property: 'has_ingredient', value: 'pudina', source: 'LLM' }],
    },
  };

  it('pre-fills the correction form from the near-miss candidate', () => {
    const state = initialState();
    state.route = { view: 'flag', id: 'f9' };
    state.detail = detail;
    const html = renderFlagDetail(state);
    expect(html).toContain('data-value="pudina chutney"');
    expect(html).toContain('value="pudina chutney"'); // corrected-value input
    expect(html).toContain('Recipe card');
    expect(html).toContain('LLM output');
  });

  it('shows the resolved status instead of a form once decided', () => {
    const state = initialState();
    state.detail = { ...detail, status: 'corrected', resolution: { action: 'correct' } };
    const html = renderFlagDetail(state);
    expect(html).toContain('Already corrected');
    expect(html).not.toContain('Submit decision');
  });
});

describe('stats view', () => {
  it('renders every count verbatim from the payload', () => {
    const state = initialState();
    state.stats = STATS;
    state.trend = [6, 3];
    const html = renderStats(state);
    expect(html).toContain('<span class="open-count">3</span>');
    expect(html).toContain('<span class="resolved-count">3</span>');
    expect(html).toContain('<span class="vocab-revision">2</span>');
    expect(html).toContain('<li>6</li><li>3</li>');
  });
});

describe('error state', () => {
  it('offers a retry, never a blank page', () => {
    const state = initialState();
    state.error = 'connection refused';
    const html = renderApp(state);
    expect(html).toContain('data-action="retry"');
    expect(html).toContain('connection refused');
  });
});
