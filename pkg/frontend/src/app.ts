// Controller: reacts to routed navigation and form submissions, talks to the
// API client, and re-renders. Conflicts (another curator decided first) are
// resolved non-destructively by reloading the flag from the server.

import { ApiClient, ApiError, ConflictError } from './api.js';
import { AppState, initialState, parseRoute, recordTrend } from './state.js';
import { renderApp } from './render.js';
import type { DecisionRequest, DecisionResponse } from './types.js';

export interface DecisionFormData {
  action: string;
  curator: string;
  corrected_property?: string;
  corrected_value?: string;
  corrected_source?: string;
  vocab_scheme?: string;
  vocab_label?: string;
  note?: string;
}

export class FormError extends Error {}

// Decision-form validation happens client-side so mistakes show inline
// before any network traffic.
export function buildDecision(form: DecisionFormData): DecisionRequest {
  const action = form.action as DecisionRequest['action'];
  if (!['accept', 'correct', 'reject'].includes(action)) {
    throw new FormError(`unknown action: ${form.action}`);
  }
  if (!form.curator || !form.curator.trim()) {
    throw new FormError('curator name is required');
  }
  const request: DecisionRequest = { action, curator: form.curator.trim() };
  if (form.note && form.note.trim()) request.note = form.note.trim();

  if (action === 'correct') {
    if (!form.corrected_value || !form.corrected_value.trim()) {
      throw new FormError('a corrected value is required for "correct"');
    }
    request.corrected_tuple = {
      property: (form.corrected_property ?? '').trim(),
      value: form.corrected_value.trim(),
    };
    if (form.corrected_source === 'CARD' || form.corrected_source === 'LLM') {
      request.corrected_tuple.source = form.corrected_source;
    }
  }
  const hasVocab = Boolean(form.vocab_label && form.vocab_label.trim());
  if (hasVocab) {
    if (action === 'reject') {
      throw new FormError('vocabulary additions go with accept or correct');
    }
    request.vocabulary_addition = {
      scheme: (form.vocab_scheme ?? 'ingredient').trim() || 'ingredient',
      pref_label: form.vocab_label!.trim(),
    };
  }
  return request;
}

export function sideEffectSummary(response: DecisionResponse): string {
  const parts: string[] = [`flag ${response.flag.status}`];
  const effects = response.side_effects;
  if (effects.vocabulary_revision !== undefined) {
    parts.push(`vocabulary revision ${effects.vocabulary_revision}`);
  }
  for (const rescore of effects.rescored ?? []) {
    parts.push(`entry ${rescore.entry_id.slice(0, 8)} re-scored to ${rescore.total} (${rescore.flags.length} flag(s))`);
  }
  return parts.join(' · ');
}

export class App {
  state: AppState = initialState();

  constructor(
    private client: ApiClient,
    private mount: (html: string) => void,
  ) {}

  private render(): void {
    this.mount(renderApp(this.state));
  }

  async navigate(hash: string): Promise<void> {
    this.state.route = parseRoute(hash);
    this.state.error = null;
    await this.refresh();
  }

  async refresh(): Promise<void> {
    try {
      this.state.stats = await this.client.stats();
      this.state.trend = recordTrend(this.state.trend, this.state.stats.flags.open_total);
      if (this.state.route.view === 'queue') {
        this.state.page = await this.client.listFlags(this.state.filters);
      } else if (this.state.route.view === 'flag') {
        this.state.detail = await this.client.getFlag(this.state.route.id);
      }
      this.state.error = null;
    } catch (error) {
      this.state.error = error instanceof Error ? error.message : String(error);
    }
    this.render();
  }

  async setFilter(name: 'status' | 'reason', value: string): Promise<void> {
    if (name === 'status') {
      this.state.filters.status = (value || undefined) as typeof this.state.filters.status;
    } else {
      this.state.filters.reason = (value || undefined) as typeof this.state.filters.reason;
    }
    this.state.filters.page = 1;
    await this.refresh();
  }

  async turnPage(delta: number): Promise<void> {
    this.state.filters.page = Math.max(1, this.state.filters.page + delta);
    await this.refresh();
  }

  async submitDecision(flagId: string, form: DecisionFormData): Promise<void> {
    let request: DecisionRequest;
    try {
      request = buildDecision(form);
    } catch (error) {
      this.state.toast = { kind: 'error', message: (error as Error).message };
      this.render();
      return;
    }
    try {
      const response = await this.client.submitDecision(flagId, request);
      this.state.toast = { kind: 'success', message: sideEffectSummary(response) };
      // back to the queue; counts and rows come fresh from the server
      this.state.route = { view: 'queue' };
      await this.refresh();
    } catch (error) {
      if (error instanceof ConflictError) {
        this.state.toast = {
          kind: 'info',
          message: 'another curator decided this flag first; reloaded it',
        };
        await this.refresh();
        return;
      }
      if (error instanceof ApiError) {
        this.state.toast = { kind: 'error', message: error.body.message };
        this.render();
        return;
      }
      this.state.error = error instanceof Error ? error.message : String(error);
      this.render();
    }
  }
}
