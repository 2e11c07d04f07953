// Application state. Rendered state is always derived from the last server
// response; the client never aggregates counts itself (the stats payload is
// the single source of truth for every number on screen).

import type { FlagDetail, FlagPage, QueueFilters, StatsResponse } from './types.js';

export type Route =
  | { view: 'queue' }
  | { view: 'flag'; id: string }
  | { view: 'stats' };

export interface Toast {
  kind: 'success' | 'info' | 'error';
  message: string;
}

export interface AppState {
  route: Route;
  filters: QueueFilters;
  page: FlagPage | null;
  detail: FlagDetail | null;
  stats: StatsResponse | null;
  trend: number[];
  toast: Toast | null;
  error: string | null;
}

export function initialState(): AppState {
  return {
    route: { view: 'queue' },
    filters: { status: 'open', page: 1, page_size: 10 },
    page: null,
    detail: null,
    stats: null,
    trend: [],
    toast: null,
    error: null,
  };
}

export function parseRoute(hash: string): Route {
  const cleaned = hash.replace(/^#\/?/, '');
  if (cleaned.startsWith('flags/')) {
    return { view: 'flag', id: cleaned.slice('flags/'.length) };
  }
  if (cleaned === 'stats') return { view: 'stats' };
  return { view: 'queue' };
}

export function routeHash(route: Route): string {
  if (route.view === 'flag') return `#/flags/${route.id}`;
  if (route.view === 'stats') return '#/stats';
  return '#/queue';
}

// The open-count trend across curation rounds: record a point whenever the
// server-reported open total changes (a re-score or a decision landed).
export function recordTrend(trend: number[], openTotal: number): number[] {
  if (trend.length && trend[trend.length - 1] === openTotal) return trend;
  return [...trend, openTotal];
}
