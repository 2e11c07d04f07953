// Thin typed client for the curation API. The only write paths in the whole
// frontend are the two POST methods below; everything else is a GET.

import type {
  ApiErrorBody,
  AuditResponse,
  DecisionRequest,
  DecisionResponse,
  FlagDetail,
  FlagPage,
  QueueFilters,
  StatsResponse,
  TermSearchResponse,
  VocabularyAddition,
} from './types.js';

export class ApiError extends Error {
  constructor(
    public status: number,
    public body: ApiErrorBody,
  ) {
    super(body.message || `HTTP ${status}`);
  }
}

export class ConflictError extends ApiError {}

export class ApiClient {
  constructor(
    private baseUrl: string = '',
    private token: string | null = null,
  ) {}

  private headers(json: boolean): Record<string, string> {
    const headers: Record<string, string> = {};
    if (json) headers['content-type'] = 'application/json';
    if (this.token) headers['x-api-token'] = this.token;
    return headers;
  }

  private async handle<T>(response: Response): Promise<T> {
    if (response.ok) return (await response.json()) as T;
    let body: ApiErrorBody;
    try {
      body = (await response.json()) as ApiErrorBody;
    } catch {
      body = { code: 'http_error', message: `HTTP ${response.status}` };
    }
    if (response.status === 409) throw new ConflictError(response.status, body);
    throw new ApiError(response.status, body);
  }

  private async get<T>(path: string, params?: Record<string, string | number | undefined>): Promise<T> {
    const query = params
      ? Object.entries(params)
          .filter(([, v]) => v !== undefined && v !== '')
          .map(([k, v]) => `${encodeURIComponent(k)}=${encodeURIComponent(String(v))}`)
          .join('&')
      : '';
    const url = `${this.baseUrl}${path}${query ? `?${query}` : ''}`;
    const response = await fetch(url, { headers: this.headers(false) });
    return this.handle<T>(response);
  }

  listFlags(filters: QueueFilters): Promise<FlagPage> {
    return this.get<FlagPage>('/api/flags', {
      status: filters.status,
      reason: filters.reason,
      page: filters.page,
      page_size: filters.page_size,
    });
  }

  getFlag(id: string): Promise<FlagDetail> {
    return this.get<FlagDetail>(`/api/flags/${encodeURIComponent(id)}`);
  }

  stats(): Promise<StatsResponse> {
    return this.get<StatsResponse>('/api/stats');
  }

  searchTerms(query: string): Promise<TermSearchResponse> {
    return this.get<TermSearchResponse>('/api/vocabulary/terms', { query });
  }

  audit(since = 0): Promise<AuditResponse> {
    return this.get<AuditResponse>('/api/audit', { since });
  }

  async submitDecision(flagId: string, body: DecisionRequest): Promise<DecisionResponse> {
    const response = await fetch(`${this.baseUrl}/api/flags/${encodeURIComponent(flagId)}/decision`, {
      method: 'POST',
      headers: this.headers(true),
      body: JSON.stringify(body),
    });
    return this.handle<DecisionResponse>(response);
  }

  async addTerm(body: VocabularyAddition): Promise<{ term: string; revision: number }> {
    const response = await fetch(`${this.baseUrl}/api/vocabulary/terms`, {
      method: 'POST',
      headers: this.headers(true),
      body: JSON.stringify(body),
    });
    return this.handle<{ term: string; revision: number }>(response);
  }
}
