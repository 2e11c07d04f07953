// View-model types mirroring the curator-api JSON payloads one-to-one.
// The UI never invents tuple values: everything rendered comes from the
// last server response.

export type FlagReason =
  | 'MISMATCH'
  | 'UNKNOWN_TERM'
  | 'RESTRICTION_VIOLATION'
  | 'MISCLASSIFIED_SCHEME'
  | 'MULTIWORD_SUSPECT';

export type FlagStatus = 'open' | 'accepted' | 'corrected' | 'rejected';

export interface QuantityDto {
  magnitude: string;
  unit: string | null;
  approximate?: boolean;
}

export interface TupleDto {
  subject: string;
  property: string;
  value: string | QuantityDto;
  source: 'CARD' | 'LLM';
  quantity?: QuantityDto;
  raw_property?: string;
}

export interface CandidateDto {
  concept?: string;
  scheme?: string;
  label?: string;
  kind?: string;
  witness?: string;
  categories?: string[];
}

export interface FlagSummary {
  id: string;
  entry_id: string;
  reason: FlagReason;
  status: FlagStatus;
  created_at: string;
  detail: string;
  tuple_count: number;
}

export interface FlagPage {
  items: FlagSummary[];
  total: number;
  page: number;
  page_size: number;
}

export interface RecipeContext {
  entry_id: string;
  recipe_name?: string;
  card: TupleDto[];
  llm: TupleDto[];
}

export interface FlagDetail {
  id: string;
  entry_id: string;
  reason: FlagReason;
  status: FlagStatus;
  created_at: string;
  detail: string;
  tuples: TupleDto[];
  candidates: CandidateDto[];
  resolution: Record<string, unknown> | null;
  recipe_context: RecipeContext;
}

export interface CorrectedTuple {
  property: string;
  value: string;
  source?: 'CARD' | 'LLM';
}

export interface VocabularyAddition {
  scheme: string;
  pref_label: string;
  language?: string;
  alt_labels?: { text: string; language?: string }[];
  note?: string;
}

export interface DecisionRequest {
  action: 'accept' | 'correct' | 'reject';
  curator: string;
  corrected_tuple?: CorrectedTuple;
  vocabulary_addition?: VocabularyAddition;
  note?: string;
}

export interface RescoreSummary {
  entry_id: string;
  total: number;
  flags: unknown[];
}

export interface DecisionResponse {
  flag: FlagDetail;
  side_effects: {
    vocabulary_revision?: number;
    vocabulary_term?: string;
    rescored: RescoreSummary[];
  };
}

export interface StatsResponse {
  flags: {
    open: Record<string, number>;
    resolved: Record<string, number>;
    open_total: number;
    resolved_total: number;
  };
  vocabulary_revision: number;
  graph: {
    recipe_count: number;
    ingredient_node_count: number;
    category_count: number;
    triple_count: number;
  } | null;
}

export interface TermSearchResponse {
  items: { concept: string; scheme: string; pref_label: string; match_kind: string }[];
  total: number;
}

export interface AuditResponse {
  events: { seq: number; kind: string; payload: unknown; timestamp: string }[];
}

export interface ApiErrorBody {
  code: string;
  message: string;
  details?: unknown;
}

export interface QueueFilters {
  status?: FlagStatus;
  reason?: FlagReason;
  page: number;
  page_size: number;
}
