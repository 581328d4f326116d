// Payload shapes of the session service API.

export interface SessionConfig {
  n: number;
  labels?: string[] | null;
  mode?: 'original' | 'revised';
  policy?: 'asc' | 'desc';
  criticalize?: boolean;
  proper_guard?: boolean;
  stage_stop?: boolean;
}

export interface Progress {
  posed: number;
  yes: number;
  no: number;
  inferred_positive: number;
  inferred_negative: number;
  guard_rejected: number;
  total_queries: number;
  remaining: number;
}

export interface QueryView {
  id: number;
  if: number[];
  then: number;
  if_labels: string[];
  then_label: string;
  prompt: string;
}

export type NextResponse =
  | { done: false; query: QueryView; progress: Progress }
  | { done: true; reason: string; progress: Progress };

export interface AnswerResponse {
  accepted: boolean;
  duplicate: boolean;
  guard_rejected: boolean;
  progress: Progress;
}

export interface RuleDoc {
  if: number[];
  then: number;
}

export interface InferenceEvent {
  type: 'inference';
  query_id: number;
  query: RuleDoc;
  kind: 'posinf' | 'negainf' | 'unreached';
  witness?: RuleDoc;
  ts: number;
}

export interface StateResponse {
  id: string;
  mode: string;
  policy: string;
  n: number;
  labels: string[] | null;
  yes_rules: RuleDoc[];
  no_queries: RuleDoc[];
  progress: Progress;
  done: boolean;
  recent_inferences: InferenceEvent[];
}

export interface FamilyResponse {
  members: number[][];
  member_labels: string[][];
  total: number | null;
  truncated: boolean;
}
