/**
 * Wire types mirroring the service's interchange encoding.
 *
 * Probabilities are decimal strings end to end. The UI never parses them
 * into numbers except for display scaling (bar widths, gauge colors);
 * every figure shown to the user is the service's string, verbatim.
 */

export type Prob = string;

export interface MarginalTarget {
  kind: 'marginal';
  variable: string;
  state: string;
}

export interface ConditionalTarget {
  kind: 'conditional';
  child: string;
  child_state: string;
  given: [string, string][];
}

export type Target = MarginalTarget | ConditionalTarget;

export interface Question {
  target: Target;
  prompt: string;
  rare_event: boolean;
}

export interface QuestionnaireResponse {
  questions: Question[];
}

export interface PairCheck {
  child: string;
  child_state: string;
  parent: string;
  computed: Prob | null;
  stated: Prob | null;
  residual: Prob | null;
  hull: [Prob, Prob] | null;
  in_hull: boolean | null;
  degenerate_boundary: boolean | null;
  hull_flag: boolean;
  inconsistent: boolean;
  missing: string[];
}

export interface ConsistencyResponse {
  tolerance: Prob;
  ok: boolean;
  pairs: PairCheck[];
  missing: PairCheck[];
}

export interface AnswerResult {
  target?: Target;
  accepted: boolean;
  active?: boolean;
  pairs?: PairCheck[];
  error?: ServiceError;
}

export interface AnswersResponse {
  answers: AnswerResult[];
}

export interface ActionProposal {
  id: string;
  kind: 'replace_conditional' | 'rescale_ratios' | 'replace_marginal';
  child: string;
  child_state: string;
  parent: string | null;
  rationale: string;
  rule: string;
  cap_bound: boolean;
  parent_state?: string;
  old_value?: Prob;
  new_value?: Prob;
  scale?: Prob;
  old_vector?: Record<string, Prob>;
  new_vector?: Record<string, Prob>;
  donor_parent?: string;
}

export interface ReconcileResponse {
  proposals: ActionProposal[];
  notes: string[];
  clean_after_all: boolean;
}

export interface AcceptResponse {
  applied: ActionProposal;
  consistency: ConsistencyResponse;
}

export interface PosteriorResponse {
  variable: string;
  distribution: Record<string, Prob>;
  evidence: Record<string, string>;
  elimination_order: string[];
}

export interface WhatIfResponse {
  base: PosteriorResponse;
  scenarios: Record<string, PosteriorResponse>;
}

export interface MaintenanceActionSpec {
  task: { id: string; states: string[]; description?: string };
  prior: Record<string, Prob>;
  target: string;
  table: Record<string, Record<string, Prob>>;
}

export interface ScenarioSpec {
  name: string;
  actions: MaintenanceActionSpec[];
}

export interface ServiceError {
  code: string;
  message: string;
  [extra: string]: unknown;
}

export interface ModelVariable {
  id: string;
  states: string[];
  description?: string;
  group?: string | null;
}

export interface ModelDocument {
  format: string;
  version: number;
  variables: ModelVariable[];
  edges: [string, string][];
  [rest: string]: unknown;
}
