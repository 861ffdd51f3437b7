/** Payload shapes of the decision service API. The UI never invents numbers:
 * every weight it displays is copied verbatim from one of these. */

export type ModeName = "pessimistic" | "normal" | "optimistic";

export const MODE_NAMES: ModeName[] = ["pessimistic", "normal", "optimistic"];

export const MODE_TITLES: Record<ModeName, string> = {
  pessimistic: "Pessimistic",
  normal: "Normal",
  optimistic: "Optimistic",
};

/** Which component of the fuzzy judgment each mode reads. */
export const MODE_HINTS: Record<ModeName, string> = {
  pessimistic: "lower bounds of the fuzzy judgments",
  normal: "modal values of the fuzzy judgments",
  optimistic: "upper bounds of the fuzzy judgments",
};

export type ModeVectors = Record<ModeName, Record<string, number>>;

export interface SessionInfo {
  sessionId: string;
  decisionMakerId: string;
  cursor: number;
  totalQuestions: number;
  completeness: number;
  status: "InProgress" | "Complete";
}

export interface QuestionPayload {
  questionIndex: number;
  setIndex: number;
  level: string;
  context: string;
  contextLabel: string;
  firstNode: string;
  firstLabel: string;
  secondNode: string;
  secondLabel: string;
  promptText: string;
  options: string[];
}

export interface SetPreview {
  setIndex: number;
  context: string;
  level: string;
  localWeights: ModeVectors;
}

export interface AnswerResponse {
  answered: number;
  duplicate: boolean;
  setCompleted: SetPreview | null;
  cursor: number;
  totalQuestions: number;
  completeness: number;
  status: "InProgress" | "Complete";
}

export interface ScorecardPayload {
  decisionMakerId?: string;
  criteriaWeights: ModeVectors;
  localSubWeights: Record<string, ModeVectors>;
  globalSubWeights: ModeVectors;
  alternativeScores: ModeVectors;
  rankings: Record<ModeName, string[]>;
}

export interface ResultsPayload {
  panelSize: number;
  hierarchyHash: string;
  warnings: string[];
  report: {
    perDecisionMaker: ScorecardPayload[];
    aggregate: ScorecardPayload;
  };
}

export interface QuestionListPayload {
  totalQuestions: number;
  questions: QuestionPayload[];
}

export interface WhatIfRequest {
  decisionMakerId: string;
  set: number;
  first: string;
  second: string;
  favored: "first" | "second";
  term: string;
}

export interface WhatIfResponse {
  baseline: ModeVectors;
  whatif: ModeVectors;
  deltas: ModeVectors;
}

export interface ApiErrorBody {
  code: string;
  message: string;
  details: Record<string, unknown>;
}
