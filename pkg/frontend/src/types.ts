/**
 * Wire types for the curation service. Shapes mirror the JSON the service
 * returns; the UI never builds control-code strings itself.
 */

export const CEFR_LEVELS = ['A1', 'A2', 'B1', 'B2', 'C1', 'C2'] as const;
export type CefrLevel = (typeof CEFR_LEVELS)[number];

export const ROLE_LABELS = ['V', 'ARG0', 'ARG1', 'ARG2', 'ARGM', 'OTHER'] as const;
export type RoleLabel = (typeof ROLE_LABELS)[number];

export const ITEM_STATUSES = ['PENDING', 'ACCEPTED', 'REJECTED'] as const;
export type ItemStatus = (typeof ITEM_STATUSES)[number];

export interface MetricSnapshot {
  coverage: number;
  length: number;
  diversity: number;
}

export interface CandidateView {
  text: string;
  metrics: MetricSnapshot;
}

export interface ReviewView {
  reviewerId: string;
  grammaticality: number;
  complexity: number;
  plausibility: number;
  candidateIndex: number;
  timestamp: number;
  note?: string | null;
}

export interface MeanScores {
  grammaticality: number;
  complexity: number;
  plausibility: number;
}

export interface ItemRequest {
  concepts: string[];
  cefr?: CefrLevel | null;
  roles?: Record<string, RoleLabel> | null;
}

export interface ItemView {
  itemId: string;
  request: ItemRequest;
  candidates: CandidateView[];
  status: ItemStatus;
  reviews: ReviewView[];
  meanScores: MeanScores | null;
}

export interface GenerateRequest {
  concepts: string[];
  cefr?: CefrLevel;
  roles?: Record<string, RoleLabel>;
  n: number;
  seed?: number;
}

export interface GenerateResponse {
  itemId: string;
  candidates: CandidateView[];
}

export interface ReviewBody {
  reviewerId: string;
  grammaticality: number;
  complexity: number;
  plausibility: number;
  candidateIndex?: number;
  note?: string;
}

export interface FieldError {
  field: string;
  message: string;
}
