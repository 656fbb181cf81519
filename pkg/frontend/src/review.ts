/**
 * Review-panel state: three 4-point criteria plus a free-text note.
 *
 * The criteria and scale are fixed so exported review data stays
 * comparable across reviewers and sessions.
 */

import type { ReviewBody } from './types.js';

export const CRITERIA = ['grammaticality', 'complexity', 'plausibility'] as const;
export type Criterion = (typeof CRITERIA)[number];

export const SCALE = [1, 2, 3, 4] as const;

export interface ReviewPanelState {
  scores: Partial<Record<Criterion, number>>;
  note: string;
}

export function emptyReview(): ReviewPanelState {
  return { scores: {}, note: '' };
}

/** Returns an error message, or null when the score was recorded. */
export function setScore(state: ReviewPanelState, criterion: Criterion, value: number): string | null {
  if (!SCALE.includes(value as (typeof SCALE)[number])) {
    return `score must be between ${SCALE[0]} and ${SCALE[SCALE.length - 1]}`;
  }
  state.scores[criterion] = value;
  return null;
}

/** Submission stays disabled until every criterion has a score. */
export function reviewComplete(state: ReviewPanelState): boolean {
  return CRITERIA.every((criterion) => state.scores[criterion] !== undefined);
}

export function toReviewBody(
  state: ReviewPanelState,
  reviewerId: string,
  candidateIndex: number,
): ReviewBody {
  if (!reviewComplete(state)) {
    throw new Error('all three scores are required');
  }
  const body: ReviewBody = {
    reviewerId,
    grammaticality: state.scores.grammaticality!,
    complexity: state.scores.complexity!,
    plausibility: state.scores.plausibility!,
    candidateIndex,
  };
  const note = state.note.trim();
  if (note) {
    body.note = note;
  }
  return body;
}
