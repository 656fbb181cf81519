/**
 * Compose-panel state: the editable concept set and its controls.
 *
 * Pure functions over a plain state object so the rules are testable
 * without a DOM. Submission is gated on 2-5 concepts; roles are optional
 * per concept (unset concepts are left out of the request and the service
 * defaults them).
 */

import type { CefrLevel, GenerateRequest, RoleLabel } from './types.js';
import { ROLE_LABELS } from './types.js';

export const MIN_CONCEPTS = 2;
export const MAX_CONCEPTS = 5;
export const MAX_CANDIDATES = 10;

const CONCEPT_PATTERN = /^[a-z][a-z0-9-]*$/;

export interface ComposeState {
  concepts: string[];
  roles: Partial<Record<string, RoleLabel>>;
  cefr: CefrLevel | null;
  n: number;
  seed: number;
}

export function emptyCompose(): ComposeState {
  return { concepts: [], roles: {}, cefr: null, n: 3, seed: 0 };
}

/** Normalized lemma, or null when the raw input is not usable as one. */
export function normalizeConcept(raw: string): string | null {
  const lemma = raw.trim().toLowerCase();
  return CONCEPT_PATTERN.test(lemma) ? lemma : null;
}

/** Returns an error message, or null when the concept was added. */
export function addConcept(state: ComposeState, raw: string): string | null {
  const lemma = normalizeConcept(raw);
  if (lemma === null) {
    return 'enter a single lowercase lemma';
  }
  if (state.concepts.includes(lemma)) {
    return `"${lemma}" is already in the set`;
  }
  if (state.concepts.length >= MAX_CONCEPTS) {
    return `at most ${MAX_CONCEPTS} concepts`;
  }
  state.concepts.push(lemma);
  return null;
}

export function removeConcept(state: ComposeState, lemma: string): void {
  state.concepts = state.concepts.filter((c) => c !== lemma);
  delete state.roles[lemma];
}

export function setRole(state: ComposeState, lemma: string, role: RoleLabel | null): void {
  if (!state.concepts.includes(lemma)) {
    return;
  }
  if (role === null) {
    delete state.roles[lemma];
    return;
  }
  if (!ROLE_LABELS.includes(role)) {
    throw new Error(`unknown role: ${role}`);
  }
  state.roles[lemma] = role;
}

export function setCandidateCount(state: ComposeState, n: number): void {
  state.n = Math.min(MAX_CANDIDATES, Math.max(1, Math.round(n)));
}

/** Everything stopping submission, in display order. Empty means ready. */
export function composeProblems(state: ComposeState): string[] {
  const problems: string[] = [];
  if (state.concepts.length < MIN_CONCEPTS) {
    problems.push(`add at least ${MIN_CONCEPTS} concepts (have ${state.concepts.length})`);
  }
  if (state.concepts.length > MAX_CONCEPTS) {
    problems.push(`at most ${MAX_CONCEPTS} concepts (have ${state.concepts.length})`);
  }
  return problems;
}

export function canSubmit(state: ComposeState): boolean {
  return composeProblems(state).length === 0;
}

export function toGenerateRequest(state: ComposeState): GenerateRequest {
  const request: GenerateRequest = {
    concepts: [...state.concepts],
    n: state.n,
    seed: state.seed,
  };
  if (state.cefr !== null) {
    request.cefr = state.cefr;
  }
  const assigned = Object.entries(state.roles).filter(
    (entry): entry is [string, RoleLabel] =>
      entry[1] !== undefined && state.concepts.includes(entry[0]),
  );
  if (assigned.length > 0) {
    request.roles = Object.fromEntries(assigned);
  }
  return request;
}
