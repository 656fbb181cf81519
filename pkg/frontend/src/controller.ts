/**
 * UI state and operations, decoupled from the DOM. The app layer renders
 * from this controller and forwards events to it; tests drive it directly.
 *
 * The service is the single source of truth: after every mutating call the
 * controller replaces its copy of the item with what the service returned
 * (or refetches on failure), so a reload reconstructs the same state.
 */

import { ApiClient, ApiError } from './api.js';
import type { ComposeState } from './compose.js';
import {
  addConcept,
  canSubmit,
  emptyCompose,
  removeConcept,
  setCandidateCount,
  setRole,
  toGenerateRequest,
} from './compose.js';
import type { Criterion, ReviewPanelState } from './review.js';
import { emptyReview, reviewComplete, setScore, toReviewBody } from './review.js';
import type { CefrLevel, ItemStatus, ItemView, RoleLabel } from './types.js';

export type StatusFilter = ItemStatus | 'ALL';

export class CurationController {
  compose: ComposeState = emptyCompose();
  review: ReviewPanelState = emptyReview();
  items: ItemView[] = [];
  filter: StatusFilter = 'ALL';
  current: ItemView | null = null;
  selectedCandidate = 0;
  exportText: string | null = null;
  composeError: string | null = null;
  error: string | null = null;
  busy = false;

  /** Resolves when the most recent async operation settles. */
  lastOp: Promise<void> = Promise.resolve();

  private listeners: Array<() => void> = [];

  constructor(
    private client: ApiClient,
    private reviewerId: string,
  ) {}

  subscribe(listener: () => void): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private emit(): void {
    for (const listener of this.listeners) {
      listener();
    }
  }

  // compose panel -----------------------------------------------------------

  addConcept(raw: string): void {
    this.composeError = addConcept(this.compose, raw);
    this.emit();
  }

  removeConcept(lemma: string): void {
    removeConcept(this.compose, lemma);
    this.composeError = null;
    this.emit();
  }

  setRole(lemma: string, role: RoleLabel | null): void {
    setRole(this.compose, lemma, role);
    this.emit();
  }

  setCefr(level: CefrLevel | null): void {
    this.compose.cefr = level;
    this.emit();
  }

  setCandidateCount(n: number): void {
    setCandidateCount(this.compose, n);
    this.emit();
  }

  setSeed(seed: number): void {
    this.compose.seed = Math.max(0, Math.round(seed));
    this.emit();
  }

  canGenerate(): boolean {
    return canSubmit(this.compose) && !this.busy;
  }

  // review panel ------------------------------------------------------------

  setScore(criterion: Criterion, value: number): void {
    this.composeError = null;
    const problem = setScore(this.review, criterion, value);
    if (problem !== null) {
      this.error = problem;
    }
    this.emit();
  }

  setNote(note: string): void {
    this.review.note = note;
    this.emit();
  }

  canReview(): boolean {
    return this.current !== null && reviewComplete(this.review) && !this.busy;
  }

  selectCandidate(index: number): void {
    if (this.current === null || index < 0 || index >= this.current.candidates.length) {
      return;
    }
    this.selectedCandidate = index;
    this.review = emptyReview();
    this.emit();
  }

  // service operations ------------------------------------------------------

  generate(): Promise<void> {
    if (!canSubmit(this.compose)) {
      this.composeError = 'fix the concept set before generating';
      this.emit();
      return this.lastOp;
    }
    return this.run(async () => {
      const response = await this.client.generate(toGenerateRequest(this.compose));
      this.current = await this.client.getItem(response.itemId);
      this.selectedCandidate = 0;
      this.review = emptyReview();
      await this.refreshItemsQuietly();
    });
  }

  openItem(itemId: string): Promise<void> {
    return this.run(async () => {
      this.current = await this.client.getItem(itemId);
      this.selectedCandidate = 0;
      this.review = emptyReview();
    });
  }

  setFilter(filter: StatusFilter): Promise<void> {
    this.filter = filter;
    return this.run(() => this.refreshItemsQuietly());
  }

  refreshItems(): Promise<void> {
    return this.run(() => this.refreshItemsQuietly());
  }

  submitReview(): Promise<void> {
    const item = this.current;
    if (item === null || !reviewComplete(this.review)) {
      this.error = 'set all three scores first';
      this.emit();
      return this.lastOp;
    }
    return this.run(async () => {
      const body = toReviewBody(this.review, this.reviewerId, this.selectedCandidate);
      const updated = await this.client.submitReview(item.itemId, body);
      this.replaceItem(updated);
      this.review = emptyReview();
    });
  }

  setStatus(status: ItemStatus): Promise<void> {
    const item = this.current;
    if (item === null) {
      return this.lastOp;
    }
    const previous = item.status;
    item.status = status; // optimistic; reconciled below
    this.emit();
    return this.run(async () => {
      try {
        const updated = await this.client.setStatus(item.itemId, status);
        this.replaceItem(updated);
      } catch (error) {
        item.status = previous;
        try {
          this.replaceItem(await this.client.getItem(item.itemId));
        } catch {
          // keep the reverted local copy when the refetch also fails
        }
        throw error;
      }
    });
  }

  exportAccepted(): Promise<void> {
    return this.run(async () => {
      this.exportText = await this.client.exportAccepted();
    });
  }

  // ---------------------------------------------------------------------------

  private replaceItem(updated: ItemView): void {
    if (this.current !== null && this.current.itemId === updated.itemId) {
      this.current = updated;
    }
    this.items = this.items.map((item) => (item.itemId === updated.itemId ? updated : item));
  }

  private async refreshItemsQuietly(): Promise<void> {
    this.items = await this.client.listItems(this.filter === 'ALL' ? undefined : this.filter);
  }

  private run(op: () => Promise<void>): Promise<void> {
    this.busy = true;
    this.error = null;
    this.emit();
    const settled = op()
      .catch((error: unknown) => {
        this.error = error instanceof ApiError ? error.message : String(error);
      })
      .finally(() => {
        this.busy = false;
        this.emit();
      });
    this.lastOp = settled;
    return settled;
  }
}
