/**
 * End-to-end curation round trip against a live toy-model service (started
 * by the global setup): compose {dog, chase, cat} with roles through the
 * mounted page, generate three candidates, review (4,2,4), accept, export,
 * and confirm the persisted record matches what the page showed.
 */

import { readFileSync } from 'node:fs';
import * as path from 'node:path';
import { fileURLToPath } from 'node:url';

import { beforeEach, describe, expect, it } from 'vitest';

import { ApiClient, ApiError } from '../src/api.js';
import { mountApp } from '../src/app.js';
import { CurationController } from '../src/controller.js';
import type { RoleLabel } from '../src/types.js';

const serviceFile = path.resolve(
  path.dirname(fileURLToPath(import.meta.url)),
  '..',
  '.cache',
  'service.json',
);
const { baseUrl } = JSON.parse(readFileSync(serviceFile, 'utf8')) as { baseUrl: string };

function mount(): CurationController {
  document.body.innerHTML = '<div id="app"></div>';
  const controller = new CurationController(new ApiClient(baseUrl), 'reviewer-1');
  mountApp(document.getElementById('app')!, controller);
  return controller;
}

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) {
    throw new Error(`missing #${id}`);
  }
  return node as T;
}

function addConceptThroughUi(lemma: string): void {
  const input = byId<HTMLInputElement>('concept-input');
  input.value = lemma;
  byId<HTMLButtonElement>('add-concept').click();
}

function setRoleThroughUi(lemma: string, role: RoleLabel): void {
  const select = document.querySelector<HTMLSelectElement>(`[data-role-for="${lemma}"]`);
  expect(select, `role select for ${lemma}`).not.toBeNull();
  select!.value = role;
  select!.dispatchEvent(new Event('change'));
}

function setScoreThroughUi(criterion: string, value: number): void {
  const radio = byId<HTMLInputElement>(`score-${criterion}-${value}`);
  radio.checked = true;
  radio.dispatchEvent(new Event('change'));
}

describe('compose gating in the page', () => {
  beforeEach(() => {
    mount();
  });

  it('keeps generate disabled below two concepts and says why', () => {
    expect(byId<HTMLButtonElement>('generate').disabled).toBe(true);
    addConceptThroughUi('dog');
    expect(byId<HTMLButtonElement>('generate').disabled).toBe(true);
    expect(byId('compose-error').textContent).toMatch(/at least 2 concepts \(have 1\)/);
  });

  it('refuses a sixth concept', () => {
    for (const lemma of ['a', 'b', 'c', 'd', 'e']) {
      addConceptThroughUi(lemma);
    }
    expect(byId<HTMLButtonElement>('generate').disabled).toBe(false);
    addConceptThroughUi('f');
    expect(byId('compose-error').textContent).toMatch(/at most 5/);
    expect(document.querySelectorAll('#concept-list li')).toHaveLength(5);
  });

  it('offers exactly the fixed role inventory per concept', () => {
    addConceptThroughUi('dog');
    const options = Array.from(
      document.querySelectorAll<HTMLOptionElement>('[data-role-for="dog"] option'),
    ).map((o) => o.value);
    expect(options).toEqual(['', 'V', 'ARG0', 'ARG1', 'ARG2', 'ARGM', 'OTHER']);
  });
});

describe('curation round trip', () => {
  it('compose, generate, review, accept, export', async () => {
    const controller = mount();

    addConceptThroughUi('dog');
    addConceptThroughUi('chase');
    addConceptThroughUi('cat');
    setRoleThroughUi('dog', 'ARG0');
    setRoleThroughUi('chase', 'V');
    setRoleThroughUi('cat', 'ARG1');
    const count = byId<HTMLInputElement>('count-input');
    count.value = '3';
    count.dispatchEvent(new Event('change'));

    expect(byId<HTMLButtonElement>('generate').disabled).toBe(false);
    byId<HTMLButtonElement>('generate').click();
    await controller.lastOp;
    expect(controller.error).toBeNull();

    const item = controller.current;
    expect(item).not.toBeNull();
    expect(item!.candidates).toHaveLength(3);
    expect(item!.request.roles).toEqual({ cat: 'ARG1', chase: 'V', dog: 'ARG0' });
    const itemId = item!.itemId;

    // candidates are rendered with metric badges
    const rows = document.querySelectorAll('#candidate-list li');
    expect(rows).toHaveLength(3);
    const badges = rows[0]!.querySelectorAll('.badge');
    expect(badges[0]!.textContent).toMatch(/% coverage$/);
    expect(badges[1]!.textContent).toMatch(/words$/);
    expect(badges[2]!.textContent).toMatch(/^div /);

    // review stays gated until all three scores are in
    expect(byId<HTMLButtonElement>('submit-review').disabled).toBe(true);
    setScoreThroughUi('grammaticality', 4);
    setScoreThroughUi('complexity', 2);
    expect(byId<HTMLButtonElement>('submit-review').disabled).toBe(true);
    setScoreThroughUi('plausibility', 4);
    expect(byId<HTMLButtonElement>('submit-review').disabled).toBe(false);
    byId<HTMLButtonElement>('submit-review').click();
    await controller.lastOp;
    expect(controller.error).toBeNull();
    expect(byId('mean-scores').textContent).toBe(
      'grammaticality: 4.0  complexity: 2.0  plausibility: 4.0',
    );

    // the persisted record shows the review with correct means
    const client = new ApiClient(baseUrl);
    const persisted = await client.getItem(itemId);
    expect(persisted.reviews).toHaveLength(1);
    expect(persisted.reviews[0]).toMatchObject({
      reviewerId: 'reviewer-1',
      grammaticality: 4,
      complexity: 2,
      plausibility: 4,
      candidateIndex: 0,
    });
    expect(persisted.meanScores).toEqual({ grammaticality: 4, complexity: 2, plausibility: 4 });

    byId<HTMLButtonElement>('accept').click();
    await controller.lastOp;
    expect(controller.error).toBeNull();
    expect(byId('status-badge').textContent).toBe('ACCEPTED');
    expect(byId<HTMLButtonElement>('accept').disabled).toBe(true);

    byId<HTMLButtonElement>('export').click();
    await controller.lastOp;
    const exportText = byId('export-view').textContent ?? '';
    const exported = exportText
      .split('\n')
      .filter((line) => line.trim() !== '')
      .map((line) => JSON.parse(line) as Record<string, unknown>);
    expect(exported.length).toBeGreaterThan(0);
    const winning = item!.candidates[0]!.text;
    const match = exported.find((row) => row.sentence === winning);
    expect(match, `export should contain ${JSON.stringify(winning)}`).toBeDefined();
    expect(match).toMatchObject({ source: 'curation' });
    expect(Array.isArray(match!.concepts)).toBe(true);
    expect((match!.concepts as string[]).length).toBeGreaterThan(0);
    expect(typeof match!.id).toBe('string');

    // a fresh page reconstructs the same state from the service
    const reloaded = mount();
    await reloaded.refreshItems();
    const listed = reloaded.items.find((view) => view.itemId === itemId);
    expect(listed?.status).toBe('ACCEPTED');
    await reloaded.openItem(itemId);
    expect(reloaded.current?.meanScores).toEqual({
      grammaticality: 4,
      complexity: 2,
      plausibility: 4,
    });
  });

  it('surfaces service-side validation as field errors', async () => {
    const client = new ApiClient(baseUrl);
    const error = (await client
      .generate({ concepts: ['dog'], n: 1 })
      .catch((e: unknown) => e)) as ApiError;
    expect(error).toBeInstanceOf(ApiError);
    expect(error.status).toBe(400);
    expect(error.fields[0]?.field).toBe('concepts');
  });

  it('rejects a second status transition', async () => {
    const controller = mount();
    addConceptThroughUi('cow');
    addConceptThroughUi('pull');
    byId<HTMLButtonElement>('generate').click();
    await controller.lastOp;
    expect(controller.error).toBeNull();
    const itemId = controller.current!.itemId;

    byId<HTMLButtonElement>('reject').click();
    await controller.lastOp;
    expect(byId('status-badge').textContent).toBe('REJECTED');

    const client = new ApiClient(baseUrl);
    const error = (await client.setStatus(itemId, 'ACCEPTED').catch((e: unknown) => e)) as ApiError;
    expect(error.status).toBe(409);
  });
});
