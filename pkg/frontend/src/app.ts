/**
 * DOM layer: builds the page skeleton once, re-renders the dynamic parts
 * whenever the controller emits. All behavior lives in the controller.
 */

import { composeProblems } from './compose.js';
import type { CurationController, StatusFilter } from './controller.js';
import type { Criterion } from './review.js';
import { CRITERIA, SCALE } from './review.js';
import type { MetricSnapshot, RoleLabel } from './types.js';
import { CEFR_LEVELS, ITEM_STATUSES, ROLE_LABELS } from './types.js';

/** Badge strings for one candidate's metric snapshot. */
export function metricBadges(metrics: MetricSnapshot): string[] {
  return [
    `${Math.round(metrics.coverage)}% coverage`,
    `${metrics.length} words`,
    `div ${metrics.diversity.toFixed(3)}`,
  ];
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: Array<Node | string>
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  node.append(...children);
  return node;
}

function option(value: string, label = value): HTMLOptionElement {
  return el('option', { value }, label);
}

export function mountApp(root: HTMLElement, controller: CurationController): void {
  // --- compose panel ---------------------------------------------------------
  const conceptInput = el('input', {
    id: 'concept-input',
    type: 'text',
    placeholder: 'lemma, e.g. dog',
  });
  const addButton = el('button', { id: 'add-concept' }, 'Add');
  const conceptList = el('ul', { id: 'concept-list' });
  const composeError = el('div', { id: 'compose-error', class: 'error' });

  const cefrSelect = el('select', { id: 'cefr-select' }, option('', 'no level'));
  for (const level of CEFR_LEVELS) {
    cefrSelect.append(option(level));
  }
  const countInput = el('input', { id: 'count-input', type: 'number', min: '1', max: '10' });
  countInput.value = '3';
  const seedInput = el('input', { id: 'seed-input', type: 'number', min: '0' });
  seedInput.value = '0';
  const generateButton = el('button', { id: 'generate' }, 'Generate');

  // --- current item ----------------------------------------------------------
  const itemTitle = el('span', { id: 'item-title' }, 'no item');
  const statusBadge = el('span', { id: 'status-badge', class: 'badge' });
  const acceptButton = el('button', { id: 'accept' }, 'Accept');
  const rejectButton = el('button', { id: 'reject' }, 'Reject');
  const candidateList = el('ol', { id: 'candidate-list' });

  // --- review panel ----------------------------------------------------------
  const scoreGroups = new Map<Criterion, HTMLElement>();
  const reviewPanel = el('div', { id: 'review-panel' });
  for (const criterion of CRITERIA) {
    const group = el('fieldset', { id: `score-${criterion}` }, el('legend', {}, criterion));
    for (const value of SCALE) {
      const radio = el('input', {
        type: 'radio',
        name: `score-${criterion}`,
        id: `score-${criterion}-${value}`,
        value: String(value),
      });
      radio.addEventListener('change', () => controller.setScore(criterion, value));
      group.append(el('label', {}, radio, String(value)));
    }
    scoreGroups.set(criterion, group);
    reviewPanel.append(group);
  }
  const noteInput = el('textarea', { id: 'note-input', placeholder: 'note (optional)' });
  const reviewButton = el('button', { id: 'submit-review' }, 'Submit review');
  const meanScoresDiv = el('div', { id: 'mean-scores' });
  reviewPanel.append(noteInput, reviewButton, meanScoresDiv);

  // --- item list and export --------------------------------------------------
  const filterSelect = el('select', { id: 'filter-select' }, option('ALL', 'all'));
  for (const status of ITEM_STATUSES) {
    filterSelect.append(option(status));
  }
  const refreshButton = el('button', { id: 'refresh' }, 'Refresh');
  const itemList = el('ul', { id: 'item-list' });
  const exportButton = el('button', { id: 'export' }, 'Export accepted');
  const exportView = el('pre', { id: 'export-view' });
  const errorBar = el('div', { id: 'error-bar', class: 'error' });

  root.append(
    el('h1', {}, 'curation'),
    errorBar,
    el(
      'section',
      { id: 'compose-panel' },
      el('h2', {}, 'compose'),
      el('div', {}, conceptInput, addButton),
      conceptList,
      composeError,
      el('div', {}, el('label', {}, 'CEFR ', cefrSelect), el('label', {}, ' candidates ', countInput), el('label', {}, ' seed ', seedInput)),
      generateButton,
    ),
    el(
      'section',
      { id: 'item-panel' },
      el('h2', {}, 'current item'),
      el('div', {}, itemTitle, ' ', statusBadge, ' ', acceptButton, rejectButton),
      candidateList,
      reviewPanel,
    ),
    el(
      'section',
      { id: 'list-panel' },
      el('h2', {}, 'items'),
      el('div', {}, filterSelect, refreshButton),
      itemList,
    ),
    el('section', { id: 'export-panel' }, el('h2', {}, 'export'), exportButton, exportView),
  );

  // --- events ----------------------------------------------------------------
  const submitConcept = () => {
    controller.addConcept(conceptInput.value);
    if (controller.composeError === null) {
      conceptInput.value = '';
    }
  };
  addButton.addEventListener('click', submitConcept);
  conceptInput.addEventListener('keydown', (event) => {
    if (event.key === 'Enter') {
      submitConcept();
    }
  });
  cefrSelect.addEventListener('change', () => {
    const value = cefrSelect.value;
    controller.setCefr(value === '' ? null : (value as (typeof CEFR_LEVELS)[number]));
  });
  countInput.addEventListener('change', () => controller.setCandidateCount(Number(countInput.value)));
  seedInput.addEventListener('change', () => controller.setSeed(Number(seedInput.value)));
  generateButton.addEventListener('click', () => void controller.generate());
  acceptButton.addEventListener('click', () => void controller.setStatus('ACCEPTED'));
  rejectButton.addEventListener('click', () => void controller.setStatus('REJECTED'));
  noteInput.addEventListener('input', () => controller.setNote(noteInput.value));
  reviewButton.addEventListener('click', () => void controller.submitReview());
  filterSelect.addEventListener('change', () => void controller.setFilter(filterSelect.value as StatusFilter));
  refreshButton.addEventListener('click', () => void controller.refreshItems());
  exportButton.addEventListener('click', () => void controller.exportAccepted());

  // --- render ----------------------------------------------------------------
  const render = () => {
    conceptList.replaceChildren(
      ...controller.compose.concepts.map((lemma) => {
        const roleSelect = el('select', { 'data-role-for': lemma }, option('', 'no role'));
        for (const role of ROLE_LABELS) {
          roleSelect.append(option(role));
        }
        roleSelect.value = controller.compose.roles[lemma] ?? '';
        roleSelect.addEventListener('change', () => {
          controller.setRole(lemma, roleSelect.value === '' ? null : (roleSelect.value as RoleLabel));
        });
        const remove = el('button', { 'data-remove': lemma }, 'x');
        remove.addEventListener('click', () => controller.removeConcept(lemma));
        return el('li', { class: 'concept' }, lemma, ' ', roleSelect, remove);
      }),
    );
    composeError.textContent =
      controller.composeError ?? composeProblems(controller.compose).join('; ');
    errorBar.textContent = controller.error ?? '';
    generateButton.disabled = !controller.canGenerate();

    const item = controller.current;
    itemTitle.textContent = item === null ? 'no item' : item.itemId;
    statusBadge.textContent = item === null ? '' : item.status;
    acceptButton.disabled = item === null || item.status !== 'PENDING' || controller.busy;
    rejectButton.disabled = item === null || item.status !== 'PENDING' || controller.busy;

    candidateList.replaceChildren(
      ...(item === null
        ? []
        : item.candidates.map((candidate, index) => {
            const badges = metricBadges(candidate.metrics).map((text) =>
              el('span', { class: 'badge' }, text),
            );
            const row = el(
              'li',
              {
                class: index === controller.selectedCandidate ? 'candidate selected' : 'candidate',
                'data-candidate': String(index),
              },
              el('span', { class: 'text' }, candidate.text),
              ...badges,
            );
            row.addEventListener('click', () => controller.selectCandidate(index));
            return row;
          })),
    );

    for (const criterion of CRITERIA) {
      const group = scoreGroups.get(criterion)!;
      for (const value of SCALE) {
        const radio = group.querySelector<HTMLInputElement>(`#score-${criterion}-${value}`)!;
        radio.checked = controller.review.scores[criterion] === value;
      }
    }
    reviewButton.disabled = !controller.canReview();
    const means = item?.meanScores ?? null;
    meanScoresDiv.textContent =
      means === null
        ? 'no reviews yet'
        : CRITERIA.map((c) => `${c}: ${means[c].toFixed(1)}`).join('  ');

    itemList.replaceChildren(
      ...controller.items.map((view) => {
        const row = el(
          'li',
          { 'data-item': view.itemId },
          `${view.itemId} [${view.status}] ${view.request.concepts.join(', ')}`,
        );
        row.addEventListener('click', () => void controller.openItem(view.itemId));
        return row;
      }),
    );

    exportView.textContent = controller.exportText ?? '';
  };

  controller.subscribe(render);
  render();
}
