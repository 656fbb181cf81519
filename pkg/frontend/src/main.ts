/**
 * Browser entry point. The service origin defaults to the page's own and
 * can be overridden with ?api=http://host:port when the page is served
 * separately from the API.
 */

import { ApiClient } from './api.js';
import { mountApp } from './app.js';
import { CurationController } from './controller.js';

const params = new URLSearchParams(window.location.search);
const baseUrl = params.get('api') ?? '';
const reviewerId = params.get('reviewer') ?? 'reviewer-1';

const controller = new CurationController(new ApiClient(baseUrl), reviewerId);
const root = document.getElementById('app');
if (root === null) {
  throw new Error('missing #app element');
}
mountApp(root, controller);
void controller.refreshItems();
