/**
 * Typed client for the curation service HTTP API.
 */

import type {
  FieldError,
  GenerateRequest,
  GenerateResponse,
  ItemStatus,
  ItemView,
  ReviewBody,
} from './types.js';

export class ApiError extends Error {
  status: number;
  fields: FieldError[];
  retriable: boolean;

  constructor(status: number, message: string, fields: FieldError[] = [], retriable = false) {
    super(message);
    this.name = 'ApiError';
    this.status = status;
    this.fields = fields;
    this.retriable = retriable;
  }
}

type FetchFn = typeof fetch;

export class ApiClient {
  private baseUrl: string;
  private fetchFn: FetchFn;

  constructor(baseUrl = '', fetchFn: FetchFn = (...args) => fetch(...args)) {
    this.baseUrl = baseUrl.replace(/\/+$/, '');
    this.fetchFn = fetchFn;
  }

  async generate(body: GenerateRequest): Promise<GenerateResponse> {
    return this.requestJson('POST', '/generate', body);
  }

  async listItems(status?: ItemStatus): Promise<ItemView[]> {
    const query = status ? `?status=${encodeURIComponent(status)}` : '';
    const body = await this.requestJson<{ items: ItemView[] }>('GET', `/items${query}`);
    return body.items;
  }

  async getItem(itemId: string): Promise<ItemView> {
    return this.requestJson('GET', `/items/${encodeURIComponent(itemId)}`);
  }

  async submitReview(itemId: string, review: ReviewBody): Promise<ItemView> {
    return this.requestJson('POST', `/items/${encodeURIComponent(itemId)}/review`, review);
  }

  async setStatus(itemId: string, status: ItemStatus): Promise<ItemView> {
    return this.requestJson('POST', `/items/${encodeURIComponent(itemId)}/status`, { status });
  }

  /** Accepted items as newline-delimited JSON, verbatim from the service. */
  async exportAccepted(): Promise<string> {
    const response = await this.fetchFn(`${this.baseUrl}/export/accepted`);
    if (!response.ok) {
      throw await this.toError(response);
    }
    return response.text();
  }

  private async requestJson<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, {
      method,
      headers: body === undefined ? undefined : { 'Content-Type': 'application/json' },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      throw await this.toError(response);
    }
    return (await response.json()) as T;
  }

  private async toError(response: Response): Promise<ApiError> {
    let detail: unknown;
    try {
      detail = (await response.json()) as { detail?: unknown; retriable?: boolean };
    } catch {
      return new ApiError(response.status, response.statusText || `HTTP ${response.status}`);
    }
    const payload = detail as { detail?: unknown; retriable?: boolean };
    if (Array.isArray(payload.detail)) {
      const fields = payload.detail as FieldError[];
      const message = fields.map((f) => `${f.field}: ${f.message}`).join('; ');
      return new ApiError(response.status, message || 'validation failed', fields);
    }
    const message = typeof payload.detail === 'string' ? payload.detail : `HTTP ${response.status}`;
    return new ApiError(response.status, message, [], payload.retriable === true);
  }
}
