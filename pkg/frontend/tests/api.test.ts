import { describe, expect, it } from 'vitest';

import { ApiClient, ApiError } from '../src/api.js';

interface Captured {
  url: string;
  method: string;
  body: unknown;
}

function stubClient(status: number, payload: unknown): { client: ApiClient; calls: Captured[] } {
  const calls: Captured[] = [];
  const fetchFn = (async (input: RequestInfo | URL, init?: RequestInit) => {
    calls.push({
      url: String(input),
      method: init?.method ?? 'GET',
      body: init?.body ? JSON.parse(String(init.body)) : undefined,
    });
    return new Response(JSON.stringify(payload), {
      status,
      headers: { 'Content-Type': 'application/json' },
    });
  }) as typeof fetch;
  return { client: new ApiClient('http://svc:1234/', fetchFn), calls };
}

describe('api client', () => {
  it('posts generate requests to the right path with a JSON body', async () => {
    const { client, calls } = stubClient(200, { itemId: 'item-000001', candidates: [] });
    const response = await client.generate({ concepts: ['dog', 'chase'], n: 3, seed: 5 });
    expect(response.itemId).toBe('item-000001');
    expect(calls[0]).toEqual({
      url: 'http://svc:1234/generate',
      method: 'POST',
      body: { concepts: ['dog', 'chase'], n: 3, seed: 5 },
    });
  });

  it('filters the item list by status', async () => {
    const { client, calls } = stubClient(200, { items: [] });
    await client.listItems('ACCEPTED');
    expect(calls[0]?.url).toBe('http://svc:1234/items?status=ACCEPTED');
    expect(calls[0]?.method).toBe('GET');
  });

  it('surfaces field-level validation errors', async () => {
    const { client } = stubClient(400, {
      detail: [{ field: 'concepts', message: 'List should have at least 2 items' }],
    });
    const error = await client.generate({ concepts: ['dog'], n: 1 }).catch((e: unknown) => e);
    expect(error).toBeInstanceOf(ApiError);
    const apiError = error as ApiError;
    expect(apiError.status).toBe(400);
    expect(apiError.fields[0]?.field).toBe('concepts');
    expect(apiError.message).toMatch(/concepts: List should have at least 2/);
  });

  it('marks retriable generation failures', async () => {
    const { client } = stubClient(503, { detail: 'generation failed: boom', retriable: true });
    const error = (await client.generate({ concepts: ['a', 'b'], n: 1 }).catch((e: unknown) => e)) as ApiError;
    expect(error.status).toBe(503);
    expect(error.retriable).toBe(true);
  });

  it('sends reviews and status changes to the item endpoints', async () => {
    const item = {
      itemId: 'item-000007',
      request: { concepts: ['dog', 'chase'] },
      candidates: [],
      status: 'PENDING',
      reviews: [],
      meanScores: null,
    };
    const { client, calls } = stubClient(200, item);
    await client.submitReview('item-000007', {
      reviewerId: 'r1',
      grammaticality: 4,
      complexity: 2,
      plausibility: 4,
      candidateIndex: 0,
    });
    await client.setStatus('item-000007', 'ACCEPTED');
    expect(calls.map((c) => c.url)).toEqual([
      'http://svc:1234/items/item-000007/review',
      'http://svc:1234/items/item-000007/status',
    ]);
    expect(calls[1]?.body).toEqual({ status: 'ACCEPTED' });
  });
});
