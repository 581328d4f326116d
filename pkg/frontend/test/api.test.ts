import { describe, expect, it, vi } from 'vitest';

import { ApiError, SessionApi } from '../src/api.js';

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { 'content-type': 'application/json' },
  });
}

describe('answer retry', () => {
  it('re-posts once after a network failure', async () => {
    const ok = {
      accepted: true, duplicate: true, guard_rejected: false,
      progress: { posed: 1 },
    };
    const fetchMock = vi.fn()
      .mockRejectedValueOnce(new TypeError('socket closed'))
      .mockResolvedValueOnce(jsonResponse(ok));
    const api = new SessionApi('http://x', fetchMock as unknown as typeof fetch);
    const out = await api.answer('sid', 3, 'no');
    expect(out.duplicate).toBe(true);
    expect(fetchMock).toHaveBeenCalledTimes(2);
  });

  it('surfaces HTTP errors with the service detail', async () => {
    const fetchMock = vi.fn().mockImplementation(() => Promise.resolve(
      jsonResponse({ detail: 'query 3 is not the pending query' }, 409)));
    const api = new SessionApi('http://x', fetchMock as unknown as typeof fetch);
    await expect(api.answer('sid', 3, 'no')).rejects.toThrowError(ApiError);
    await expect(api.answer('sid', 3, 'no'))
      .rejects.toThrowError(/not the pending query/);
  });
});
