/**
 * Global test setup: train the toy model once (cached under .cache/), then
 * serve it on a free port for the round-trip test. The base URL is written
 * to .cache/service.json for tests to read; the review store is fresh per
 * run so exports only contain what the tests accepted.
 */

import { execFileSync, spawn, type ChildProcess } from 'node:child_process';
import { existsSync, mkdirSync, mkdtempSync, writeFileSync } from 'node:fs';
import { createServer } from 'node:net';
import { tmpdir } from 'node:os';
import * as path from 'node:path';
import { fileURLToPath } from 'node:url';

const frontendDir = path.resolve(path.dirname(fileURLToPath(import.meta.url)), '..', '..');
const repoDir = path.resolve(frontendDir, '..');
const cacheDir = path.join(frontendDir, '.cache');
const runDir = path.join(cacheDir, 'toy-run');
const configPath = path.join(repoDir, 'src', 'conceptgen', 'data', 'toy_pipeline.json');

let serverProcess: ChildProcess | null = null;

async function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const probe = createServer();
    probe.once('error', reject);
    probe.listen(0, '127.0.0.1', () => {
      const address = probe.address();
      if (address === null || typeof address === 'string') {
        reject(new Error('could not allocate a port'));
        return;
      }
      probe.close(() => resolve(address.port));
    });
  });
}

async function waitForService(baseUrl: string, timeoutMs: number): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  let lastError: unknown = null;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${baseUrl}/items`);
      if (response.ok) {
        return;
      }
      lastError = new Error(`status ${response.status}`);
    } catch (error) {
      lastError = error;
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
  throw new Error(`service did not come up at ${baseUrl}: ${String(lastError)}`);
}

export default async function setup(): Promise<() => void> {
  mkdirSync(cacheDir, { recursive: true });

  if (!existsSync(path.join(runDir, 'model.ckpt'))) {
    execFileSync(
      'python3',
      ['-m', 'conceptgen.cli', 'pipeline', 'run', '--config', configPath, '--run-dir', runDir],
      { stdio: 'inherit', timeout: 240_000 },
    );
  }

  const port = await freePort();
  const storePath = path.join(mkdtempSync(path.join(tmpdir(), 'curation-store-')), 'items.log');
  serverProcess = spawn(
    'python3',
    [
      '-m',
      'conceptgen.cli',
      'serve',
      '--run-dir',
      runDir,
      '--store',
      storePath,
      '--host',
      '127.0.0.1',
      '--port',
      String(port),
    ],
    { stdio: 'ignore' },
  );

  const baseUrl = `http://127.0.0.1:${port}`;
  await waitForService(baseUrl, 60_000);
  writeFileSync(path.join(cacheDir, 'service.json'), JSON.stringify({ baseUrl }));

  return () => {
    serverProcess?.kill('SIGTERM');
  };
}
