// Library endpoint client. Outcomes that cannot reach the ingest endpoint
// queue locally and retry on the next flush.

import { assertOutcome } from "./schema.js";
import type { GameDocument, OutcomeRecord } from "./types.js";

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export interface QueueStore {
  load(): { gameId: string; record: OutcomeRecord }[];
  save(items: { gameId: string; record: OutcomeRecord }[]): void;
}

export function memoryQueue(): QueueStore {
  let items: { gameId: string; record: OutcomeRecord }[] = [];
  return {
    load: () => items,
    save: (next) => {
      items = next;
    },
  };
}

export class LibraryClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = fetch.bind(globalThis),
    private readonly queue: QueueStore = memoryQueue(),
  ) {}

  async listGames(): Promise<Record<string, unknown>[]> {
    const response = await this.fetchImpl(`${this.baseUrl}/library`);
    if (!response.ok) throw new Error(`library list failed: ${response.status}`);
    return (await response.json()) as Record<string, unknown>[];
  }

  async fetchDocument(gameId: string): Promise<GameDocument> {
    const response = await this.fetchImpl(`${this.baseUrl}/library/${gameId}/document`);
    if (!response.ok) throw new Error(`document fetch failed: ${response.status}`);
    return (await response.json()) as GameDocument;
  }

  async fetchTrace(gameId: string): Promise<string> {
    const response = await this.fetchImpl(`${this.baseUrl}/library/${gameId}/trace`);
    if (!response.ok) throw new Error(`trace fetch failed: ${response.status}`);
    return await response.text();
  }

  /** Post an outcome; on transport failure the record persists locally. */
  async postOutcome(gameId: string, record: OutcomeRecord): Promise<boolean> {
    assertOutcome(record);
    try {
      const response = await this.fetchImpl(`${this.baseUrl}/library/${gameId}/outcomes`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(record),
      });
      if (!response.ok) throw new Error(`ingest rejected: ${response.status}`);
      return true;
    } catch {
      this.queue.save([...this.queue.load(), { gameId, record }]);
      return false;
    }
  }

  pendingOutcomes(): number {
    return this.queue.load().length;
  }

  async flushQueue(): Promise<number> {
    const pending = this.queue.load();
    const remaining: { gameId: string; record: OutcomeRecord }[] = [];
    let sent = 0;
    for (const item of pending) {
      try {
        const response = await this.fetchImpl(`${this.baseUrl}/library/${item.gameId}/outcomes`, {
          method: "POST",
          headers: { "content-type": "application/json" },
          body: JSON.stringify(item.record),
        });
        if (!response.ok) throw new Error("still failing");
        sent += 1;
      } catch {
        remaining.push(item);
      }
    }
    this.queue.save(remaining);
    return sent;
  }
}
