// Loads recorded API responses (produced by tools/record_fixtures.py).

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { FetchLike } from "../src/api.js";

const here = dirname(fileURLToPath(import.meta.url));

export function fixtureRaw(name: string): string {
  return readFileSync(join(here, "fixtures", name), "utf-8");
}

export function fixture<T>(name: string): T {
  return JSON.parse(fixtureRaw(name)) as T;
}

/** A fetch stand-in that replays recorded responses per route. */
export function recordedServer(routes: Record<string, unknown>): FetchLike {
  return async (url: string) => {
    const path = url.replace(/^https?:\/\/[^/]+/, "");
    const body = routes[path];
    if (body === undefined) {
      return new Response(
        JSON.stringify({ error: { kind: "not-found", detail: path } }),
        { status: 404, headers: { "Content-Type": "application/json" } },
      );
    }
    return new Response(JSON.stringify(body), {
      status: 200,
      headers: { "Content-Type": "application/json" },
    });
  };
}

export function failingServer(): FetchLike {
  return async () => {
    throw new TypeError("fetch failed");
  };
}
