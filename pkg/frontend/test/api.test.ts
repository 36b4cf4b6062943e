import assert from "node:assert/strict";
import { test } from "node:test";

import { ApiClient, ApiError, RevisionConflict } from "../src/api.js";

function fakeFetch(status: number, body: unknown) {
  const calls: { url: string; init?: RequestInit }[] = [];
  const fetchFn = async (url: string, init?: RequestInit) => {
    calls.push({ url, init });
    return new Response(JSON.stringify(body), {
      status,
      headers: { "Content-Type": "application/json" },
    });
  };
  return { fetchFn, calls };
}

test("whatIf posts scores and returns the payload untouched", async () => {
  const payload = { revision: 1, report: { final_scores: {} }, cost: { efficiency_ratio: "inf" } };
  const { fetchFn, calls } = fakeFetch(200, payload);
  const client = new ApiClient("", fetchFn);
  const result = await client.whatIf([0.8, 0.7, 0.7]);
  assert.deepEqual(result, payload);
  assert.equal(calls[0].url, "/api/whatif");
  assert.equal(calls[0].init?.method, "POST");
  assert.deepEqual(JSON.parse(String(calls[0].init?.body)), { scores: [0.8, 0.7, 0.7] });
});

test("409 surfaces as RevisionConflict with the server revision", async () => {
  const { fetchFn } = fakeFetch(409, { error: "revision conflict", revision: 7 });
  const client = new ApiClient("", fetchFn);
  await assert.rejects(
    client.putAssessment(3, {} as never),
    (err: unknown) => err instanceof RevisionConflict && err.serverRevision === 7,
  );
});

test("400 carries the error message and issue list", async () => {
  const { fetchFn } = fakeFetch(400, { error: "invalid", issues: ["mapping out of range"] });
  const client = new ApiClient("", fetchFn);
  await assert.rejects(
    client.evaluate(),
    (err: unknown) =>
      err instanceof ApiError &&
      err.status === 400 &&
      err.issues.includes("mapping out of range"),
  );
});

test("paths match the service routes", async () => {
  const { fetchFn, calls } = fakeFetch(200, {});
  const client = new ApiClient("http://x", fetchFn);
  await client.getAssessment();
  await client.sweep({ ef_id: "EF1" });
  await client.surface({ ef_x: "EF1", ef_y: "EF2" });
  await client.optimize({});
  await client.optimizeStatus();
  await client.save(1);
  await client.catalog();
  assert.deepEqual(
    calls.map((c) => c.url),
    [
      "http://x/api/assessment",
      "http://x/api/sweep",
      "http://x/api/surface",
      "http://x/api/optimize",
      "http://x/api/optimize/status",
      "http://x/api/save",
      "http://x/api/catalog",
    ],
  );
});
