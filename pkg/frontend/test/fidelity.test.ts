// End-to-end fidelity against the real service and CLI: the what-if panel's
// 2-decimal numbers at scores (0.8, 0.7, 0.7) must match the CLI's table
// output for the same assessment, and chart data must equal the sweep
// payload verbatim. Requires the Python package to be installed (pip -e ..).

import assert from "node:assert/strict";
import { spawn, spawnSync } from "node:child_process";
import { mkdtempSync, copyFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join, resolve } from "node:path";
import { after, before, test } from "node:test";

import { ApiClient } from "../src/api.js";
import { sweepSeries } from "../src/chartdata.js";
import { fmt2, fmtRatio } from "../src/format.js";
import { ATTRIBUTES, COMPONENTS, DOMAINS } from "../src/types.js";

const REPO_ROOT = resolve(__dirname, "..", "..");
const FIXTURE = join(REPO_ROOT, "tests", "fixtures", "worked_example_optimum.risk");
const PYTHON = process.env.PYTHON ?? "python3";
const CLI_ENV = { ...process.env, MLRISK_NO_COLOR: "1" };

let child: ReturnType<typeof spawn> | null = null;
let base = "";
let fixtureCopy = "";

before(async () => {
  const dir = mkdtempSync(join(tmpdir(), "mlrisk-ui-"));
  fixtureCopy = join(dir, "session.risk");
  copyFileSync(FIXTURE, fixtureCopy);
  child = spawn(
    PYTHON,
    ["-m", "mlrisk.cli", "serve", "--input", fixtureCopy, "--host", "127.0.0.1", "--port", "0"],
    { env: CLI_ENV, cwd: REPO_ROOT },
  );
  base = await new Promise<string>((resolvePromise, rejectPromise) => {
    let buffer = "";
    const timer = setTimeout(() => rejectPromise(new Error(`service did not start: ${buffer}`)), 15000);
    child!.stdout!.on("data", (chunk: Buffer) => {
      buffer += chunk.toString();
      const match = buffer.match(/on (http:\/\/[^/\s]+)\//);
      if (match) {
        clearTimeout(timer);
        resolvePromise(match[1]);
      }
    });
    child!.stderr!.on("data", (chunk: Buffer) => (buffer += chunk.toString()));
    child!.on("exit", (code) => rejectPromise(new Error(`service exited early (${code}): ${buffer}`)));
  });
});

after(() => {
  child?.kill();
});

function runCli(args: string[]): string {
  const proc = spawnSync(PYTHON, ["-m", "mlrisk.cli", ...args], {
    env: CLI_ENV,
    cwd: REPO_ROOT,
    encoding: "utf-8",
  });
  assert.equal(proc.status, 0, proc.stderr);
  return proc.stdout;
}

/** Parse the six 2-decimal final scores from the CLI's evaluate table. */
function cliFinalScores(tableText: string): Map<string, string> {
  const lines = tableText.split("\n");
  const start = lines.findIndex((line) => line.trim() === "Final scores");
  assert.ok(start >= 0, "Final scores section present");
  const names: Record<string, string> = {
    Confidentiality: "C", Integrity: "I", Availability: "A",
  };
  const cells = new Map<string, string>();
  for (const line of lines.slice(start + 2, start + 5)) {
    const [name, proactive, reactive] = line.trim().split(/\s+/);
    cells.set(`${names[name]}/proactive`, proactive);
    cells.set(`${names[name]}/reactive`, reactive);
  }
  return cells;
}

test("what-if panel numbers equal the CLI output at (0.8, 0.7, 0.7)", async () => {
  const client = new ApiClient(base);
  const whatIf = await client.whatIf([0.8, 0.7, 0.7]);

  // The panel renders fmt2 of each final score and fmtRatio of the ratio.
  const panel = new Map<string, string>();
  for (const [attribute, domain] of COMPONENTS) {
    panel.set(`${attribute}/${domain}`, fmt2(whatIf.report.final_scores[attribute][domain]));
  }
  const panelRatio = fmtRatio(whatIf.cost.efficiency_ratio);

  // CLI evaluate on the same assessment (its stored scores are 0.8/0.7/0.7).
  const table = runCli(["evaluate", "--input", fixtureCopy]);
  const cli = cliFinalScores(table);
  assert.equal(panel.size, 6);
  for (const [component, value] of panel) {
    assert.equal(value, cli.get(component), component);
  }

  // CLI cost prints the same 2-decimal efficiency ratio.
  const costOut = runCli(["cost", "--input", fixtureCopy]);
  const ratioLine = costOut.split("\n").find((line) => line.startsWith("Efficiency ratio:"));
  assert.ok(ratioLine, "ratio line present");
  assert.equal(`Efficiency ratio: ${panelRatio}`, ratioLine);
});

test("what-if at all-zero scores shows the infeasible marker", async () => {
  const client = new ApiClient(base);
  const whatIf = await client.whatIf([0, 0, 0]);
  assert.equal(fmtRatio(whatIf.cost.efficiency_ratio), "infeasible");
});

test("sensitivity chart series equal the sweep payload verbatim", async () => {
  const client = new ApiClient(base);
  const payload = await client.sweep({ ef_id: "EF1", steps: 11 });
  const series = sweepSeries(payload);
  assert.equal(series.length, 6);
  let index = 0;
  for (const attribute of ATTRIBUTES) {
    for (const domain of DOMAINS) {
      const line = series[index++];
      payload.samples.forEach((sample, i) => {
        assert.equal(line.points[i].x, sample.score);
        assert.equal(line.points[i].y, sample.total_coverage[attribute][domain]);
      });
    }
  }
});

test("what-if calls never move the revision", async () => {
  const client = new ApiClient(base);
  const before_ = await client.getAssessment();
  await client.whatIf([0.5, 0.5, 0.5]);
  await client.whatIf([0.9, 0.1, 0.4]);
  const after_ = await client.getAssessment();
  assert.equal(after_.revision, before_.revision);
  assert.deepEqual(after_.assessment, before_.assessment);
});
