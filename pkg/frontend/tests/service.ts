/**
 * Test helper: run the real annotation service (the Python backend) on a
 * scratch dataset and vote log, so UI tests exercise the documented
 * endpoints end to end instead of a mock.
 */

import { type ChildProcess, spawn } from "node:child_process";
import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

export interface LiveService {
  baseUrl: string;
  voteLog: string;
  readVotes(): Array<{ annotator_id: string; record_id: string; step_index: number; task: string; label: string }>;
  stop(): Promise<void>;
}

const sleep = (ms: number) => new Promise((resolve) => setTimeout(resolve, ms));

async function waitForServer(baseUrl: string, child: ChildProcess, stderr: string[]): Promise<void> {
  for (let attempt = 0; attempt < 150; attempt += 1) {
    if (child.exitCode !== null) {
      throw new Error(`service exited early (${child.exitCode}): ${stderr.join("")}`);
    }
    try {
      const response = await fetch(`${baseUrl}/api/progress`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await sleep(100);
  }
  throw new Error(`service did not come up at ${baseUrl}: ${stderr.join("")}`);
}

export async function startService(records: object[]): Promise<LiveService> {
  const dir = mkdtempSync(join(tmpdir(), "chaingrade-ui-"));
  const dataset = join(dir, "dataset.jsonl");
  writeFileSync(dataset, records.map((r) => JSON.stringify(r)).join("\n") + "\n", "utf-8");
  const voteLog = join(dir, "votes.jsonl");
  const port = 21000 + Math.floor(Math.random() * 20000);
  const baseUrl = `http://127.0.0.1:${port}`;
  const stderr: string[] = [];
  const child = spawn(
    "python3",
    ["-m", "chaingrade.cli", "serve-annotation", dataset, "--votes", voteLog, "--port", String(port)],
    { stdio: ["ignore", "pipe", "pipe"] },
  );
  child.stderr?.on("data", (chunk) => stderr.push(String(chunk)));
  child.stdout?.on("data", () => undefined);
  await waitForServer(baseUrl, child, stderr);
  return {
    baseUrl,
    voteLog,
    readVotes() {
      let text = "";
      try {
        text = readFileSync(voteLog, "utf-8");
      } catch {
        return [];
      }
      return text
        .split("\n")
        .filter((line) => line.trim())
        .map((line) => JSON.parse(line));
    },
    async stop() {
      child.kill("SIGTERM");
      for (let i = 0; i < 50 && child.exitCode === null; i += 1) {
        await sleep(50);
      }
      if (child.exitCode === null) child.kill("SIGKILL");
    },
  };
}

/** The two-step walkthrough fixture: one description step, one reasoning step. */
export function twoStepRecord(id = "walk-1"): object {
  return {
    id,
    split: "Hard",
    question: "Is the flag moving?",
    image_ref: "none",
    steps: ["The flag is stretched out and wavy.", "So the wind must be blowing it."],
    annotations: [],
  };
}
