/**
 * Domain safety: the buttons are the only input path and mirror the card's
 * domain exactly; a submission forged past them is rejected by the service
 * and surfaced in the client without losing the card. Duplicate submissions
 * of one token never double-vote.
 */

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { AnnotationApi, ApiError } from "../src/api";
import { AnnotationApp } from "../src/app";
import { startService, twoStepRecord, type LiveService } from "./service";

let service: LiveService;

beforeAll(async () => {
  service = await startService([twoStepRecord("guard-1")]);
});

afterAll(async () => {
  await service.stop();
});

const sleep = (ms: number) => new Promise((resolve) => setTimeout(resolve, ms));

async function waitFor(predicate: () => boolean, what: string, timeoutMs = 10_000): Promise<void> {
  const start = Date.now();
  while (!predicate()) {
    if (Date.now() - start > timeoutMs) throw new Error(`timed out waiting for ${what}`);
    await sleep(20);
  }
}

describe("domain safety", () => {
  it("renders only the offered domain and rejects forged labels end to end", async () => {
    const root = document.createElement("div");
    document.body.appendChild(root);
    const api = new AnnotationApi(service.baseUrl);
    const app = new AnnotationApp(root, api, "guard");
    await app.start();

    const card = app.currentCard;
    expect(card).not.toBeNull();
    expect(card!.task).toBe("StepType");

    // 1. the UI renders exactly the allowed labels, nothing else clickable
    const buttons = Array.from(root.querySelectorAll<HTMLButtonElement>("button"));
    const labelButtons = buttons.filter((b) => b.classList.contains("label-button"));
    expect(labelButtons.map((b) => b.dataset.label)).toEqual(["Description", "Reasoning", "Both"]);
    expect(buttons).toHaveLength(labelButtons.length);

    // 2. a forged submission (bypassing the buttons) is rejected server-side
    const token = card!.token;
    const response = await fetch(`${service.baseUrl}/api/label`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ annotator: "guard", token, label: "Banana" }),
    });
    expect(response.status).toBe(422);
    expect(service.readVotes()).toHaveLength(0);

    // 3. the same rejection driven through the app surfaces client-side
    //    without losing the card
    await app.submit("Banana");
    await waitFor(() => root.querySelector(".banner-domain") !== null, "domain banner");
    expect(root.querySelector(".banner-domain")?.textContent).toContain("domain");
    expect(app.currentCard?.token).toBe(token);
    expect(service.readVotes()).toHaveLength(0);
    const reEnabled = root.querySelectorAll<HTMLButtonElement>(".label-button:disabled");
    expect(reEnabled).toHaveLength(0);

    // 4. a legitimate click still works afterwards, and resubmitting the
    //    same token is idempotent (no duplicate vote)
    labelButtons.find((b) => b.dataset.label === "Description")!.click();
    await waitFor(() => app.currentCard?.task === "DescCorrectness", "next card");
    const ack = await api.submitLabel("guard", token, "Description");
    expect(ack.duplicate).toBe(true);
    expect(service.readVotes()).toHaveLength(1);

    // 5. conflicting replay of an answered token is refused as stale
    await expect(api.submitLabel("guard", token, "Both")).rejects.toSatisfy(
      (error: unknown) => error instanceof ApiError && error.status === 409,
    );
  });
});
