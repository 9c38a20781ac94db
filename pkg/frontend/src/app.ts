/**
 * Workbench controller: one active card at a time, every advance is a full
 * round trip (no optimistic UI). The service owns the stage machine; the
 * client renders whatever card it is handed and reports the outcome of each
 * submission.
 *
 * Failure handling per submission:
 *  - 422 (label outside domain): inline message, the card stays put;
 *  - 409 (stale card): banner plus a refetch of the current card;
 *  - network failure: retry prompt that resubmits the same token, which the
 *    service treats idempotently, so no duplicate vote is possible.
 */

import { AnnotationApi, ApiError, NetworkError, type TaskCard } from "./api.js";
import {
  clearBanner,
  renderDone,
  renderTask,
  setButtonsEnabled,
  showBanner,
} from "./views.js";

export class AnnotationApp {
  private card: TaskCard | null = null;
  private busy = false;

  constructor(
    readonly root: HTMLElement,
    readonly api: AnnotationApi,
    readonly annotator: string,
  ) {}

  get currentCard(): TaskCard | null {
    return this.card;
  }

  async start(): Promise<void> {
    await this.loadNext();
    this.root.addEventListener("keydown", (event) => this.onKey(event as KeyboardEvent));
  }

  private onKey(event: KeyboardEvent): void {
    const index = Number.parseInt(event.key, 10);
    if (!Number.isInteger(index) || index < 1) return;
    const buttons = this.root.querySelectorAll<HTMLButtonElement>(".label-button");
    const button = buttons[index - 1];
    if (button && !button.disabled) button.click();
  }

  async loadNext(): Promise<void> {
    try {
      const response = await this.api.nextTask(this.annotator);
      if (response.done) {
        this.card = null;
        let tally = null;
        try {
          tally = await this.api.progress();
        } catch {
          // the done screen works without a tally
        }
        renderDone(this.root, tally);
        return;
      }
      this.card = response.card;
      renderTask(this.root, this.api, response.card, (label) => {
        void this.submit(label);
      });
    } catch (error) {
      this.card = null;
      this.root.replaceChildren();
      const banner = document.createElement("div");
      banner.className = "banner banner-network";
      banner.textContent = `Could not reach the annotation service: ${String(error)}`;
      this.root.appendChild(banner);
    }
  }

  async submit(label: string): Promise<void> {
    if (this.busy || this.card === null) return;
    const card = this.card;
    this.busy = true;
    setButtonsEnabled(this.root, false);
    try {
      await this.api.submitLabel(this.annotator, card.token, label);
      clearBanner(this.root);
      this.busy = false;
      await this.loadNext();
    } catch (error) {
      this.busy = false;
      if (error instanceof ApiError && error.status === 422) {
        // rejected label: keep the card, surface the reason inline
        setButtonsEnabled(this.root, true);
        showBanner(this.root, "domain", error.detail);
      } else if (error instanceof ApiError && error.status === 409) {
        showBanner(this.root, "stale", `${error.detail} - reloading the current card.`, () => {
          void this.loadNext();
        });
        await this.loadNext();
      } else if (error instanceof NetworkError) {
        setButtonsEnabled(this.root, true);
        showBanner(this.root, "network", "The vote did not go through.", () => {
          void this.submit(label);
        });
      } else {
        setButtonsEnabled(this.root, true);
        showBanner(this.root, "network", String(error));
      }
    }
  }
}

export function mount(root: HTMLElement, baseUrl: string, annotator: string): AnnotationApp {
  const app = new AnnotationApp(root, new AnnotationApi(baseUrl), annotator);
  void app.start();
  return app;
}
