/**
 * DOM construction for the workbench. Pure render functions: given a card
 * (or a done-tally), build the view and hand label clicks back to the
 * controller. Label buttons mirror the card's allowed_labels exactly; there
 * is no other input path.
 */

import type { AnnotationApi, ProgressSnapshot, TaskCard } from "./api.js";

const TASK_TITLES: Record<string, string> = {
  StepType: "What kind of step is this?",
  DescCorrectness: "Is the description of the image correct?",
  DescRelevance: "What is this description relevant to?",
  DescErrorType: "What kind of description error is this?",
  LogicCorrectness: "Does this step follow from the previous ones?",
  LogicRelevance: "Is this step relevant to answering the question?",
  Informativeness: "Does this step add new information?",
  LogicErrorType: "What kind of logic error is this?",
  McotCorrectness: "Is the whole answer a good rationale?",
};

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderTask(
  root: HTMLElement,
  api: AnnotationApi,
  card: TaskCard,
  onLabel: (label: string) => void,
): void {
  root.replaceChildren();
  const view = el("div", "task-view");

  const progress = el("div", "progress");
  const total = card.context.steps.length + 1; // steps plus the chain verdict
  const position = card.step_index === 0 ? total : card.step_index;
  const bar = el("div", "progress-bar");
  bar.style.width = `${Math.round((100 * position) / total)}%`;
  progress.appendChild(bar);
  progress.appendChild(
    el(
      "span",
      "progress-text",
      `record ${card.record_id} - part ${position}/${total} - ${card.progress.votes_cast} votes cast`,
    ),
  );
  view.appendChild(progress);

  const pane = el("div", "panes");
  const image = el("img", "image-pane") as HTMLImageElement;
  image.src = api.imageUrl(card.record_id);
  image.alt = `image for ${card.record_id} (${card.context.image_ref})`;
  pane.appendChild(image);

  const textside = el("div", "text-pane");
  textside.appendChild(el("h2", "question", card.context.question));
  const list = el("ol", "steps");
  card.context.steps.forEach((step, index) => {
    const item = el("li", undefined, step);
    const stepNumber = index + 1;
    if (card.step_index === 0) {
      item.className = "chain-step";
    } else if (stepNumber === card.step_index) {
      item.className = "current-step";
    } else if (stepNumber < card.step_index) {
      item.className = "previous-step";
    } else {
      item.className = "future-step";
    }
    list.appendChild(item);
  });
  textside.appendChild(list);
  pane.appendChild(textside);
  view.appendChild(pane);

  const prompt = el("div", "prompt");
  prompt.appendChild(el("h3", "task-title", TASK_TITLES[card.task] ?? card.task));
  prompt.appendChild(el("span", "task-name", card.task));
  const trigger = card.context.triggering_label;
  if (trigger) {
    prompt.appendChild(el("p", "trigger-note", `You answered: ${trigger}`));
  }
  view.appendChild(prompt);

  const buttons = el("div", "label-buttons");
  card.allowed_labels.forEach((label, index) => {
    const button = el("button", "label-button");
    button.type = "button";
    button.dataset.label = label;
    button.textContent = index < 9 ? `${index + 1}. ${label}` : label;
    button.addEventListener("click", () => onLabel(label));
    buttons.appendChild(button);
  });
  view.appendChild(buttons);

  view.appendChild(el("div", "banner-area"));
  root.appendChild(view);
}

export function renderDone(root: HTMLElement, tally: ProgressSnapshot | null): void {
  root.replaceChildren();
  const view = el("div", "done-screen");
  view.appendChild(el("h2", undefined, "All assigned records are annotated."));
  if (tally) {
    view.appendChild(el("p", "done-votes", `${tally.votes} votes recorded in this dataset.`));
    const list = el("ul", "done-tally");
    for (const [task, count] of Object.entries(tally.votes_per_task)) {
      list.appendChild(el("li", undefined, `${task}: ${count}`));
    }
    view.appendChild(list);
  }
  root.appendChild(view);
}

export type BannerKind = "stale" | "network" | "domain";

export function showBanner(
  root: HTMLElement,
  kind: BannerKind,
  message: string,
  onAction?: () => void,
): void {
  const area = root.querySelector(".banner-area");
  if (!area) return;
  area.replaceChildren();
  const banner = el("div", `banner banner-${kind}`);
  banner.appendChild(el("span", "banner-text", message));
  if (onAction) {
    const action = el("button", "banner-action");
    action.type = "button";
    action.textContent = kind === "network" ? "Retry" : "Reload card";
    action.addEventListener("click", onAction);
    banner.appendChild(action);
  }
  area.appendChild(banner);
}

export function clearBanner(root: HTMLElement): void {
  root.querySelector(".banner-area")?.replaceChildren();
}

export function setButtonsEnabled(root: HTMLElement, enabled: boolean): void {
  root.querySelectorAll<HTMLButtonElement>(".label-button").forEach((button) => {
    button.disabled = !enabled;
  });
}
