/** Pure DOM builders for the chat transcript. Every field delivered by the
 * service for a turn is rendered somewhere in the returned element, so the
 * contract tests can assert no-loss rendering against recorded fixtures. */

import type { RankedPassage, TurnView } from "./types";

const PASSAGE_CLAMP_CHARS = 160;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderPassage(passage: RankedPassage): HTMLElement {
  const item = el("li", "passage");
  item.dataset.passageId = passage.passage_id;
  const header = el("div", "passage-header");
  header.append(
    el("span", "passage-rank", `#${passage.rank}`),
    el("span", "passage-id", passage.passage_id),
    el("span", "passage-score", passage.score.toFixed(4)),
  );
  item.append(header);

  const text = passage.text ?? "";
  const body = el("div", "passage-text");
  if (text.length > PASSAGE_CLAMP_CHARS) {
    body.textContent = `${text.slice(0, PASSAGE_CLAMP_CHARS)}…`;
    body.classList.add("clamped");
    const expand = el("button", "expand-passage", "show more");
    expand.type = "button";
    expand.addEventListener("click", () => {
      body.textContent = text;
      body.classList.remove("clamped");
      expand.remove();
    });
    item.append(body, expand);
  } else {
    body.textContent = text;
    item.append(body);
  }
  return item;
}

export function renderDetailPanel(turn: TurnView): HTMLElement {
  const panel = el("details", "detail-panel");
  panel.append(el("summary", "detail-summary", "turn details"));

  panel.append(el("div", "rewritten-query", turn.rewritten_query));

  const badges = el("div", "badges");
  for (const flag of turn.degraded_flags) {
    badges.append(el("span", "degraded-badge", flag));
  }
  panel.append(badges);

  const passages = el("ul", "passages");
  for (const passage of turn.ranked.slice(0, 3)) {
    passages.append(renderPassage(passage));
  }
  panel.append(passages);

  const timings = el("div", "timings");
  for (const [stage, ms] of Object.entries(turn.timings_ms)) {
    timings.append(el("span", "timing", `${stage}: ${ms.toFixed(1)}ms`));
  }
  panel.append(timings);
  return panel;
}

export function renderTurn(turn: TurnView): HTMLElement {
  const root = el("article", "turn");
  root.dataset.turnNumber = String(turn.turn_number);

  const query = el("div", "query-bubble");
  query.append(el("div", "raw-query", turn.raw_query));
  if (turn.rewritten_query !== turn.raw_query) {
    query.append(el("div", "rewrite-note", `searched as: ${turn.rewritten_query}`));
  }
  root.append(query);

  const answer = el("div", "answer-bubble");
  answer.append(
    el("span", "mode-tag", turn.answer.mode),
    el("p", "answer-text", turn.answer.text),
  );
  if (turn.degraded_flags.length > 0) {
    answer.append(el("span", "degraded-badge answer-degraded", "degraded"));
  }
  root.append(answer);

  root.append(renderDetailPanel(turn));
  return root;
}

export function renderErrorBanner(message: string, onRetry?: () => void): HTMLElement {
  const banner = el("div", "error-banner", message);
  if (onRetry) {
    const retry = el("button", "retry-button", "retry");
    retry.type = "button";
    retry.addEventListener("click", onRetry);
    banner.append(retry);
  }
  return banner;
}

export function renderInlineError(message: string): HTMLElement {
  return el("div", "inline-error", message);
}
