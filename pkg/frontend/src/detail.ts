/** Requirement detail: per-stakeholder value editors and the pair list. */

import type {
  Assignment,
  ConflictReport,
  OverviewRow,
  ValueInfo,
} from "./api.js";
import { el } from "./dom.js";
import { bandClass, formatScore } from "./format.js";
import { renderPicker, type PickerHandles } from "./picker.js";

export interface EditorHandles {
  stakeholderId: string;
  card: HTMLElement;
  picker: PickerHandles;
  textarea: HTMLTextAreaElement;
  saveButton: HTMLButtonElement;
  retryButton: HTMLButtonElement;
  badge: HTMLElement;
  errorBox: HTMLElement;
  retryBox: HTMLElement;
  retryMessage: HTMLElement;
  /** Stored revision of this stakeholder's assignment, null before the first save. */
  revision: number | null;
  markSaved(valueId: string, statement: string): void;
  showError(message: string): void;
  showRetryPrompt(message: string): void;
  clearNotices(): void;
}

export interface DetailHandles {
  root: HTMLElement;
  backButton: HTMLButtonElement;
  pairsHost: HTMLElement;
  editors: EditorHandles[];
}

export function renderPairs(report: ConflictReport): HTMLElement {
  const host = el("section", { class: "pairs" }, el("h2", {}, "Potential conflicts"));
  if (report.pairs.length === 0) {
    host.append(el("p", { class: "no-conflicts" }, "no conflicts computable"));
    return host;
  }
  const list = el("ul", { class: "pair-list" });
  for (const pair of report.pairs) {
    list.append(
      el(
        "li",
        { class: `pair ${bandClass(pair.quartile)}` },
        el(
          "div",
          { class: "pair-head" },
          el(
            "span",
            { class: "pair-who" },
            `${pair.stakeholderA} ↔ ${pair.stakeholderB}`,
          ),
          el(
            "span",
            { class: "pair-values" },
            `${pair.valueA} ↔ ${pair.valueB}`,
          ),
          el("span", { class: "pair-score" }, formatScore(pair.score)),
          el("span", { class: "pair-quartile" }, pair.quartile),
        ),
        el(
          "div",
          { class: "pair-statements" },
          el("blockquote", {}, pair.statementA),
          el("blockquote", {}, pair.statementB),
        ),
      ),
    );
  }
  host.append(list);
  if (report.average !== undefined) {
    host.append(
      el("p", { class: "pairs-average" }, `average ${formatScore(report.average)}`),
    );
  }
  return host;
}

function renderEditor(
  stakeholderId: string,
  values: ValueInfo[],
  assignment: Assignment | undefined,
): EditorHandles {
  let savedValueId = assignment?.valueId ?? null;
  let savedStatement = assignment?.statement ?? "";

  const textarea = el("textarea", {
    class: "statement",
    rows: "3",
    placeholder: "why this value matters here…",
  });
  textarea.value = savedStatement;
  const badge = el("span", { class: "badge-unsaved" }, "unsaved");
  badge.hidden = true;
  const saveButton = el("button", { class: "save", type: "button" }, "Save");
  const errorBox = el("p", { class: "editor-error" });
  errorBox.hidden = true;
  const retryMessage = el("p", { class: "retry-message" });
  const retryButton = el(
    "button",
    { class: "retry", type: "button" },
    "Retry save",
  );
  const retryBox = el(
    "div",
    { class: "retry-prompt" },
    el(
      "p",
      {},
      "Someone else saved a newer version of this assignment. " +
        "Your text below is untouched; review it and retry.",
    ),
    retryMessage,
    retryButton,
  );
  retryBox.hidden = true;

  const handles: EditorHandles = {
    stakeholderId,
    card: el("article", { class: "editor", "data-stakeholder": stakeholderId }),
    picker: renderPicker(values, savedValueId, () => refreshDirty()),
    textarea,
    saveButton,
    retryButton,
    badge,
    errorBox,
    retryBox,
    retryMessage,
    revision: assignment?.revision ?? null,
    markSaved(valueId, statement) {
      savedValueId = valueId;
      savedStatement = statement;
      refreshDirty();
    },
    showError(message) {
      errorBox.textContent = message;
      errorBox.hidden = false;
    },
    showRetryPrompt(message) {
      retryMessage.textContent = message;
      retryBox.hidden = false;
    },
    clearNotices() {
      errorBox.hidden = true;
      retryBox.hidden = true;
    },
  };

  function refreshDirty(): void {
    const dirty =
      handles.picker.getSelected() !== savedValueId ||
      textarea.value !== savedStatement;
    badge.hidden = !dirty;
    handles.card.classList.toggle("dirty", dirty);
  }

  textarea.addEventListener("input", () => refreshDirty());

  handles.card.append(
    el("h3", {}, stakeholderId, " ", badge),
    handles.picker.root,
    el("label", { class: "statement-label" }, "Value statement", textarea),
    el("div", { class: "save-row" }, saveButton),
    errorBox,
    retryBox,
  );
  return handles;
}

export function renderDetail(
  row: OverviewRow,
  values: ValueInfo[],
  assignments: Assignment[],
  report: ConflictReport,
): DetailHandles {
  const backButton = el(
    "button",
    { class: "back", type: "button" },
    "← all requirements",
  );
  const editors = row.stakeholders.map((stakeholderId) =>
    renderEditor(
      stakeholderId,
      values,
      assignments.find((a) => a.stakeholderId === stakeholderId),
    ),
  );
  const editorHost = el("div", { class: "editors" });
  for (const editor of editors) {
    editorHost.append(editor.card);
  }
  const pairsHost = el("div", { class: "pairs-host" }, renderPairs(report));
  const root = el(
    "section",
    { class: "detail" },
    backButton,
    el("h1", {}, row.id),
    el("p", { class: "rendered" }, row.renderedText),
    editorHost,
    pairsHost,
  );
  return { root, backButton, pairsHost, editors };
}
