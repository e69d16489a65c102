/** Requirements overview: one highlighted row per requirement. */

import type { OverviewRow } from "./api.js";
import { el } from "./dom.js";
import { formatScore, intensityBackground } from "./format.js";

/** Descending highlight intensity, ties broken by requirement id. */
export function sortOverview(rows: OverviewRow[]): OverviewRow[] {
  return [...rows].sort((a, b) => {
    const ia = a.highlightIntensity ?? 0;
    const ib = b.highlightIntensity ?? 0;
    if (ia !== ib) {
      return ib - ia;
    }
    return a.id < b.id ? -1 : a.id > b.id ? 1 : 0;
  });
}

export function renderOverview(
  rows: OverviewRow[],
  onOpen: (id: string) => void,
): HTMLElement {
  const list = el("ul", { class: "overview-rows" });
  for (const row of sortOverview(rows)) {
    const chips = el("span", { class: "chips" });
    for (const stakeholder of row.stakeholders) {
      chips.append(el("span", { class: "chip" }, stakeholder));
    }
    const header = el(
      "div",
      { class: "row-header" },
      el("span", { class: "row-id" }, row.id),
      chips,
    );
    if (row.averageConflict !== undefined) {
      header.append(
        el(
          "span",
          { class: "row-average" },
          `avg conflict ${formatScore(row.averageConflict)}`,
        ),
      );
    }
    const item = el(
      "li",
      { class: "overview-row", "data-requirement-id": row.id },
      header,
      el("p", { class: "row-text" }, row.renderedText),
    );
    item.style.backgroundColor = intensityBackground(row.highlightIntensity);
    item.addEventListener("click", () => onOpen(row.id));
    list.append(item);
  }
  return el(
    "section",
    { class: "overview" },
    el("h1", {}, "Requirements"),
    list,
  );
}
