/** Grouped, searchable value picker (10 groups, 56 values). */

import type { ValueInfo } from "./api.js";
import { el } from "./dom.js";

export interface ValueGroup {
  group: string;
  values: ValueInfo[];
}

/** Bucket values by group, preserving the served order of both. */
export function groupValues(values: ValueInfo[]): ValueGroup[] {
  const groups: ValueGroup[] = [];
  const index = new Map<string, ValueGroup>();
  for (const value of values) {
    let bucket = index.get(value.group);
    if (bucket === undefined) {
      bucket = { group: value.group, values: [] };
      index.set(value.group, bucket);
      groups.push(bucket);
    }
    bucket.values.push(value);
  }
  return groups;
}

export function matchesQuery(value: ValueInfo, query: string): boolean {
  const q = query.trim().toLowerCase();
  if (q === "") {
    return true;
  }
  return (
    value.id.toLowerCase().includes(q) ||
    value.label.toLowerCase().includes(q) ||
    value.group.toLowerCase().includes(q)
  );
}

export interface PickerHandles {
  root: HTMLElement;
  search: HTMLInputElement;
  select: HTMLSelectElement;
  getSelected(): string | null;
  setSelected(valueId: string | null): void;
}

export function renderPicker(
  values: ValueInfo[],
  initial: string | null,
  onChange: () => void,
): PickerHandles {
  const search = el("input", {
    class: "picker-search",
    type: "search",
    placeholder: "search values…",
    "aria-label": "search values",
  });
  const select = el("select", { class: "picker-select" });
  let selected = initial;

  function rebuild(query: string): void {
    select.replaceChildren();
    select.append(
      el("option", { value: "" }, "— pick a value —"),
    );
    for (const group of groupValues(values)) {
      const visible = group.values.filter((v) => matchesQuery(v, query));
      if (visible.length === 0) {
        continue;
      }
      const optgroup = el("optgroup", { label: group.group });
      for (const value of visible) {
        optgroup.append(el("option", { value: value.id }, value.label));
      }
      select.append(optgroup);
    }
    // Keep the selection even while the search hides its option.
    if (selected !== null) {
      if (!Array.from(select.options).some((o) => o.value === selected)) {
        const current = values.find((v) => v.id === selected);
        if (current !== undefined) {
          select.append(
            el(
              "option",
              { value: current.id, class: "picker-current" },
              current.label,
            ),
          );
        }
      }
      select.value = selected;
    } else {
      select.value = "";
    }
  }

  search.addEventListener("input", () => rebuild(search.value));
  select.addEventListener("change", () => {
    selected = select.value === "" ? null : select.value;
    onChange();
  });
  rebuild("");

  const root = el("div", { class: "picker" }, search, select);
  return {
    root,
    search,
    select,
    getSelected: () => selected,
    setSelected: (valueId) => {
      selected = valueId;
      rebuild(search.value);
    },
  };
}
