/** Controller: wires the service API to the overview and detail views. */

import {
  ApiError,
  type HmreqApi,
  type OverviewRow,
  type ValueInfo,
} from "./api.js";
import { renderDetail, renderPairs, type EditorHandles } from "./detail.js";
import { el } from "./dom.js";
import { renderOverview } from "./overview.js";

export class App {
  private values: ValueInfo[] = [];
  private rows: OverviewRow[] = [];

  constructor(
    private readonly root: HTMLElement,
    private readonly api: HmreqApi,
  ) {}

  async start(): Promise<void> {
    this.values = await this.api.values();
    await this.showOverview();
  }

  async showOverview(): Promise<void> {
    this.rows = await this.api.listRequirements();
    this.root.replaceChildren(
      renderOverview(this.rows, (id) => {
        void this.openDetail(id).catch((err) => this.showFatal(err));
      }),
    );
  }

  async openDetail(requirementId: string): Promise<void> {
    const row = this.rows.find((r) => r.id === requirementId);
    if (row === undefined) {
      throw new Error(`unknown requirement ${requirementId}`);
    }
    const [assignments, report] = await Promise.all([
      this.api.assignments(requirementId),
      this.api.conflicts(requirementId),
    ]);
    const detail = renderDetail(row, this.values, assignments, report);
    detail.backButton.addEventListener("click", () => {
      void this.showOverview().catch((err) => this.showFatal(err));
    });
    for (const editor of detail.editors) {
      const submit = () => {
        void this.submitAssignment(
          requirementId,
          editor,
          detail.pairsHost,
        ).catch((err) => this.showFatal(err));
      };
      editor.saveButton.addEventListener("click", submit);
      editor.retryButton.addEventListener("click", submit);
    }
    this.root.replaceChildren(detail.root);
  }

  /**
   * PUT the editor's current value and statement with the next
   * revision. On a stale-revision conflict the typed content stays in
   * place; the editor refetches the stored revision and shows a retry
   * prompt. Other service errors are surfaced verbatim with their code.
   */
  async submitAssignment(
    requirementId: string,
    editor: EditorHandles,
    pairsHost: HTMLElement,
  ): Promise<void> {
    editor.clearNotices();
    const valueId = editor.picker.getSelected();
    if (valueId === null) {
      editor.showError("pick a value before saving");
      return;
    }
    const statement = editor.textarea.value;
    try {
      const stored = await this.api.putAssignment(
        requirementId,
        editor.stakeholderId,
        {
          valueId,
          statement,
          revision: (editor.revision ?? 0) + 1,
        },
      );
      editor.revision = stored.revision;
      editor.markSaved(stored.valueId, stored.statement);
      await this.refreshConflicts(requirementId, pairsHost);
    } catch (error) {
      if (error instanceof ApiError && error.code === "stale_revision") {
        const current = await this.api.assignments(requirementId);
        const mine = current.find(
          (a) => a.stakeholderId === editor.stakeholderId,
        );
        editor.revision = mine?.revision ?? null;
        editor.showRetryPrompt(`${error.code}: ${error.detail}`);
      } else if (error instanceof ApiError) {
        editor.showError(`${error.code}: ${error.detail}`);
      } else {
        throw error;
      }
    }
  }

  /** Re-fetch and re-render the pair list after an accepted save. */
  async refreshConflicts(
    requirementId: string,
    pairsHost: HTMLElement,
  ): Promise<void> {
    const report = await this.api.conflicts(requirementId);
    pairsHost.replaceChildren(renderPairs(report));
  }

  private showFatal(error: unknown): void {
    this.root.replaceChildren(
      el("p", { class: "fatal" }, `dashboard error: ${String(error)}`),
    );
  }
}
