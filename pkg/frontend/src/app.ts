import type { AnalysisDoc, ApiClient } from "./api.js";
import { ServiceError } from "./api.js";
import { debounce } from "./debounce.js";
import { formatScore, formatWeight } from "./format.js";
import { renderDiagram } from "./dot.js";
import { renderScatter } from "./scatter.js";
import {
  ALL_FORMS,
  ALL_LEVELS,
  type ExplorerState,
  assignmentLines,
  clampOverride,
  effectiveProficiency,
  effectiveWeight,
  hasOverrides,
  initialState,
  overridesBody,
  toggleShortlist,
  visibleCandidates,
} from "./state.js";

export const WHATIF_DEBOUNCE_MS = 250;

export interface ExplorerHandle {
  ready: Promise<void>;
  state: ExplorerState;
  /** Re-fetch project and analysis (used by the conflict prompt and banner). */
  reload: () => Promise<void>;
  dispose: () => void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className = "",
  text = "",
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text) node.textContent = text;
  return node;
}

export function createExplorer(
  root: HTMLElement,
  api: ApiClient,
  projectId: string,
): ExplorerHandle {
  root.textContent = "";
  root.classList.add("explorer");

  const banner = el("div", "banner hidden");
  const bannerText = el("span", "banner-text");
  const bannerRetry = el("button", "banner-retry", "Retry");
  banner.append(bannerText, bannerRetry);

  const conflict = el("div", "conflict hidden");
  const conflictText = el(
    "span",
    "conflict-text",
    "The project changed on the server since it was loaded. Reload to continue; " +
      "your shortlist selection is kept.",
  );
  const conflictReload = el("button", "conflict-reload", "Reload");
  conflict.append(conflictText, conflictReload);

  const filtersPanel = el("div", "filters");
  const scatterContainer = el("div", "scatter-container");
  const tooltip = el("div", "tooltip hidden");
  const slidersPanel = el("div", "sliders");
  const shortlistPanel = el("div", "shortlist");
  const drawer = el("div", "drawer hidden");

  const left = el("div", "left");
  left.append(filtersPanel, scatterContainer, tooltip);
  const right = el("div", "right");
  right.append(slidersPanel, shortlistPanel, drawer);
  const layout = el("div", "layout");
  layout.append(left, right);
  root.append(banner, conflict, layout);

  let state: ExplorerState | null = null;
  let baseAnalysis: AnalysisDoc | null = null;
  let disposed = false;

  const showBanner = (message: string) => {
    bannerText.textContent = message;
    banner.classList.remove("hidden");
  };
  const hideBanner = () => banner.classList.add("hidden");

  const failedWith = (error: unknown) => {
    if (error instanceof ServiceError) {
      showBanner(`service error: ${error.message}`);
    } else {
      showBanner("service unreachable");
    }
  };

  // ----- rendering -------------------------------------------------------

  const renderAll = () => {
    if (state === null) return;
    renderFilters();
    renderSliders();
    renderShortlist();
    renderPlot();
    renderDrawer();
  };

  const renderPlot = () => {
    if (state === null) return;
    renderScatter(
      scatterContainer,
      visibleCandidates(state),
      state.shortlist,
      {
        onHover: (candidateId) => {
          if (state === null) return;
          if (candidateId === null) {
            tooltip.classList.add("hidden");
            return;
          }
          const candidate = state.analysis?.candidates.find(
            (c) => c.id === candidateId,
          );
          if (candidate === undefined) return;
          tooltip.textContent = "";
          tooltip.appendChild(el("div", "tooltip-id", candidate.id));
          const scores = el("div", "tooltip-scores");
          const bScore = el("span", "score score-b", formatScore(candidate.B));
          const dScore = el("span", "score score-d", formatScore(candidate.D));
          scores.append("B=", bScore, " D=", dScore);
          tooltip.appendChild(scores);
          for (const line of assignmentLines(state, candidate)) {
            tooltip.appendChild(el("div", "tooltip-line", line));
          }
          tooltip.classList.remove("hidden");
        },
        onPick: (candidateId) => {
          if (state === null) return;
          state.pinned = state.pinned === candidateId ? null : candidateId;
          renderDrawer();
        },
      },
    );
  };

  const renderFilters = () => {
    if (state === null) return;
    filtersPanel.textContent = "";
    const group = (
      title: string,
      values: string[],
      active: Set<string>,
      kind: string,
    ) => {
      const box = el("span", "filter-group");
      box.appendChild(el("span", "filter-title", title));
      for (const value of values) {
        const label = el("label", "filter-item");
        const input = el("input");
        input.type = "checkbox";
        input.checked = active.has(value);
        input.dataset.kind = kind;
        input.dataset.value = value;
        input.addEventListener("change", () => {
          if (state === null) return;
          if (input.checked) active.add(value);
          else active.delete(value);
          renderPlot();
        });
        label.append(input, value);
        box.appendChild(label);
      }
      return box;
    };
    filtersPanel.appendChild(
      group("levels", ALL_LEVELS, state.filters.levels, "level"),
    );
    filtersPanel.appendChild(
      group("forms", ALL_FORMS, state.filters.forms, "form"),
    );
    const paretoLabel = el("label", "filter-item filter-pareto");
    const paretoInput = el("input");
    paretoInput.type = "checkbox";
    paretoInput.checked = state.filters.paretoOnly;
    paretoInput.dataset.kind = "pareto-only";
    paretoInput.addEventListener("change", () => {
      if (state === null) return;
      state.filters.paretoOnly = paretoInput.checked;
      renderPlot();
    });
    paretoLabel.append(paretoInput, "pareto only");
    filtersPanel.appendChild(paretoLabel);
  };

  const sliderErrors = new Map<string, HTMLElement>();

  const sliderRow = (
    title: string,
    kind: "w" | "p",
    key: string,
    value: number,
  ) => {
    const row = el("div", "slider-row");
    row.dataset.path = `/${kind}/${key}`;
    row.appendChild(el("span", "slider-name", title));
    const input = el("input");
    input.type = "range";
    input.min = "1";
    input.max = "2";
    input.step = "0.05";
    input.value = String(value);
    input.dataset.kind = kind;
    input.dataset.key = key;
    const valueLabel = el("span", "slider-value", formatWeight(value));
    const error = el("span", "slider-error");
    sliderErrors.set(`/${kind}/${key}`, error);
    input.addEventListener("input", () => {
      if (state === null) return;
      const next = clampOverride(Number(input.value));
      if (kind === "w") state.overrides.w[key] = next;
      else state.overrides.p[key] = next;
      valueLabel.textContent = formatWeight(next);
      clearSliderErrors();
      scheduleWhatIf();
    });
    row.append(input, valueLabel, error);
    return row;
  };

  const clearSliderErrors = () => {
    for (const node of sliderErrors.values()) node.textContent = "";
  };

  const renderSliders = () => {
    if (state === null) return;
    slidersPanel.textContent = "";
    sliderErrors.clear();
    slidersPanel.appendChild(el("div", "panel-title", "what-if"));
    const wTitle = el("div", "slider-section", "form weights");
    slidersPanel.appendChild(wTitle);
    for (const form of Object.keys(state.project.score_config.w).sort()) {
      slidersPanel.appendChild(
        sliderRow(`w(${form})`, "w", form, effectiveWeight(state, form)),
      );
    }
    slidersPanel.appendChild(el("div", "slider-section", "proficiency"));
    for (const slot of state.project.slots) {
      slidersPanel.appendChild(
        sliderRow(slot.id, "p", slot.id, effectiveProficiency(state, slot.id)),
      );
    }
    const reset = el("button", "reset-overrides", "reset to project values");
    reset.addEventListener("click", () => {
      if (state === null) return;
      state.overrides = { w: {}, p: {} };
      whatIf.cancel();
      clearSliderErrors();
      if (baseAnalysis !== null) state.analysis = baseAnalysis;
      renderAll();
    });
    slidersPanel.appendChild(reset);
  };

  const renderShortlist = () => {
    if (state === null) return;
    shortlistPanel.textContent = "";
    shortlistPanel.appendChild(el("div", "panel-title", "shortlist"));
    const list = el("div", "shortlist-items");
    for (const candidate of state.analysis?.candidates ?? []) {
      const label = el("label", "shortlist-item");
      const input = el("input");
      input.type = "checkbox";
      input.checked = state.shortlist.has(candidate.id);
      input.dataset.candidate = candidate.id;
      input.addEventListener("change", () => {
        if (state === null) return;
        toggleShortlist(state, candidate.id);
        renderDirty();
        renderPlot();
      });
      const bScore = el("span", "score score-b", formatScore(candidate.B));
      const dScore = el("span", "score score-d", formatScore(candidate.D));
      label.append(input, `${candidate.id} `, "B=", bScore, " D=", dScore);
      list.appendChild(label);
    }
    shortlistPanel.appendChild(list);
    const dirtyFlag = el("span", "dirty-flag");
    const save = el("button", "save-shortlist", "Save shortlist");
    save.addEventListener("click", () => void saveShortlist());
    shortlistPanel.append(save, dirtyFlag);
    renderDirty();
  };

  const renderDirty = () => {
    if (state === null) return;
    const flag = shortlistPanel.querySelector(".dirty-flag");
    if (flag !== null) {
      flag.textContent = state.dirtyShortlist ? "unsaved changes" : "";
    }
  };

  const renderDrawer = () => {
    if (state === null) return;
    drawer.textContent = "";
    const pinned = state.pinned;
    if (pinned === null) {
      drawer.classList.add("hidden");
      return;
    }
    const candidate = state.analysis?.candidates.find((c) => c.id === pinned);
    if (candidate === undefined) {
      drawer.classList.add("hidden");
      return;
    }
    drawer.classList.remove("hidden");
    drawer.appendChild(el("div", "panel-title", `candidate ${candidate.id}`));
    const scores = el("div", "drawer-scores");
    scores.append(
      "B=",
      el("span", "score score-b", formatScore(candidate.B)),
      " D=",
      el("span", "score score-d", formatScore(candidate.D)),
    );
    drawer.appendChild(scores);
    for (const line of assignmentLines(state, candidate)) {
      drawer.appendChild(el("div", "drawer-line", line));
    }
    const diagramBox = el("div", "diagram-box");
    drawer.appendChild(diagramBox);
    void api
      .diagramDot(projectId, candidate.id)
      .then((dot) => {
        if (!disposed && state?.pinned === candidate.id) {
          renderDiagram(diagramBox, dot);
        }
      })
      .catch(failedWith);
  };

  // ----- service interactions -------------------------------------------

  const runWhatIf = () => {
    if (state === null) return;
    const snapshot = state;
    if (!hasOverrides(snapshot)) {
      if (baseAnalysis !== null) {
        snapshot.analysis = baseAnalysis;
        renderPlot();
        renderShortlist();
      }
      return;
    }
    api
      .whatif(projectId, overridesBody(snapshot))
      .then((analysis) => {
        if (disposed || state !== snapshot) return;
        hideBanner();
        snapshot.analysis = analysis;
        renderPlot();
        renderShortlist();
        renderDrawer();
      })
      .catch((error: unknown) => {
        if (disposed) return;
        if (error instanceof ServiceError && error.body.status === 422) {
          const target = error.body.path
            ? sliderErrors.get(error.body.path)
            : undefined;
          if (target !== undefined) {
            target.textContent = error.body.message;
            return;
          }
        }
        failedWith(error);
      });
  };

  const whatIf = debounce(runWhatIf, WHATIF_DEBOUNCE_MS);
  const scheduleWhatIf = () => whatIf.call();

  const saveShortlist = async () => {
    if (state === null) return;
    try {
      const saved = await api.putShortlist(
        projectId,
        [...state.shortlist].sort(),
        state.revision,
      );
      state.revision = saved.revision;
      state.project.shortlist = [...state.shortlist].sort();
      state.dirtyShortlist = false;
      hideBanner();
      conflict.classList.add("hidden");
      renderDirty();
    } catch (error) {
      if (error instanceof ServiceError && error.isStaleRevision) {
        conflict.classList.remove("hidden");
        return;
      }
      failedWith(error);
    }
  };

  const load = async () => {
    const { project, revision } = await api.getProject(projectId);
    const analysis = await api.analysis(projectId);
    const working = state?.shortlist;
    const fresh = initialState(projectId, project, revision);
    fresh.analysis = analysis;
    baseAnalysis = analysis;
    if (working !== undefined) {
      // reload-and-merge: the user's working selection survives the reload
      fresh.shortlist = working;
      fresh.dirtyShortlist =
        JSON.stringify([...working].sort()) !==
        JSON.stringify([...project.shortlist].sort());
    }
    state = fresh;
    hideBanner();
    conflict.classList.add("hidden");
    renderAll();
  };

  const reload = async () => {
    try {
      await load();
    } catch (error) {
      failedWith(error);
      throw error;
    }
  };

  bannerRetry.addEventListener("click", () => void reload().catch(() => {}));
  conflictReload.addEventListener("click", () => void reload().catch(() => {}));

  const beforeUnload = (event: BeforeUnloadEvent) => {
    if (state?.dirtyShortlist) {
      event.preventDefault();
      event.returnValue = "";
    }
  };
  window.addEventListener("beforeunload", beforeUnload);

  const ready = load().catch((error: unknown) => {
    failedWith(error);
    throw error;
  });

  return {
    ready,
    get state() {
      if (state === null) {
        throw new Error("explorer not loaded yet");
      }
      return state;
    },
    reload,
    dispose() {
      disposed = true;
      whatIf.cancel();
      window.removeEventListener("beforeunload", beforeUnload);
    },
  };
}
