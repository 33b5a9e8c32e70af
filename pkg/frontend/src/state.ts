import type {
  AnalysisDoc,
  CandidateDoc,
  ProjectDoc,
  WhatIfOverrides,
} from "./api.js";

export interface Filters {
  /** Candidate is visible when every slot's level is in this set. */
  levels: Set<string>;
  /** ...and every non-L0 slot's form is in this set. */
  forms: Set<string>;
  paretoOnly: boolean;
}

export interface Overrides {
  w: Record<string, number>;
  p: Record<string, number>;
}

export interface ExplorerState {
  projectId: string;
  project: ProjectDoc;
  revision: number;
  analysis: AnalysisDoc | null;
  overrides: Overrides;
  filters: Filters;
  pinned: string | null;
  shortlist: Set<string>;
  dirtyShortlist: boolean;
}

export const ALL_LEVELS = ["L0", "L1", "L2", "L3"];
export const ALL_FORMS = ["specific", "general"];

export function initialState(
  projectId: string,
  project: ProjectDoc,
  revision: number,
): ExplorerState {
  return {
    projectId,
    project,
    revision,
    analysis: null,
    overrides: { w: {}, p: {} },
    filters: {
      levels: new Set(ALL_LEVELS),
      forms: new Set(ALL_FORMS),
      paretoOnly: false,
    },
    pinned: null,
    shortlist: new Set(project.shortlist),
    dirtyShortlist: false,
  };
}

export function clampOverride(value: number): number {
  const snapped = Math.round(value * 20) / 20; // 0.05 grid
  return Math.min(2, Math.max(1, snapped));
}

export function hasOverrides(state: ExplorerState): boolean {
  return (
    Object.keys(state.overrides.w).length > 0 ||
    Object.keys(state.overrides.p).length > 0
  );
}

export function overridesBody(state: ExplorerState): WhatIfOverrides {
  const body: WhatIfOverrides = {};
  if (Object.keys(state.overrides.w).length > 0) body.w = state.overrides.w;
  if (Object.keys(state.overrides.p).length > 0) body.p = state.overrides.p;
  return body;
}

/** Effective slider value: override if set, else the stored project value. */
export function effectiveWeight(state: ExplorerState, form: string): number {
  return state.overrides.w[form] ?? state.project.score_config.w[form];
}

export function effectiveProficiency(
  state: ExplorerState,
  slotId: string,
): number {
  const slot = state.project.slots.find((s) => s.id === slotId);
  return state.overrides.p[slotId] ?? slot?.proficiency ?? 1;
}

export function visibleCandidates(state: ExplorerState): CandidateDoc[] {
  if (state.analysis === null) return [];
  return state.analysis.candidates.filter((candidate) => {
    if (state.filters.paretoOnly && !candidate.pareto) return false;
    for (const slotId of state.analysis!.slot_ids) {
      const choice = candidate.assignment[slotId];
      if (!state.filters.levels.has(choice.level)) return false;
      if (choice.form !== null && !state.filters.forms.has(choice.form)) {
        return false;
      }
    }
    return true;
  });
}

export function toggleShortlist(state: ExplorerState, candidateId: string): void {
  if (state.shortlist.has(candidateId)) {
    state.shortlist.delete(candidateId);
  } else {
    state.shortlist.add(candidateId);
  }
  state.dirtyShortlist = !sameShortlist(state);
}

function sameShortlist(state: ExplorerState): boolean {
  const saved = new Set(state.project.shortlist);
  if (saved.size !== state.shortlist.size) return false;
  for (const id of state.shortlist) {
    if (!saved.has(id)) return false;
  }
  return true;
}

/** Text for the hover/pin details of one candidate: one line per slot,
 * "<representation name> → <capability>: L<k>; <form>; <difficulty label>".
 * Level and form come from the analysis; the difficulty label is looked up
 * in the service-provided score tables (no local score arithmetic). */
export function assignmentLines(
  state: ExplorerState,
  candidate: CandidateDoc,
): string[] {
  const repNames = new Map(
    state.project.representations.map((rep) => [rep.id, rep.name]),
  );
  const repTraits = new Map(
    state.project.representations.map((rep) => [rep.id, rep.traits]),
  );
  const lines: string[] = [];
  for (const slot of state.project.slots) {
    const choice = candidate.assignment[slot.id];
    if (choice === undefined) continue;
    const repName = repNames.get(slot.representation) ?? slot.representation;
    const head = `${repName} → ${slot.capability}`;
    if (choice.level === "L0" || choice.form === null) {
      lines.push(`${head}: L0`);
      continue;
    }
    const label = difficultyLabel(state.project, slot.representation, choice.level);
    const traits = repTraits.get(slot.representation);
    lines.push(
      label === null || traits === undefined
        ? `${head}: ${choice.level}; ${choice.form}`
        : `${head}: ${choice.level}; ${choice.form}; ${label}`,
    );
  }
  return lines;
}

function difficultyLabel(
  project: ProjectDoc,
  representationId: string,
  level: string,
): string | null {
  const rep = project.representations.find((r) => r.id === representationId);
  if (rep === undefined) return null;
  const cell = `${rep.traits.structurability}_${rep.traits.tangibility}`;
  const rung = project.score_config.d[level]?.[cell];
  if (rung === undefined) return null;
  for (const [key, label] of Object.entries(project.score_config.rung_labels)) {
    if (Number(key) === rung) return label;
  }
  return null;
}
