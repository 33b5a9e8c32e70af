/** Typed client for the analysis service. The explorer talks to the backend
 * exclusively through this interface; tests substitute a mock. */

export interface SlotAssignment {
  level: string;
  form: string | null;
}

export interface CandidateDoc {
  id: string;
  assignment: Record<string, SlotAssignment>;
  B: number;
  D: number;
  pareto: boolean;
  shortlisted: boolean;
}

export interface AnalysisDoc {
  slot_ids: string[];
  candidates: CandidateDoc[];
}

export interface ProjectSummary {
  id: string;
  name: string;
  revision: number;
}

export interface SlotDoc {
  id: string;
  representation: string;
  capability: string;
  allowed_levels: string[];
  allowed_forms: string[];
  proficiency: number;
}

export interface RepresentationDoc {
  id: string;
  name: string;
  category: unknown;
  traits: { structurability: string; tangibility: string };
  compatible_capabilities: string[];
}

export interface ScoreConfigDoc {
  w: Record<string, number>;
  b: Record<string, number>;
  d: Record<string, Record<string, number>>;
  rung_labels: Record<string, string>;
}

export interface ProjectDoc {
  schema_version: number;
  meta: { name: string; description: string };
  pattern: unknown;
  representations: RepresentationDoc[];
  slots: SlotDoc[];
  constraints: unknown[];
  score_config: ScoreConfigDoc;
  shortlist: string[];
}

export interface WhatIfOverrides {
  w?: Record<string, number>;
  p?: Record<string, number>;
}

export interface ApiErrorBody {
  status: number;
  code: string;
  message: string;
  path?: string;
}

/** A non-2xx service response, carrying the structured error body. */
export class ServiceError extends Error {
  constructor(readonly body: ApiErrorBody) {
    super(body.message);
    this.name = "ServiceError";
  }

  get isStaleRevision(): boolean {
    return this.body.code === "stale_revision";
  }
}

export interface ApiClient {
  listProjects(): Promise<ProjectSummary[]>;
  getProject(id: string): Promise<{ project: ProjectDoc; revision: number }>;
  analysis(id: string): Promise<AnalysisDoc>;
  whatif(id: string, overrides: WhatIfOverrides): Promise<AnalysisDoc>;
  putShortlist(
    id: string,
    candidateIds: string[],
    revision: number,
  ): Promise<{ revision: number }>;
  diagramDot(id: string, candidateId?: string): Promise<string>;
}

export const REVISION_HEADER = "X-Revision";

async function parseError(response: Response): Promise<ServiceError> {
  let body: ApiErrorBody;
  try {
    body = (await response.json()) as ApiErrorBody;
  } catch {
    body = {
      status: response.status,
      code: "unknown",
      message: `HTTP ${response.status}`,
    };
  }
  return new ServiceError(body);
}

async function expectOk(response: Response): Promise<Response> {
  if (!response.ok) {
    throw await parseError(response);
  }
  return response;
}

export function createHttpClient(baseUrl = ""): ApiClient {
  const url = (path: string) => `${baseUrl}${path}`;
  return {
    async listProjects() {
      const response = await expectOk(await fetch(url("/api/projects")));
      return (await response.json()) as ProjectSummary[];
    },

    async getProject(id) {
      const response = await expectOk(
        await fetch(url(`/api/projects/${encodeURIComponent(id)}`)),
      );
      const revision = Number(response.headers.get(REVISION_HEADER) ?? "0");
      return { project: (await response.json()) as ProjectDoc, revision };
    },

    async analysis(id) {
      const response = await expectOk(
        await fetch(url(`/api/projects/${encodeURIComponent(id)}/analysis`), {
          method: "POST",
        }),
      );
      return (await response.json()) as AnalysisDoc;
    },

    async whatif(id, overrides) {
      const response = await expectOk(
        await fetch(url(`/api/projects/${encodeURIComponent(id)}/whatif`), {
          method: "POST",
          headers: { "Content-Type": "application/json" },
          body: JSON.stringify(overrides),
        }),
      );
      return (await response.json()) as AnalysisDoc;
    },

    async putShortlist(id, candidateIds, revision) {
      const response = await expectOk(
        await fetch(url(`/api/projects/${encodeURIComponent(id)}/shortlist`), {
          method: "PUT",
          headers: {
            "Content-Type": "application/json",
            [REVISION_HEADER]: String(revision),
          },
          body: JSON.stringify(candidateIds),
        }),
      );
      return (await response.json()) as { revision: number };
    },

    async diagramDot(id, candidateId) {
      const query =
        candidateId === undefined
          ? ""
          : `?candidate=${encodeURIComponent(candidateId)}`;
      const response = await expectOk(
        await fetch(
          url(`/api/projects/${encodeURIComponent(id)}/diagram.dot${query}`),
        ),
      );
      return response.text();
    },
  };
}
