import { createExplorer } from "./app.js";
import { createHttpClient } from "./api.js";

async function boot(): Promise<void> {
  const root = document.getElementById("app");
  if (root === null) throw new Error("missing #app container");
  const params = new URLSearchParams(window.location.search);
  // when served statically, point ?api= at the analysis service (CORS is open)
  const apiBase = params.get("api") ?? "";
  const api = createHttpClient(apiBase);
  let projectId = params.get("project");
  if (projectId === null) {
    const projects = await api.listProjects();
    if (projects.length === 0) {
      root.textContent =
        "No projects in the store yet. Add one with: " +
        "curl -X PUT /api/projects/<id> --data-binary @project.dbases.json";
      return;
    }
    if (projects.length === 1) {
      projectId = projects[0].id;
    } else {
      const list = document.createElement("ul");
      list.className = "project-picker";
      for (const project of projects) {
        const item = document.createElement("li");
        const link = document.createElement("a");
        const query = new URLSearchParams({ project: project.id });
        if (apiBase) query.set("api", apiBase);
        link.href = `?${query.toString()}`;
        link.textContent = `${project.name} (${project.id}, rev ${project.revision})`;
        item.appendChild(link);
        list.appendChild(item);
      }
      root.textContent = "";
      root.appendChild(list);
      return;
    }
  }
  createExplorer(root, api, projectId);
}

void boot().catch((error: unknown) => {
  const root = document.getElementById("app");
  if (root !== null) {
    root.textContent = `failed to start: ${String(error)}`;
  }
});
