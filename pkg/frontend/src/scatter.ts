import type { CandidateDoc } from "./api.js";
import { formatScore } from "./format.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface ScatterCallbacks {
  onHover: (candidateId: string | null) => void;
  onPick: (candidateId: string) => void;
}

export interface ScatterGeometry {
  width: number;
  height: number;
  margin: number;
}

const DEFAULT_GEOMETRY: ScatterGeometry = { width: 640, height: 460, margin: 48 };

function range(values: number[]): [number, number] {
  let lo = Math.min(...values);
  let hi = Math.max(...values);
  if (lo === hi) {
    lo -= 0.5;
    hi += 0.5;
  } else {
    const pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
  return [lo, hi];
}

function svgElement<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    el.setAttribute(key, value);
  }
  return el;
}

/** Render candidates as an SVG scatter: difficulty rightward, benefit upward.
 * Pareto points get the `pareto` class, shortlisted points an outer ring.
 * Score numbers shown on axes come straight from the service values via
 * formatScore. */
export function renderScatter(
  container: HTMLElement,
  candidates: CandidateDoc[],
  shortlist: Set<string>,
  callbacks: ScatterCallbacks,
  geometry: ScatterGeometry = DEFAULT_GEOMETRY,
): void {
  container.textContent = "";
  const svg = svgElement("svg", {
    width: String(geometry.width),
    height: String(geometry.height),
    viewBox: `0 0 ${geometry.width} ${geometry.height}`,
    class: "scatter",
    role: "img",
  });
  container.appendChild(svg);
  if (candidates.length === 0) {
    const empty = svgElement("text", {
      x: String(geometry.width / 2),
      y: String(geometry.height / 2),
      "text-anchor": "middle",
      class: "empty",
    });
    empty.textContent = "no candidates match the current filters";
    svg.appendChild(empty);
    return;
  }

  const [dLo, dHi] = range(candidates.map((c) => c.D));
  const [bLo, bHi] = range(candidates.map((c) => c.B));
  const { width, height, margin } = geometry;
  const x = (d: number) => margin + ((d - dLo) / (dHi - dLo)) * (width - 2 * margin);
  const y = (b: number) =>
    height - margin - ((b - bLo) / (bHi - bLo)) * (height - 2 * margin);

  svg.appendChild(
    svgElement("line", {
      x1: String(margin), y1: String(height - margin),
      x2: String(width - margin), y2: String(height - margin),
      class: "axis",
    }),
  );
  svg.appendChild(
    svgElement("line", {
      x1: String(margin), y1: String(height - margin),
      x2: String(margin), y2: String(margin),
      class: "axis",
    }),
  );
  for (let i = 0; i < 5; i++) {
    const frac = i / 4;
    const dv = dLo + frac * (dHi - dLo);
    const bv = bLo + frac * (bHi - bLo);
    const dLabel = svgElement("text", {
      x: String(x(dv)), y: String(height - margin + 16),
      "text-anchor": "middle", class: "ticklabel",
    });
    dLabel.textContent = formatScore(dv);
    svg.appendChild(dLabel);
    const bLabel = svgElement("text", {
      x: String(margin - 6), y: String(y(bv) + 4),
      "text-anchor": "end", class: "ticklabel",
    });
    bLabel.textContent = formatScore(bv);
    svg.appendChild(bLabel);
  }
  const xTitle = svgElement("text", {
    x: String(width / 2), y: String(height - 8),
    "text-anchor": "middle", class: "axislabel",
  });
  xTitle.textContent = "Difficulty (D)";
  svg.appendChild(xTitle);
  const yTitle = svgElement("text", {
    x: "14", y: String(height / 2),
    "text-anchor": "middle", class: "axislabel",
    transform: `rotate(-90 14 ${height / 2})`,
  });
  yTitle.textContent = "Benefit (B)";
  svg.appendChild(yTitle);

  const front = candidates
    .filter((c) => c.pareto)
    .sort((a, b) => a.D - b.D || a.B - b.B);
  if (front.length > 1) {
    svg.appendChild(
      svgElement("polyline", {
        points: front.map((c) => `${x(c.D)},${y(c.B)}`).join(" "),
        class: "front",
      }),
    );
  }

  for (const candidate of candidates) {
    const cx = String(x(candidate.D));
    const cy = String(y(candidate.B));
    if (shortlist.has(candidate.id)) {
      svg.appendChild(
        svgElement("circle", { cx, cy, r: "9", class: "ring" }),
      );
    }
    const point = svgElement("circle", {
      cx, cy, r: "5.5",
      class: candidate.pareto ? "point pareto" : "point",
      "data-id": candidate.id,
    });
    point.addEventListener("mouseenter", () => callbacks.onHover(candidate.id));
    point.addEventListener("mouseleave", () => callbacks.onHover(null));
    point.addEventListener("click", () => callbacks.onPick(candidate.id));
    svg.appendChild(point);
  }
}
