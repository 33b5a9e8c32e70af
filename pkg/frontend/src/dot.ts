/** Client-side rendering of the service's diagram.dot output.
 *
 * The service emits a fixed DOT subset (digraph, node and edge statements
 * with bracketed attribute lists, double-quoted strings), so a small parser
 * plus a layered layout is enough to draw the enriched pattern without a
 * graph library. */

export interface DotNode {
  id: string;
  label: string;
  shape: string;
  cls: string;
}

export interface DotEdge {
  from: string;
  to: string;
  label: string | null;
  cls: string;
  dashed: boolean;
  taillabel: string | null;
  headlabel: string | null;
}

export interface DotGraph {
  name: string;
  nodes: DotNode[];
  edges: DotEdge[];
}

const TOKEN = /"(?:[^"\\]|\\.)*"|->|[{}[\];=]|[A-Za-z0-9_.\-]+/g;

function unquote(token: string): string {
  if (!token.startsWith('"')) return token;
  return token
    .slice(1, -1)
    .replace(/\\"/g, '"')
    .replace(/\\\\/g, "\\");
}

export function parseDot(text: string): DotGraph {
  const tokens = text.match(TOKEN) ?? [];
  let pos = 0;
  const peek = () => tokens[pos];
  const next = () => tokens[pos++];
  const expect = (want: string) => {
    const got = next();
    if (got !== want) {
      throw new Error(`DOT parse error: expected ${want}, got ${got ?? "<eof>"}`);
    }
  };

  expect("digraph");
  const name = unquote(next() ?? "");
  expect("{");

  const nodes: DotNode[] = [];
  const edges: DotEdge[] = [];

  const parseAttrs = (): Record<string, string> => {
    const attrs: Record<string, string> = {};
    if (peek() !== "[") return attrs;
    next();
    while (peek() !== "]") {
      const key = unquote(next() ?? "");
      expect("=");
      attrs[key] = unquote(next() ?? "");
    }
    next();
    return attrs;
  };

  while (peek() !== "}" && peek() !== undefined) {
    const head = unquote(next() ?? "");
    if (peek() === "->") {
      next();
      const tail = unquote(next() ?? "");
      const attrs = parseAttrs();
      edges.push({
        from: head,
        to: tail,
        label: attrs.label ?? null,
        cls: attrs.class ?? "",
        dashed: attrs.style === "dashed",
        taillabel: attrs.taillabel ?? null,
        headlabel: attrs.headlabel ?? null,
      });
    } else {
      const attrs = parseAttrs();
      if (head !== "graph" && head !== "node" && head !== "edge") {
        nodes.push({
          id: head,
          label: attrs.label ?? head,
          shape: attrs.shape ?? "box",
          cls: attrs.class ?? "",
        });
      }
    }
    expect(";");
  }
  expect("}");
  return { name, nodes, edges };
}

const COLUMN_BY_CLASS: Record<string, number> = {
  environment: 0,
  sensor: 1,
  external_sensor: 1,
  capability: 2,
  actuator: 3,
  external_actuator: 3,
  external_node: 3,
  representation: 4,
};

interface Placed extends DotNode {
  x: number;
  y: number;
}

/** Columns by node role, rows by order of appearance within a column. */
export function layout(
  graph: DotGraph,
  width = 720,
  height = 420,
): Map<string, Placed> {
  const columns = new Map<number, DotNode[]>();
  for (const node of graph.nodes) {
    const column = COLUMN_BY_CLASS[node.cls] ?? 2;
    if (!columns.has(column)) columns.set(column, []);
    columns.get(column)!.push(node);
  }
  const usedColumns = [...columns.keys()].sort((a, b) => a - b);
  const placed = new Map<string, Placed>();
  usedColumns.forEach((column, columnIndex) => {
    const items = columns.get(column)!;
    const x = ((columnIndex + 1) / (usedColumns.length + 1)) * width;
    items.forEach((node, rowIndex) => {
      const y = ((rowIndex + 1) / (items.length + 1)) * height;
      placed.set(node.id, { ...node, x, y });
    });
  });
  return placed;
}

const SVG_NS = "http://www.w3.org/2000/svg";

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    el.setAttribute(key, value);
  }
  return el;
}

/** Draw the parsed graph into `container` as SVG. */
export function renderDiagram(
  container: HTMLElement,
  dotText: string,
  width = 720,
  height = 420,
): void {
  container.textContent = "";
  const graph = parseDot(dotText);
  const placed = layout(graph, width, height);
  const svg = svgEl("svg", {
    width: String(width),
    height: String(height),
    viewBox: `0 0 ${width} ${height}`,
    class: "diagram",
  });
  container.appendChild(svg);

  for (const edge of graph.edges) {
    const from = placed.get(edge.from);
    const to = placed.get(edge.to);
    if (from === undefined || to === undefined) continue;
    const line = svgEl("line", {
      x1: String(from.x),
      y1: String(from.y),
      x2: String(to.x),
      y2: String(to.y),
      class: `edge ${edge.cls}`.trim(),
    });
    if (edge.dashed) line.setAttribute("stroke-dasharray", "5 4");
    svg.appendChild(line);
    if (edge.label !== null) {
      const text = svgEl("text", {
        x: String((from.x + to.x) / 2),
        y: String((from.y + to.y) / 2 - 4),
        "text-anchor": "middle",
        class: "edgelabel",
      });
      text.textContent = edge.label;
      svg.appendChild(text);
    }
    const multiplicity = (value: string | null, fx: number, fy: number) => {
      if (value === null || value === "") return;
      const text = svgEl("text", {
        x: String(fx),
        y: String(fy - 4),
        "text-anchor": "middle",
        class: "mult",
      });
      text.textContent = value;
      svg.appendChild(text);
    };
    multiplicity(edge.taillabel, from.x * 0.8 + to.x * 0.2, from.y * 0.8 + to.y * 0.2);
    multiplicity(edge.headlabel, from.x * 0.2 + to.x * 0.8, from.y * 0.2 + to.y * 0.8);
  }

  for (const node of placed.values()) {
    const boxWidth = Math.max(72, node.label.length * 6.6 + 14);
    const group = svgEl("g", { class: `node ${node.cls}`.trim(), "data-id": node.id });
    if (node.shape === "ellipse" || node.shape === "diamond") {
      group.appendChild(
        svgEl("ellipse", {
          cx: String(node.x),
          cy: String(node.y),
          rx: String(boxWidth / 2),
          ry: "16",
        }),
      );
    } else {
      group.appendChild(
        svgEl("rect", {
          x: String(node.x - boxWidth / 2),
          y: String(node.y - 14),
          width: String(boxWidth),
          height: "28",
          rx: node.shape === "note" ? "0" : "4",
        }),
      );
    }
    const text = svgEl("text", {
      x: String(node.x),
      y: String(node.y + 4),
      "text-anchor": "middle",
      class: "nodelabel",
    });
    text.textContent = node.label;
    group.appendChild(text);
    svg.appendChild(group);
  }
}
