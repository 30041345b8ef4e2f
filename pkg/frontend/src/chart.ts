// Three stacked SVG line panels (power, type M, type S against n) with
// hoverable points; clicking a point hands its n to the caller.

import type { SensitivityRow } from "./types.js";
import { fmt } from "./format.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface ChartLayout {
  width: number;
  panelHeight: number;
  margin: { left: number; right: number; top: number; bottom: number };
}

const DEFAULT_LAYOUT: ChartLayout = {
  width: 560,
  panelHeight: 120,
  margin: { left: 48, right: 16, top: 18, bottom: 22 },
};

export interface SeriesSpec {
  key: "power" | "typeM" | "typeS";
  label: string;
  color: string;
}

export const SERIES: SeriesSpec[] = [
  { key: "power", label: "Power", color: "#2563eb" },
  { key: "typeM", label: "Type M", color: "#d97706" },
  { key: "typeS", label: "Type S", color: "#dc2626" },
];

export function seriesValue(row: SensitivityRow, key: SeriesSpec["key"]): number | null {
  if (key === "power") return row.power;
  if (key === "typeS") return row.typeS;
  return row.typeM;
}

export interface PointPosition {
  n: number;
  x: number;
  y: number;
  value: number;
}

/** Map rows onto pixel positions for one panel (linear axes, padded y). */
export function layoutSeries(
  rows: SensitivityRow[],
  key: SeriesSpec["key"],
  layout: ChartLayout = DEFAULT_LAYOUT,
): PointPosition[] {
  const defined = rows.filter((r) => seriesValue(r, key) !== null);
  if (defined.length === 0) return [];
  const ns = defined.map((r) => r.n);
  const values = defined.map((r) => seriesValue(r, key) as number);
  const nLo = Math.min(...ns);
  const nHi = Math.max(...ns);
  let vLo = Math.min(...values);
  let vHi = Math.max(...values);
  if (vHi === vLo) {
    vLo -= 0.5;
    vHi += 0.5;
  }
  const innerW = layout.width - layout.margin.left - layout.margin.right;
  const innerH = layout.panelHeight - layout.margin.top - layout.margin.bottom;
  return defined.map((row, i) => ({
    n: row.n,
    value: values[i],
    x: layout.margin.left + (nHi === nLo ? innerW / 2 : ((row.n - nLo) / (nHi - nLo)) * innerW),
    y: layout.margin.top + innerH - ((values[i] - vLo) / (vHi - vLo)) * innerH,
  }));
}

export function renderChart(
  container: HTMLElement,
  rows: SensitivityRow[],
  onPick: (n: number) => void,
  layout: ChartLayout = DEFAULT_LAYOUT,
): void {
  container.textContent = "";
  const doc = container.ownerDocument;
  const svg = doc.createElementNS(SVG_NS, "svg");
  svg.setAttribute("width", String(layout.width));
  svg.setAttribute("height", String(layout.panelHeight * SERIES.length));
  svg.setAttribute("class", "sensitivity-chart");

  SERIES.forEach((series, panelIndex) => {
    const g = doc.createElementNS(SVG_NS, "g");
    g.setAttribute("transform", `translate(0, ${panelIndex * layout.panelHeight})`);
    g.setAttribute("data-series", series.key);

    const title = doc.createElementNS(SVG_NS, "text");
    title.setAttribute("x", String(layout.margin.left));
    title.setAttribute("y", "13");
    title.setAttribute("class", "chart-label");
    title.textContent = series.label;
    g.appendChild(title);

    const points = layoutSeries(rows, series.key, layout);
    if (points.length > 1) {
      const path = doc.createElementNS(SVG_NS, "path");
      path.setAttribute(
        "d",
        points.map((p, i) => `${i === 0 ? "M" : "L"}${p.x.toFixed(1)},${p.y.toFixed(1)}`).join(" "),
      );
      path.setAttribute("fill", "none");
      path.setAttribute("stroke", series.color);
      path.setAttribute("stroke-width", "1.5");
      g.appendChild(path);
    }
    for (const p of points) {
      const dot = doc.createElementNS(SVG_NS, "circle");
      dot.setAttribute("cx", p.x.toFixed(1));
      dot.setAttribute("cy", p.y.toFixed(1));
      dot.setAttribute("r", "4");
      dot.setAttribute("fill", series.color);
      dot.setAttribute("class", "chart-point");
      dot.setAttribute("data-n", String(p.n));
      const tip = doc.createElementNS(SVG_NS, "title");
      tip.textContent = `n=${p.n}: ${series.label} ${fmt(p.value)}`;
      dot.appendChild(tip);
      dot.addEventListener("click", () => onPick(p.n));
      g.appendChild(dot);
    }
    svg.appendChild(g);
  });
  container.appendChild(svg);
}
