// Presentational sketches: the prior's density shape and histograms of the
// per-draw table returned by the service. Bars and curves visualize numbers
// the API supplied (or the prior's defining parameters); nothing statistical
// is computed here beyond binning for display.

const SVG_NS = "http://www.w3.org/2000/svg";

export function priorDensityPoints(
  lower: number,
  upper: number,
  distribution: "uniform" | "normal",
  k: number,
  samples = 80,
): { x: number; y: number }[] {
  const points: { x: number; y: number }[] = [];
  if (distribution === "uniform") {
    return [
      { x: lower, y: 1 },
      { x: upper, y: 1 },
    ];
  }
  const mu = (lower + upper) / 2;
  const sigma = k * (upper - lower);
  for (let i = 0; i <= samples; i++) {
    const x = lower + ((upper - lower) * i) / samples;
    const z = (x - mu) / sigma;
    points.push({ x, y: Math.exp(-0.5 * z * z) });
  }
  return points;
}

export function renderPriorSketch(
  container: HTMLElement,
  lower: number,
  upper: number,
  distribution: "uniform" | "normal",
  k: number,
): void {
  container.textContent = "";
  const doc = container.ownerDocument;
  const width = 220;
  const height = 60;
  const svg = doc.createElementNS(SVG_NS, "svg");
  svg.setAttribute("width", String(width));
  svg.setAttribute("height", String(height));
  svg.setAttribute("class", "prior-sketch");
  const points = priorDensityPoints(lower, upper, distribution, k);
  const xs = (x: number) => 6 + ((x - lower) / (upper - lower)) * (width - 12);
  const ys = (y: number) => height - 14 - y * (height - 24);
  const path = doc.createElementNS(SVG_NS, "path");
  const d =
    `M${xs(lower).toFixed(1)},${ys(0).toFixed(1)} ` +
    points.map((p) => `L${xs(p.x).toFixed(1)},${ys(p.y).toFixed(1)}`).join(" ") +
    ` L${xs(upper).toFixed(1)},${ys(0).toFixed(1)} Z`;
  path.setAttribute("d", d);
  path.setAttribute("fill", "#bfdbfe");
  path.setAttribute("stroke", "#2563eb");
  svg.appendChild(path);
  for (const [value, anchor] of [
    [lower, "start"],
    [upper, "end"],
  ] as const) {
    const label = doc.createElementNS(SVG_NS, "text");
    label.setAttribute("x", String(value === lower ? 2 : width - 2));
    label.setAttribute("y", String(height - 2));
    label.setAttribute("text-anchor", anchor);
    label.setAttribute("class", "chart-label");
    label.textContent = value.toFixed(2);
    svg.appendChild(label);
  }
  container.appendChild(svg);
}

export function histogramCounts(values: number[], bins: number): { edges: number[]; counts: number[] } {
  const finite = values.filter((v) => Number.isFinite(v));
  if (finite.length === 0) return { edges: [], counts: [] };
  let lo = Math.min(...finite);
  let hi = Math.max(...finite);
  if (hi === lo) {
    lo -= 0.5;
    hi += 0.5;
  }
  const counts = new Array(bins).fill(0);
  for (const v of finite) {
    const idx = Math.min(bins - 1, Math.floor(((v - lo) / (hi - lo)) * bins));
    counts[idx]++;
  }
  const edges = Array.from({ length: bins + 1 }, (_, i) => lo + ((hi - lo) * i) / bins);
  return { edges, counts };
}

export function renderHistogram(container: HTMLElement, values: number[], label: string): void {
  const doc = container.ownerDocument;
  const width = 180;
  const height = 90;
  const { counts } = histogramCounts(values, 20);
  const svg = doc.createElementNS(SVG_NS, "svg");
  svg.setAttribute("width", String(width));
  svg.setAttribute("height", String(height));
  svg.setAttribute("class", "draw-histogram");
  const peak = Math.max(1, ...counts);
  const barW = (width - 8) / Math.max(1, counts.length);
  counts.forEach((count, i) => {
    const bar = doc.createElementNS(SVG_NS, "rect");
    const h = (count / peak) * (height - 26);
    bar.setAttribute("x", (4 + i * barW).toFixed(1));
    bar.setAttribute("y", (height - 14 - h).toFixed(1));
    bar.setAttribute("width", Math.max(1, barW - 1).toFixed(1));
    bar.setAttribute("height", h.toFixed(1));
    bar.setAttribute("fill", "#60a5fa");
    svg.appendChild(bar);
  });
  const text = doc.createElementNS(SVG_NS, "text");
  text.setAttribute("x", String(width / 2));
  text.setAttribute("y", String(height - 2));
  text.setAttribute("text-anchor", "middle");
  text.setAttribute("class", "chart-label");
  text.textContent = label;
  svg.appendChild(text);
  container.appendChild(svg);
}
