/** Convergence-curve figure: max error vs support count, log vertical axis. */

import { Trace } from "./csv.js";
import {
  VARIANT_COLORS,
  circle,
  linearScale,
  log10Scale,
  polyline,
  svgDocument,
  text,
} from "./svg.js";

export interface ConvergenceSeries {
  label: string;
  n: number[];
  err: number[];
  status: string;
}

export interface ConvergenceFigure {
  svg: string;
  series: ConvergenceSeries[];
}

const W = 560;
const H = 420;
const M = { left: 64, right: 16, top: 24, bottom: 44 };

export function buildConvergenceFigure(
  traces: { label: string; trace: Trace }[],
  tol?: number,
): ConvergenceFigure {
  if (!traces.length) throw new Error("need at least one trace");
  const series: ConvergenceSeries[] = traces.map(({ label, trace }) => ({
    label,
    n: trace.rows.map((r) => r.n),
    err: trace.rows.map((r) => r.maxErr),
    status: trace.status,
  }));

  const allN = series.flatMap((s) => s.n);
  const allErr = series.flatMap((s) => s.err).filter((e) => e > 0 && isFinite(e));
  if (tol) allErr.push(tol);
  const nMax = Math.max(...allN);
  const errLo = Math.min(...allErr);
  const errHi = Math.max(...allErr);

  const x = linearScale([2, nMax], [M.left, W - M.right]);
  const y = log10Scale([errLo / 3, errHi * 3], [H - M.bottom, M.top]);

  const body: string[] = [];
  // frame and axis labels
  body.push(polyline([[M.left, M.top], [M.left, H - M.bottom], [W - M.right, H - M.bottom]], "#333", 1));
  body.push(text((M.left + W - M.right) / 2, H - 10, "support points N"));
  for (let d = Math.ceil(Math.log10(errLo)); d <= Math.floor(Math.log10(errHi * 3)); d += 2) {
    const yy = y(Math.pow(10, d));
    body.push(text(M.left - 8, yy + 4, `1e${d}`, 10, "end"));
    body.push(polyline([[M.left - 4, yy], [M.left, yy]], "#333", 1));
  }
  if (tol) {
    body.push(polyline([[M.left, y(tol)], [W - M.right, y(tol)]], "#888", 1, "6,4"));
    body.push(text(W - M.right - 4, y(tol) - 4, `tol ${tol}`, 10, "end"));
  }
  series.forEach((s, idx) => {
    const color = VARIANT_COLORS[s.label] ?? ["#d62728", "#9467bd", "#8c564b"][idx % 3];
    const pts: [number, number][] = s.n.map((n, i) => [x(n), y(Math.max(s.err[i], errLo / 3))]);
    body.push(polyline(pts, color, 1.6));
    for (const [px, py] of pts) body.push(circle(px, py, 2.1, color));
    const last = pts[pts.length - 1];
    body.push(text(last[0], last[1] - 8, s.label, 10));
  });
  return { svg: svgDocument(W, H, body), series };
}
