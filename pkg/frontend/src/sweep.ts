/** Even-grid sweep figure: fine-grid error vs sample count per driver,
 * dots where real poles appeared, dashed doubled-n budget reference. */

import { SweepRow } from "./csv.js";
import {
  VARIANT_COLORS,
  circle,
  linearScale,
  log10Scale,
  polyline,
  svgDocument,
  text,
} from "./svg.js";

export interface SweepSeries {
  variant: string;
  n: number[];
  err: number[];
  realPoleN: number[];
}

export interface SweepFigure {
  svg: string;
  series: SweepSeries[];
  dashed: { x: number[]; y: number[] } | null;
}

const W = 560;
const H = 420;
const M = { left: 64, right: 16, top: 24, bottom: 44 };

export function buildSweepFigure(rows: SweepRow[]): SweepFigure {
  if (!rows.length) throw new Error("empty sweep table");
  const variants = [...new Set(rows.map((r) => r.variant))];
  const series: SweepSeries[] = variants.map((variant) => {
    const mine = rows.filter((r) => r.variant === variant);
    return {
      variant,
      n: mine.map((r) => r.n),
      err: mine.map((r) => r.fineErr),
      realPoleN: mine.filter((r) => r.realPoles > 0).map((r) => r.n),
    };
  });
  const budget = rows.filter((r) => r.variant === "budget" && r.doubledN !== null);
  const dashed = budget.length
    ? { x: budget.map((r) => r.doubledN as number), y: budget.map((r) => r.fineErr) }
    : null;

  const xsAll = rows.map((r) => r.n).concat(dashed ? dashed.x : []);
  const errAll = rows.map((r) => r.fineErr).filter((e) => e > 0 && isFinite(e));
  const x = linearScale([Math.min(...xsAll), Math.max(...xsAll)], [M.left, W - M.right]);
  const lo = Math.min(...errAll);
  const hi = Math.max(...errAll);
  const y = log10Scale([lo / 3, hi * 3], [H - M.bottom, M.top]);
  const clampY = (e: number) => y(Math.min(Math.max(e, lo / 3), hi * 3));

  const body: string[] = [];
  body.push(polyline([[M.left, M.top], [M.left, H - M.bottom], [W - M.right, H - M.bottom]], "#333", 1));
  body.push(text((M.left + W - M.right) / 2, H - 10, "grid size n"));
  for (let d = Math.ceil(Math.log10(lo)); d <= Math.floor(Math.log10(hi * 3)); d += 2) {
    const yy = y(Math.pow(10, d));
    body.push(text(M.left - 8, yy + 4, `1e${d}`, 10, "end"));
  }
  for (const s of series) {
    const color = VARIANT_COLORS[s.variant] ?? "#555";
    const errByN = new Map(s.n.map((n, i) => [n, s.err[i]]));
    body.push(polyline(s.n.map((n, i) => [x(n), clampY(s.err[i])]), color, 1.6));
    for (const n of s.realPoleN) {
      body.push(circle(x(n), clampY(errByN.get(n) as number), 3.2, color, "black"));
    }
    body.push(text(x(s.n[s.n.length - 1]), clampY(s.err[s.err.length - 1]) - 8, s.variant, 10));
  }
  if (dashed) {
    body.push(polyline(dashed.x.map((n, i) => [x(n), clampY(dashed.y[i])]), "black", 1.2, "6,4"));
  }
  return { svg: svgDocument(W, H, body), series, dashed };
}
