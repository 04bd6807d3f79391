/** Digit-map figure: cell fills of -log10 |r - f| with pole/zero markers. */

import { GridCell, ModelFile, PoleRow } from "./csv.js";
import {
  circle,
  cross,
  digitsColor,
  linearScale,
  rect,
  square,
  star,
  svgDocument,
  text,
} from "./svg.js";

export interface ContourFigure {
  svg: string;
  whiteCells: number;
  markerCounts: { poles: number; zeros: number; doublets: number; supports: number };
}

const W = 560;
const H = 460;
const M = { left: 56, right: 16, top: 20, bottom: 40 };

export function buildContourFigure(
  cells: GridCell[],
  poles: PoleRow[] = [],
  model: ModelFile | null = null,
  clip = 0.1,
): ContourFigure {
  if (!cells.length) throw new Error("empty grid");
  const res = [...new Set(cells.map((c) => c.re))].sort((a, b) => a - b);
  const ims = [...new Set(cells.map((c) => c.im))].sort((a, b) => a - b);
  const x = linearScale([res[0], res[res.length - 1]], [M.left, W - M.right]);
  const y = linearScale([ims[0], ims[ims.length - 1]], [H - M.bottom, M.top]);
  const cellW = (W - M.left - M.right) / Math.max(res.length - 1, 1);
  const cellH = (H - M.top - M.bottom) / Math.max(ims.length - 1, 1);

  // Color by correct digits; white above the clip threshold (or at a pole).
  const digits = cells
    .map((c) => -c.log10AbsErr)
    .filter((d) => isFinite(d));
  const dMax = digits.length ? Math.max(...digits) : 16;
  const clipLog = Math.log10(clip);

  const body: string[] = [];
  let whiteCells = 0;
  for (const c of cells) {
    let fill: string;
    if (!isFinite(c.log10AbsErr) && c.log10AbsErr > 0) {
      fill = "white"; // pole sentinel
      whiteCells += 1;
    } else if (c.log10AbsErr > clipLog) {
      fill = "white";
      whiteCells += 1;
    } else {
      const d = isFinite(c.log10AbsErr) ? -c.log10AbsErr : dMax;
      fill = digitsColor(d / Math.max(dMax, 1e-9));
    }
    body.push(rect(x(c.re) - cellW / 2, y(c.im) - cellH / 2, cellW, cellH, fill));
  }

  let nPoles = 0;
  let nZeros = 0;
  let nDoublets = 0;
  for (const p of poles) {
    const px = x(p.re);
    const py = y(p.im);
    if (p.kind === "pole") {
      nPoles += 1;
      body.push(circle(px, py, 2.4, "black", "black"));
    } else {
      nZeros += 1;
      body.push(square(px, py, 2.4, "#c22"));
    }
    if (p.doublet) {
      nDoublets += 1;
      body.push(star(px, py, 6, "orange"));
    }
  }
  let nSupports = 0;
  if (model) {
    for (const [re, im] of model.nodes) {
      nSupports += 1;
      body.push(cross(x(re), y(im), 2.6, "white"));
    }
  }
  body.push(text((M.left + W - M.right) / 2, H - 10, "Re z"));
  body.push(text(14, (M.top + H - M.bottom) / 2, "Im z", 11, "middle"));
  return {
    svg: svgDocument(W, H, body),
    whiteCells,
    markerCounts: { poles: nPoles, zeros: nZeros, doublets: nDoublets, supports: nSupports },
  };
}
