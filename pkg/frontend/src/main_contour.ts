/** CLI: render a digit-map figure from a grid CSV.
 *
 * Usage:
 *   node dist/main_contour.js --grid grid.csv --out fig.svg \
 *        [--poles poles.csv] [--model model.json] [--clip 0.1]
 */

import { readFileSync, writeFileSync } from "node:fs";

import { parseArgs, requireFlag } from "./args.js";
import { buildContourFigure } from "./contour.js";
import { parseGrid, parseModel, parsePoles } from "./csv.js";

function main(): void {
  const parsed = parseArgs(process.argv.slice(2));
  const gridPath = requireFlag(parsed, "grid");
  const out = requireFlag(parsed, "out");
  const clip = parsed.flags["clip"] ? Number(parsed.flags["clip"]) : 0.1;
  const cells = parseGrid(readFileSync(gridPath, "utf8"));
  const poles = parsed.flags["poles"]
    ? parsePoles(readFileSync(parsed.flags["poles"], "utf8"))
    : [];
  const model = parsed.flags["model"]
    ? parseModel(readFileSync(parsed.flags["model"], "utf8"))
    : null;
  const fig = buildContourFigure(cells, poles, model, clip);
  writeFileSync(out, fig.svg);
  console.log(
    `wrote ${out} (${cells.length} cells, ${fig.whiteCells} clipped, ` +
      `${fig.markerCounts.poles} poles, ${fig.markerCounts.zeros} zeros, ` +
      `${fig.markerCounts.doublets} doublets, ${fig.markerCounts.supports} supports)`,
  );
}

main();
