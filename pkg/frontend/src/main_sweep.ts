/** CLI: render the even-grid sweep figure from a sweep CSV.
 *
 * Usage: node dist/main_sweep.js --sweep sweep.csv --out fig.svg
 */

import { readFileSync, writeFileSync } from "node:fs";

import { parseArgs, requireFlag } from "./args.js";
import { parseSweep } from "./csv.js";
import { buildSweepFigure } from "./sweep.js";

function main(): void {
  const parsed = parseArgs(process.argv.slice(2));
  const sweepPath = requireFlag(parsed, "sweep");
  const out = requireFlag(parsed, "out");
  const fig = buildSweepFigure(parseSweep(readFileSync(sweepPath, "utf8")));
  writeFileSync(out, fig.svg);
  const dashedNote = fig.dashed ? ` dashed x2 reference with ${fig.dashed.x.length} points` : "";
  console.log(`wrote ${out} (${fig.series.length} series)${dashedNote}`);
}

main();
