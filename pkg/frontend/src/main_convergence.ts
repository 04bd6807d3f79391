/** CLI: render a convergence figure from one or more trace CSVs.
 *
 * Usage:
 *   node dist/main_convergence.js --out fig.svg [--tol 1e-13] \
 *        aaa=path/to/aaa_trace.csv smooth=path/to/smooth_trace.csv ...
 *
 * Bare paths are labeled by file name.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { basename } from "node:path";

import { parseArgs, requireFlag } from "./args.js";
import { buildConvergenceFigure } from "./convergence.js";
import { parseTrace } from "./csv.js";

function main(): void {
  const parsed = parseArgs(process.argv.slice(2));
  const out = requireFlag(parsed, "out");
  const tol = parsed.flags["tol"] ? Number(parsed.flags["tol"]) : undefined;
  if (!parsed.positional.length) {
    throw new Error("give at least one trace CSV (label=path or path)");
  }
  const traces = parsed.positional.map((spec) => {
    const eq = spec.indexOf("=");
    const label = eq >= 0 ? spec.slice(0, eq) : basename(spec).replace(/\.csv$/, "");
    const path = eq >= 0 ? spec.slice(eq + 1) : spec;
    return { label, trace: parseTrace(readFileSync(path, "utf8")) };
  });
  const fig = buildConvergenceFigure(traces, tol);
  writeFileSync(out, fig.svg);
  console.log(`wrote ${out} (${fig.series.length} series)`);
}

main();
