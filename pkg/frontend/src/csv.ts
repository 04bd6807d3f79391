/** Parsers for the CSV/JSON files the fitting CLI emits. */

export interface TraceRow {
  iter: number;
  n: number;
  maxErr: number;
  argmaxRe: number;
  argmaxIm: number;
  sigmaLast: number;
  sigmaPenult: number;
  zeroWeights: number;
  elapsedS: number;
}

export interface Trace {
  rows: TraceRow[];
  status: string;
  warnings: string[];
}

export interface PoleRow {
  kind: "pole" | "zero";
  re: number;
  im: number;
  resRe: number | null;
  resIm: number | null;
  doublet: boolean;
}

export interface GridCell {
  re: number;
  im: number;
  log10AbsErr: number;
}

export interface SweepRow {
  n: number;
  variant: string;
  terminalN: number;
  coarseErr: number;
  fineErr: number;
  realPoles: number;
  minAbsIm: number;
  doubledN: number | null;
}

export interface ModelFile {
  nodes: [number, number][];
  values: [number, number][];
  weights: [number, number][];
  variant: string;
}

const TRACE_HEADER =
  "iter,N,max_err,argmax_re,argmax_im,sigma_last,sigma_penult,zero_weights,elapsed_s";
const POLES_HEADER = "kind,re,im,res_re,res_im,doublet";
const GRID_HEADER = "re,im,log10_abs_err";
const SWEEP_HEADER =
  "n,variant,terminal_n,coarse_err,fine_err,real_poles,min_abs_im,doubled_n";

/** Shortest-round-trip floats plus the inf/-inf sentinels. */
export function parseNum(token: string): number {
  if (token === "inf") return Infinity;
  if (token === "-inf") return -Infinity;
  const v = Number(token);
  if (Number.isNaN(v) && token !== "nan") {
    throw new Error(`bad numeric token: ${token}`);
  }
  return v;
}

function dataLines(text: string, header: string): string[] {
  const lines = text.trim().split("\n");
  if (lines[0] !== header) {
    throw new Error(`unexpected header: ${lines[0]}`);
  }
  return lines.slice(1);
}

export function parseTrace(text: string): Trace {
  const rows: TraceRow[] = [];
  const warnings: string[] = [];
  let status = "";
  for (const line of dataLines(text, TRACE_HEADER)) {
    if (line.startsWith("# warning=")) {
      warnings.push(line.slice("# warning=".length));
      continue;
    }
    if (line.startsWith("# status=")) {
      status = line.slice("# status=".length);
      continue;
    }
    const t = line.split(",");
    rows.push({
      iter: Number(t[0]),
      n: Number(t[1]),
      maxErr: parseNum(t[2]),
      argmaxRe: parseNum(t[3]),
      argmaxIm: parseNum(t[4]),
      sigmaLast: parseNum(t[5]),
      sigmaPenult: parseNum(t[6]),
      zeroWeights: Number(t[7]),
      elapsedS: parseNum(t[8]),
    });
  }
  if (!status) throw new Error("trace file has no status line");
  return { rows, status, warnings };
}

export function parsePoles(text: string): PoleRow[] {
  return dataLines(text, POLES_HEADER).map((line) => {
    const [kind, re, im, resRe, resIm, doublet] = line.split(",");
    if (kind !== "pole" && kind !== "zero") {
      throw new Error(`bad kind: ${kind}`);
    }
    return {
      kind,
      re: parseNum(re),
      im: parseNum(im),
      resRe: resRe === "" ? null : parseNum(resRe),
      resIm: resIm === "" ? null : parseNum(resIm),
      doublet: doublet === "true",
    };
  });
}

export function parseGrid(text: string): GridCell[] {
  return dataLines(text, GRID_HEADER).map((line) => {
    const [re, im, v] = line.split(",");
    return { re: parseNum(re), im: parseNum(im), log10AbsErr: parseNum(v) };
  });
}

export function parseSweep(text: string): SweepRow[] {
  return dataLines(text, SWEEP_HEADER).map((line) => {
    const [n, variant, tn, ce, fe, rp, mi, dn] = line.split(",");
    return {
      n: Number(n),
      variant,
      terminalN: Number(tn),
      coarseErr: parseNum(ce),
      fineErr: parseNum(fe),
      realPoles: Number(rp),
      minAbsIm: parseNum(mi),
      doubledN: dn === "" ? null : Number(dn),
    };
  });
}

export function parseModel(text: string): ModelFile {
  const doc = JSON.parse(text);
  if (!Array.isArray(doc.nodes)) throw new Error("model file has no nodes");
  return doc as ModelFile;
}
