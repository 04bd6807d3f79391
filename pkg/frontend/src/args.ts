/** Tiny argv splitter: --flag value pairs plus positional leftovers. */

export interface Parsed {
  flags: Record<string, string>;
  positional: string[];
}

export function parseArgs(argv: string[]): Parsed {
  const flags: Record<string, string> = {};
  const positional: string[] = [];
  let i = 0;
  while (i < argv.length) {
    const tok = argv[i];
    if (tok.startsWith("--")) {
      const key = tok.slice(2);
      const val = argv[i + 1];
      if (val === undefined) throw new Error(`missing value for --${key}`);
      flags[key] = val;
      i += 2;
    } else {
      positional.push(tok);
      i += 1;
    }
  }
  return { flags, positional };
}

export function requireFlag(parsed: Parsed, name: string): string {
  const v = parsed.flags[name];
  if (v === undefined) throw new Error(`--${name} is required`);
  return v;
}
