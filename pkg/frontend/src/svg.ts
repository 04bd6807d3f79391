/** Minimal SVG scene building: scales, shapes, axes. */

export interface Scale {
  (v: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const f = ((v: number) => r0 + ((v - d0) / (d1 - d0 || 1)) * (r1 - r0)) as Scale;
  f.domain = domain;
  f.range = range;
  return f;
}

export function log10Scale(domain: [number, number], range: [number, number]): Scale {
  const inner = linearScale([Math.log10(domain[0]), Math.log10(domain[1])], range);
  const f = ((v: number) => inner(Math.log10(v))) as Scale;
  f.domain = domain;
  f.range = range;
  return f;
}

export function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function polyline(points: [number, number][], stroke: string,
                         width = 1.5, dash?: string): string {
  const pts = points.map(([x, y]) => `${x.toFixed(2)},${y.toFixed(2)}`).join(" ");
  const dashAttr = dash ? ` stroke-dasharray="${dash}"` : "";
  return `<polyline fill="none" stroke="${stroke}" stroke-width="${width}"${dashAttr} points="${pts}"/>`;
}

export function circle(x: number, y: number, r: number, fill: string,
                       stroke = "none"): string {
  return `<circle cx="${x.toFixed(2)}" cy="${y.toFixed(2)}" r="${r}" fill="${fill}" stroke="${stroke}"/>`;
}

export function rect(x: number, y: number, w: number, h: number, fill: string): string {
  return `<rect x="${x.toFixed(2)}" y="${y.toFixed(2)}" width="${w.toFixed(2)}" height="${h.toFixed(2)}" fill="${fill}"/>`;
}

export function square(x: number, y: number, half: number, stroke: string): string {
  return `<rect x="${(x - half).toFixed(2)}" y="${(y - half).toFixed(2)}" width="${2 * half}" height="${2 * half}" fill="none" stroke="${stroke}" stroke-width="1"/>`;
}

export function cross(x: number, y: number, half: number, stroke: string): string {
  return (
    `<path d="M ${(x - half).toFixed(2)} ${(y - half).toFixed(2)} L ${(x + half).toFixed(2)} ${(y + half).toFixed(2)} ` +
    `M ${(x - half).toFixed(2)} ${(y + half).toFixed(2)} L ${(x + half).toFixed(2)} ${(y - half).toFixed(2)}" ` +
    `stroke="${stroke}" stroke-width="1.2" fill="none"/>`
  );
}

export function star(x: number, y: number, r: number, fill: string): string {
  const pts: string[] = [];
  for (let k = 0; k < 10; k++) {
    const rad = k % 2 === 0 ? r : 0.45 * r;
    const a = (Math.PI * k) / 5 - Math.PI / 2;
    pts.push(`${(x + rad * Math.cos(a)).toFixed(2)},${(y + rad * Math.sin(a)).toFixed(2)}`);
  }
  return `<polygon points="${pts.join(" ")}" fill="${fill}" stroke="black" stroke-width="0.4"/>`;
}

export function text(x: number, y: number, content: string, size = 11,
                     anchor = "middle"): string {
  return `<text x="${x.toFixed(2)}" y="${y.toFixed(2)}" font-size="${size}" font-family="sans-serif" text-anchor="${anchor}">${esc(content)}</text>`;
}

export function svgDocument(width: number, height: number, body: string[]): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}">\n<rect width="${width}" height="${height}" fill="white"/>\n` +
    body.join("\n") +
    "\n</svg>\n"
  );
}

/** Few-stop blue-to-yellow map for "correct digits" fills. */
export function digitsColor(t: number): string {
  const stops: [number, [number, number, number]][] = [
    [0.0, [68, 1, 84]],
    [0.25, [59, 82, 139]],
    [0.5, [33, 145, 140]],
    [0.75, [94, 201, 98]],
    [1.0, [253, 231, 37]],
  ];
  const tt = Math.min(1, Math.max(0, t));
  for (let i = 1; i < stops.length; i++) {
    if (tt <= stops[i][0]) {
      const [t0, c0] = stops[i - 1];
      const [t1, c1] = stops[i];
      const u = (tt - t0) / (t1 - t0);
      const mix = c0.map((c, j) => Math.round(c + u * (c1[j] - c)));
      return `rgb(${mix[0]},${mix[1]},${mix[2]})`;
    }
  }
  return "rgb(253,231,37)";
}

export const VARIANT_COLORS: Record<string, string> = {
  aaa: "#1f77b4",
  smooth: "#ff7f0e",
  budget: "#2ca02c",
};
