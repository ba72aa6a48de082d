/**
 * Minimal SVG assembly: linear scales, axes, polylines, and a diverging-free
 * single-hue colormap for fidelity values in [1/2, 1].
 *
 * Output contains no timestamps or random ids, so identical inputs render to
 * byte-identical files.
 */

export interface Scale {
  (v: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const fn = ((v: number) => r0 + ((v - d0) / span) * (r1 - r0)) as Scale;
  fn.domain = domain;
  fn.range = range;
  return fn;
}

export function ticks(lo: number, hi: number, count: number): number[] {
  const span = hi - lo;
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const candidates = [step * 10, step * 5, step * 2, step].filter(
    (s) => span / s >= count - 2,
  );
  const chosen = candidates.length ? candidates[0] : step;
  const out: number[] = [];
  for (let v = Math.ceil(lo / chosen) * chosen; v <= hi + 1e-12; v += chosen) {
    out.push(Number(v.toPrecision(12)));
  }
  return out;
}

const fmt = (v: number) => Number(v.toPrecision(6)).toString();

export class Svg {
  private parts: string[] = [];

  constructor(readonly width: number, readonly height: number) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
        `viewBox="0 0 ${width} ${height}" font-family="sans-serif" font-size="11">`,
      `<rect width="${width}" height="${height}" fill="white"/>`,
    );
  }

  raw(element: string): void {
    this.parts.push(element);
  }

  rect(x: number, y: number, w: number, h: number, fill: string): void {
    this.parts.push(
      `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" fill="${fill}"/>`,
    );
  }

  line(x1: number, y1: number, x2: number, y2: number, style: string): void {
    this.parts.push(
      `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" ${style}/>`,
    );
  }

  polyline(points: Array<[number, number]>, style: string, cls?: string): void {
    const attr = cls ? ` class="${cls}"` : "";
    const pts = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    this.parts.push(`<polyline${attr} points="${pts}" fill="none" ${style}/>`);
  }

  circle(x: number, y: number, r: number, style: string): void {
    this.parts.push(`<circle cx="${fmt(x)}" cy="${fmt(y)}" r="${r}" ${style}/>`);
  }

  text(x: number, y: number, content: string, anchor = "middle", extra = ""): void {
    this.parts.push(
      `<text x="${fmt(x)}" y="${fmt(y)}" text-anchor="${anchor}" ${extra}>${content}</text>`,
    );
  }

  render(): string {
    return this.parts.join("\n") + "\n</svg>\n";
  }
}

/** Axes with ticks and labels around a plot area. */
export function drawAxes(
  svg: Svg,
  x: Scale,
  y: Scale,
  xLabel: string,
  yLabel: string,
): void {
  const [x0, x1] = x.range;
  const [y0, y1] = y.range;
  const axisStyle = 'stroke="black" stroke-width="1"';
  svg.line(x0, y0, x1, y0, axisStyle);
  svg.line(x0, y0, x0, y1, axisStyle);
  for (const t of ticks(x.domain[0], x.domain[1], 6)) {
    svg.line(x(t), y0, x(t), y0 + 4, axisStyle);
    svg.text(x(t), y0 + 16, fmt(t));
  }
  for (const t of ticks(y.domain[0], y.domain[1], 6)) {
    svg.line(x0 - 4, y(t), x0, y(t), axisStyle);
    svg.text(x0 - 7, y(t) + 3, fmt(t), "end");
  }
  svg.text((x0 + x1) / 2, y0 + 32, xLabel);
  svg.text(14, (y0 + y1) / 2, yLabel, "middle", `transform="rotate(-90 14 ${(y0 + y1) / 2})"`);
}

/** Map a fidelity in [vmin, vmax] to a blue-to-warm hex color. */
export function fidelityColor(v: number, vmin: number, vmax: number): string {
  const t = Math.max(0, Math.min(1, (v - vmin) / (vmax - vmin || 1)));
  const r = Math.round(40 + 215 * t);
  const g = Math.round(60 + 140 * t);
  const b = Math.round(180 - 120 * t);
  return `#${((1 << 24) | (r << 16) | (g << 8) | b).toString(16).slice(1)}`;
}
