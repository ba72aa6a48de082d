/**
 * Marching-squares contour extraction on a rectangular grid.
 *
 * Returns open/closed polylines in data coordinates (x = column axis,
 * y = row axis). Good enough for smooth fidelity surfaces; saddle cells are
 * split by the mean-value rule.
 */

export type Point = [number, number];

interface Segment {
  a: Point;
  b: Point;
}

function interp(level: number, p1: number, v1: number, p2: number, v2: number): number {
  if (v1 === v2) return p1;
  return p1 + ((level - v1) / (v2 - v1)) * (p2 - p1);
}

/** values[i][j] sampled at (ys[i], xs[j]); returns polylines of [x, y] points. */
export function contourLines(
  xs: number[],
  ys: number[],
  values: number[][],
  level: number,
): Point[][] {
  const segments: Segment[] = [];
  for (let i = 0; i < ys.length - 1; i++) {
    for (let j = 0; j < xs.length - 1; j++) {
      const v00 = values[i][j];
      const v01 = values[i][j + 1];
      const v10 = values[i + 1][j];
      const v11 = values[i + 1][j + 1];
      let code =
        (v00 >= level ? 1 : 0) |
        (v01 >= level ? 2 : 0) |
        (v11 >= level ? 4 : 0) |
        (v10 >= level ? 8 : 0);
      if (code === 0 || code === 15) continue;

      const x0 = xs[j];
      const x1 = xs[j + 1];
      const y0 = ys[i];
      const y1 = ys[i + 1];
      const top: Point = [interp(level, x0, v00, x1, v01), y0];
      const bottom: Point = [interp(level, x0, v10, x1, v11), y1];
      const left: Point = [x0, interp(level, y0, v00, y1, v10)];
      const right: Point = [x1, interp(level, y0, v01, y1, v11)];

      const add = (a: Point, b: Point) => segments.push({ a, b });
      switch (code) {
        case 1: case 14: add(left, top); break;
        case 2: case 13: add(top, right); break;
        case 3: case 12: add(left, right); break;
        case 4: case 11: add(right, bottom); break;
        case 6: case 9: add(top, bottom); break;
        case 7: case 8: add(left, bottom); break;
        case 5:
        case 10: {
          const center = (v00 + v01 + v10 + v11) / 4;
          const high = (code === 5) === (center >= level);
          if (high) { add(left, top); add(right, bottom); }
          else { add(left, bottom); add(top, right); }
          break;
        }
      }
    }
  }
  return stitch(segments);
}

const keyOf = (p: Point) => `${p[0].toPrecision(12)}:${p[1].toPrecision(12)}`;

/** Join segments that share endpoints into polylines. */
function stitch(segments: Segment[]): Point[][] {
  const unused = new Set(segments.map((_, k) => k));
  const byEnd = new Map<string, number[]>();
  segments.forEach((s, k) => {
    for (const p of [s.a, s.b]) {
      const key = keyOf(p);
      const list = byEnd.get(key) ?? [];
      list.push(k);
      byEnd.set(key, list);
    }
  });

  const take = (point: Point): Segment | undefined => {
    for (const k of byEnd.get(keyOf(point)) ?? []) {
      if (!unused.has(k)) continue;
      unused.delete(k);
      const s = segments[k];
      return keyOf(s.a) === keyOf(point) ? s : { a: s.b, b: s.a };
    }
    return undefined;
  };

  const lines: Point[][] = [];
  while (unused.size > 0) {
    const first = unused.values().next().value as number;
    unused.delete(first);
    const line: Point[] = [segments[first].a, segments[first].b];
    for (;;) {
      const next = take(line[line.length - 1]);
      if (!next) break;
      line.push(next.b);
    }
    for (;;) {
      const prev = take(line[0]);
      if (!prev) break;
      line.unshift(prev.b);
    }
    lines.push(line);
  }
  return lines;
}
