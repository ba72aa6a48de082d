/**
 * Figure renderers for the simulator's sweep CSVs.
 *
 * fig2 - fidelity surface F(theta, phi) as a heatmap with the 3/4 and 2/3
 *        fidelity contours drawn on top
 * fig3 - average-fidelity decay curves with the 2/3 classical-bound line
 * fig4 - fidelity spread g(kappa_tau) = max F - min F
 * fig5 - gate-noise decay point sets with fixed-asymptote fit overlays
 *
 * Rendering is read-only over its inputs and timestamp-free: identical CSVs
 * produce byte-identical SVGs.
 */

import { writeFileSync } from "node:fs";
import { basename } from "node:path";

import { readTable, toSurfaceGrid, SchemaError } from "./csv.js";
import { contourLines } from "./contours.js";
import { Svg, drawAxes, fidelityColor, linearScale } from "./svg.js";
import { fitDecay } from "./fit.js";

export type FigureId = "fig2" | "fig3" | "fig4" | "fig5";

export interface FigureSpec {
  figure: FigureId;
  inputs: string[];
  output: string;
}

const WIDTH = 640;
const HEIGHT = 480;
const MARGIN = { left: 64, right: 24, top: 36, bottom: 48 };
const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

const stem = (path: string) => basename(path).replace(/\.[^.]*$/, "");

function plotScales(
  xDomain: [number, number],
  yDomain: [number, number],
): { x: ReturnType<typeof linearScale>; y: ReturnType<typeof linearScale> } {
  return {
    x: linearScale(xDomain, [MARGIN.left, WIDTH - MARGIN.right]),
    y: linearScale(yDomain, [HEIGHT - MARGIN.bottom, MARGIN.top]),
  };
}

export function renderSurfaceFigure(spec: FigureSpec): string {
  if (spec.inputs.length !== 1) {
    throw new SchemaError("fig2 takes exactly one surface CSV");
  }
  const grid = toSurfaceGrid(readTable(spec.inputs[0], ["theta", "phi", "fidelity"]));
  const svg = new Svg(WIDTH, HEIGHT);
  const { x, y } = plotScales(
    [grid.thetas[0], grid.thetas[grid.thetas.length - 1]],
    [grid.phis[0], grid.phis[grid.phis.length - 1]],
  );

  // heatmap cells centered on the sample points
  const flat = grid.values.flat();
  const vmin = Math.min(...flat);
  const vmax = Math.max(...flat);
  for (let i = 0; i < grid.thetas.length; i++) {
    for (let j = 0; j < grid.phis.length; j++) {
      const x0 = x(i === 0 ? grid.thetas[0] : (grid.thetas[i - 1] + grid.thetas[i]) / 2);
      const x1 = x(
        i === grid.thetas.length - 1
          ? grid.thetas[i]
          : (grid.thetas[i] + grid.thetas[i + 1]) / 2,
      );
      const y1 = y(j === 0 ? grid.phis[0] : (grid.phis[j - 1] + grid.phis[j]) / 2);
      const y0 = y(
        j === grid.phis.length - 1 ? grid.phis[j] : (grid.phis[j] + grid.phis[j + 1]) / 2,
      );
      svg.rect(x0, y0, x1 - x0, y1 - y0, fidelityColor(grid.values[i][j], vmin, vmax));
    }
  }

  // fidelity contours at 3/4 and 2/3 (skipped automatically if never crossed)
  const levels: Array<[number, string, string]> = [
    [0.75, "contour-three-quarters", 'stroke="white" stroke-width="2"'],
    [2 / 3, "contour-two-thirds", 'stroke="white" stroke-width="2" stroke-dasharray="6 4"'],
  ];
  for (const [level, cls, style] of levels) {
    for (const line of contourLines(grid.thetas, grid.phis, transpose(grid.values), level)) {
      svg.polyline(line.map(([t, p]) => [x(t), y(p)]), style, cls);
    }
  }

  drawAxes(svg, x, y, "theta", "phi");
  svg.text(WIDTH / 2, 20, `fidelity surface: ${stem(spec.inputs[0])}`);
  svg.text(
    WIDTH - MARGIN.right,
    HEIGHT - 8,
    `F in [${vmin.toFixed(4)}, ${vmax.toFixed(4)}]; contours at 3/4 (solid), 2/3 (dashed)`,
    "end",
  );
  return svg.render();
}

function transpose(values: number[][]): number[][] {
  return values[0].map((_, j) => values.map((row) => row[j]));
}

function readSweeps(paths: string[]) {
  return paths.map((p) => {
    const table = readTable(p, ["kappa_tau", "f_avg_numeric"]);
    return {
      label: stem(p),
      xs: table.rows.map((r) => r[0]),
      ys: table.rows.map((r) => r[1]),
      oracle: table.columns[2] === "f_avg_oracle" ? table.rows.map((r) => r[2]) : undefined,
    };
  });
}

export function renderDecayFigure(spec: FigureSpec): string {
  const sweeps = readSweeps(spec.inputs);
  const xmax = Math.max(...sweeps.map((s) => s.xs[s.xs.length - 1]));
  const svg = new Svg(WIDTH, HEIGHT);
  const { x, y } = plotScales([0, xmax], [0.45, 1.02]);

  // classical-communication bound
  svg.line(
    x(0), y(2 / 3), x(xmax), y(2 / 3),
    'stroke="gray" stroke-width="1" stroke-dasharray="2 3" class="ref-two-thirds"',
  );
  svg.text(x(xmax), y(2 / 3) - 5, "2/3", "end", 'fill="gray"');

  sweeps.forEach((sweep, k) => {
    const color = PALETTE[k % PALETTE.length];
    svg.polyline(
      sweep.xs.map((v, i) => [x(v), y(sweep.ys[i])]),
      `stroke="${color}" stroke-width="1.8"`,
      "series",
    );
    if (sweep.oracle) {
      svg.polyline(
        sweep.xs.map((v, i) => [x(v), y(sweep.oracle![i])]),
        `stroke="${color}" stroke-width="1" stroke-dasharray="5 4"`,
        "oracle",
      );
    }
    svg.text(x(xmax) - 8, MARGIN.top + 14 * (k + 1), sweep.label, "end", `fill="${color}"`);
  });

  drawAxes(svg, x, y, "kappa_tau", "average fidelity");
  svg.text(WIDTH / 2, 20, "average teleportation fidelity vs noise exposure");
  return svg.render();
}

export function renderSpreadFigure(spec: FigureSpec): string {
  const curves = spec.inputs.map((p) => {
    const table = readTable(p, ["kappa_tau", "g"]);
    return {
      label: stem(p),
      xs: table.rows.map((r) => r[0]),
      ys: table.rows.map((r) => r[1]),
    };
  });
  const xmax = Math.max(...curves.map((c) => c.xs[c.xs.length - 1]));
  const ymax = Math.max(...curves.map((c) => Math.max(...c.ys)));
  const svg = new Svg(WIDTH, HEIGHT);
  const { x, y } = plotScales([0, xmax], [0, ymax * 1.1 || 1]);

  curves.forEach((curve, k) => {
    const color = PALETTE[k % PALETTE.length];
    svg.polyline(
      curve.xs.map((v, i) => [x(v), y(curve.ys[i])]),
      `stroke="${color}" stroke-width="1.8"`,
      "series",
    );
    curve.xs.forEach((v, i) => svg.circle(x(v), y(curve.ys[i]), 2.4, `fill="${color}"`));
    svg.text(x(xmax) - 8, MARGIN.top + 14 * (k + 1), curve.label, "end", `fill="${color}"`);
  });

  drawAxes(svg, x, y, "kappa_tau", "g = max F - min F");
  svg.text(WIDTH / 2, 20, "fidelity spread over input states vs noise exposure");
  return svg.render();
}

export function renderFitFigure(spec: FigureSpec): string {
  const sweeps = readSweeps(spec.inputs);
  const xmax = Math.max(...sweeps.map((s) => s.xs[s.xs.length - 1]));
  const svg = new Svg(WIDTH, HEIGHT);
  const { x, y } = plotScales([0, xmax], [0.45, 1.02]);

  svg.line(
    x(0), y(0.5), x(xmax), y(0.5),
    'stroke="gray" stroke-width="1" stroke-dasharray="2 3" class="ref-half"',
  );
  svg.text(x(xmax), y(0.5) - 5, "1/2", "end", 'fill="gray"');

  sweeps.forEach((sweep, k) => {
    const color = PALETTE[k % PALETTE.length];
    sweep.xs.forEach((v, i) =>
      svg.circle(x(v), y(sweep.ys[i]), 3, `fill="none" stroke="${color}" stroke-width="1.5"`),
    );
    const fit = fitDecay(sweep.xs, sweep.ys, 0.5);
    const curve: Array<[number, number]> = [];
    for (let i = 0; i <= 120; i++) {
      const v = (xmax * i) / 120;
      curve.push([x(v), y(fit.asymptote + fit.amplitude * Math.exp(-fit.rate * v))]);
    }
    svg.polyline(curve, `stroke="${color}" stroke-width="1.5"`, "fit-curve");
    svg.text(
      x(xmax) - 8,
      MARGIN.top + 14 * (k + 1),
      `${sweep.label}: 1/2 + ${fit.amplitude.toFixed(3)} exp(-${fit.rate.toFixed(3)} kt)`,
      "end",
      `fill="${color}"`,
    );
  });

  drawAxes(svg, x, y, "kappa_tau", "average fidelity");
  svg.text(WIDTH / 2, 20, "gate-noise decay with fixed-asymptote fits");
  return svg.render();
}

const RENDERERS: Record<FigureId, (spec: FigureSpec) => string> = {
  fig2: renderSurfaceFigure,
  fig3: renderDecayFigure,
  fig4: renderSpreadFigure,
  fig5: renderFitFigure,
};

export function render(spec: FigureSpec): void {
  const renderer = RENDERERS[spec.figure];
  if (!renderer) {
    throw new SchemaError(`unknown figure id '${spec.figure}' (expected fig2..fig5)`);
  }
  if (spec.inputs.length === 0) {
    throw new SchemaError("at least one --in CSV is required");
  }
  writeFileSync(spec.output, renderer(spec));
}
