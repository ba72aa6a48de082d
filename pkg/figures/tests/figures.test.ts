import { describe, expect, it } from "vitest";
import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { readTable, toSurfaceGrid, SchemaError } from "../src/csv.js";
import { contourLines } from "../src/contours.js";
import { fitDecay } from "../src/fit.js";
import { render } from "../src/figures.js";
import { runCli } from "../src/cli.js";

const SAMPLES = join(__dirname, "..", "sample_data");
const scratch = () => mkdtempSync(join(tmpdir(), "figtest-"));

describe("csv reader", () => {
  it("parses a sweep file", () => {
    const table = readTable(join(SAMPLES, "sweep_a1.csv"), ["kappa_tau", "f_avg_numeric"]);
    expect(table.columns).toEqual(["kappa_tau", "f_avg_numeric", "f_avg_oracle"]);
    expect(table.rows.length).toBe(21);
    expect(table.rows[0][1]).toBeCloseTo(1.0, 9);
  });

  it("rejects a header mismatch", () => {
    expect(() =>
      readTable(join(SAMPLES, "gcurve_c.csv"), ["theta", "phi", "fidelity"]),
    ).toThrow(SchemaError);
  });

  it("rejects non-numeric data", () => {
    const dir = scratch();
    const path = join(dir, "bad.csv");
    writeFileSync(path, "kappa_tau,g\n0,oops\n");
    expect(() => readTable(path, ["kappa_tau", "g"])).toThrow(/non-numeric/);
  });

  it("reshapes theta-outer surfaces", () => {
    const grid = toSurfaceGrid(
      readTable(join(SAMPLES, "surface_b_z.csv"), ["theta", "phi", "fidelity"]),
    );
    expect(grid.thetas.length).toBe(41);
    expect(grid.phis.length).toBe(41);
    // the theta = 0 row teleports perfectly under z-axis channel noise
    for (const v of grid.values[0]) expect(v).toBeCloseTo(1.0, 6);
  });
});

describe("contour extraction", () => {
  it("finds a straight contour of a linear field", () => {
    const xs = [0, 1, 2, 3];
    const ys = [0, 1, 2];
    const values = ys.map(() => xs.map((x) => x / 3));
    const lines = contourLines(xs, ys, values, 0.5);
    expect(lines.length).toBe(1);
    for (const [x] of lines[0]) expect(x).toBeCloseTo(1.5, 9);
  });

  it("returns nothing when the level is never crossed", () => {
    const xs = [0, 1];
    const ys = [0, 1];
    expect(contourLines(xs, ys, [[0, 0], [0, 0]], 0.5)).toEqual([]);
  });
});

describe("decay fit", () => {
  it("recovers exact model parameters", () => {
    const xs = Array.from({ length: 12 }, (_, i) => i * 0.4);
    const ys = xs.map((x) => 0.5 + 0.5 * Math.exp(-1.25 * x));
    const fit = fitDecay(xs, ys);
    expect(fit.rate).toBeCloseTo(1.25, 9);
    expect(fit.amplitude).toBeCloseTo(0.5, 9);
  });

  it("needs points above the asymptote", () => {
    expect(() => fitDecay([0, 1, 2], [0.5, 0.5, 0.5])).toThrow();
  });
});

describe("figure rendering", () => {
  it("fig2 draws both fidelity contours", () => {
    const out = join(scratch(), "fig2.svg");
    render({ figure: "fig2", inputs: [join(SAMPLES, "surface_b_z.csv")], output: out });
    const svg = readFileSync(out, "utf8");
    expect(svg).toContain("<svg");
    expect(svg).toContain('class="contour-three-quarters"');
    expect(svg).toContain('class="contour-two-thirds"');
  });

  it("fig2 on a flat surface renders without contours", () => {
    const out = join(scratch(), "flat.svg");
    render({ figure: "fig2", inputs: [join(SAMPLES, "surface_a_iso.csv")], output: out });
    const svg = readFileSync(out, "utf8");
    expect(svg).not.toContain('class="contour-three-quarters"');
  });

  it("fig3 overlays all sweeps plus the classical bound", () => {
    const inputs = ["sweep_a1.csv", "sweep_a2.csv", "sweep_b1.csv", "sweep_b2.csv"].map((f) =>
      join(SAMPLES, f),
    );
    const out = join(scratch(), "fig3.svg");
    render({ figure: "fig3", inputs, output: out });
    const svg = readFileSync(out, "utf8");
    expect(svg).toContain('class="ref-two-thirds"');
    expect((svg.match(/class="series"/g) ?? []).length).toBe(4);
    expect((svg.match(/class="oracle"/g) ?? []).length).toBe(4);
  });

  it("fig4 renders the spread curves", () => {
    const out = join(scratch(), "fig4.svg");
    render({
      figure: "fig4",
      inputs: [join(SAMPLES, "gcurve_c.csv"), join(SAMPLES, "gcurve_d.csv")],
      output: out,
    });
    const svg = readFileSync(out, "utf8");
    expect((svg.match(/class="series"/g) ?? []).length).toBe(2);
  });

  it("fig5 renders point sets with fit overlays", () => {
    const out = join(scratch(), "fig5.svg");
    render({
      figure: "fig5",
      inputs: [join(SAMPLES, "sweep_c.csv"), join(SAMPLES, "sweep_d.csv")],
      output: out,
    });
    const svg = readFileSync(out, "utf8");
    expect((svg.match(/class="fit-curve"/g) ?? []).length).toBe(2);
    expect(svg).toContain("exp(-");
  });

  it("rendering is deterministic", () => {
    const dir = scratch();
    const a = join(dir, "a.svg");
    const b = join(dir, "b.svg");
    const spec = { inputs: [join(SAMPLES, "sweep_c.csv")] };
    render({ figure: "fig5", ...spec, output: a });
    render({ figure: "fig5", ...spec, output: b });
    expect(readFileSync(a, "utf8")).toBe(readFileSync(b, "utf8"));
  });

  it("rejects schema mismatches", () => {
    expect(() =>
      render({
        figure: "fig2",
        inputs: [join(SAMPLES, "sweep_a1.csv")],
        output: join(scratch(), "x.svg"),
      }),
    ).toThrow(SchemaError);
  });
});

describe("cli", () => {
  it("renders via flags", () => {
    const out = join(scratch(), "cli.svg");
    const code = runCli(["fig3", "--in", join(SAMPLES, "sweep_b1.csv"), "--out", out]);
    expect(code).toBe(0);
    expect(readFileSync(out, "utf8")).toContain("ref-two-thirds");
  });

  it("usage error without --out", () => {
    expect(runCli(["fig3", "--in", join(SAMPLES, "sweep_b1.csv")])).toBe(2);
  });

  it("propagates schema errors as exit 2", () => {
    const code = runCli([
      "fig2",
      "--in",
      join(SAMPLES, "gcurve_c.csv"),
      "--out",
      join(scratch(), "x.svg"),
    ]);
    expect(code).toBe(2);
  });

  it("rejects unknown figure ids", () => {
    const code = runCli([
      "fig9",
      "--in",
      join(SAMPLES, "sweep_b1.csv"),
      "--out",
      join(scratch(), "x.svg"),
    ]);
    expect(code).toBe(2);
  });
});
