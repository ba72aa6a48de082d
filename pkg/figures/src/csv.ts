/**
 * Strict reader for the simulator's CSV sweep files.
 *
 * Each schema is a list of required leading columns; extra columns (e.g. the
 * optional oracle column) are preserved. Any header or value mismatch throws
 * with the file and line so a wrong --in file fails loudly.
 */

import { readFileSync } from "node:fs";

export interface Table {
  path: string;
  columns: string[];
  rows: number[][];
}

export class SchemaError extends Error {}

export function readTable(path: string, requiredColumns: string[]): Table {
  let text: string;
  try {
    text = readFileSync(path, "utf8");
  } catch (err) {
    throw new SchemaError(`cannot read ${path}: ${(err as Error).message}`);
  }
  const lines = text.split("\n").filter((line) => line.trim().length > 0);
  if (lines.length < 2) {
    throw new SchemaError(`${path}: expected a header and at least one data row`);
  }
  const columns = lines[0].split(",").map((c) => c.trim());
  for (let i = 0; i < requiredColumns.length; i++) {
    if (columns[i] !== requiredColumns[i]) {
      throw new SchemaError(
        `${path}: expected column ${i + 1} to be '${requiredColumns[i]}', found '${columns[i] ?? "<missing>"}'`,
      );
    }
  }
  const rows: number[][] = [];
  for (let i = 1; i < lines.length; i++) {
    const parts = lines[i].split(",");
    if (parts.length !== columns.length) {
      throw new SchemaError(
        `${path}: row ${i + 1} has ${parts.length} fields, header has ${columns.length}`,
      );
    }
    const row = parts.map((p) => Number(p));
    if (row.some((v) => !Number.isFinite(v))) {
      throw new SchemaError(`${path}: non-numeric value on row ${i + 1}`);
    }
    rows.push(row);
  }
  return { path, columns, rows };
}

export interface SurfaceGrid {
  thetas: number[];
  phis: number[];
  /** values[i][j] = F(thetas[i], phis[j]) */
  values: number[][];
}

/** Reshape a theta-outer (theta, phi, fidelity) table into a rectangular grid. */
export function toSurfaceGrid(table: Table): SurfaceGrid {
  const thetas: number[] = [];
  const phis: number[] = [];
  for (const [theta, phi] of table.rows) {
    if (thetas.length === 0 || theta !== thetas[thetas.length - 1]) thetas.push(theta);
    if (thetas.length === 1) phis.push(phi);
  }
  if (thetas.length * phis.length !== table.rows.length) {
    throw new SchemaError(
      `${table.path}: rows do not form a rectangular theta-outer grid ` +
        `(${thetas.length} x ${phis.length} != ${table.rows.length})`,
    );
  }
  const values: number[][] = [];
  for (let i = 0; i < thetas.length; i++) {
    values.push(table.rows.slice(i * phis.length, (i + 1) * phis.length).map((r) => r[2]));
  }
  return { thetas, phis, values };
}
