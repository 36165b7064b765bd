/** Strict CSV/manifest loading for the simulator's output contracts. */

import { readFileSync } from "node:fs";
import Papa from "papaparse";

export class SchemaError extends Error {}

export type Row = Record<string, string>;

/** Read a CSV with a header row; missing required columns fail loudly. */
export function readCsv(path: string, requiredColumns: readonly string[]): Row[] {
  const text = readFileSync(path, "utf-8");
  const parsed = Papa.parse<Row>(text, {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    throw new SchemaError(`${path}: malformed CSV: ${first?.message ?? "unknown parse error"}`);
  }
  const found = parsed.meta.fields ?? [];
  const missing = requiredColumns.filter((c) => !found.includes(c));
  if (missing.length > 0) {
    throw new SchemaError(
      `${path}: missing column(s): ${missing.join(", ")}; found: ${found.join(", ")}`,
    );
  }
  return parsed.data;
}

export function numericColumn(rows: Row[], name: string, path: string): number[] {
  return rows.map((row, i) => {
    const raw = row[name];
    const value = Number(raw);
    if (raw === undefined || raw === "" || Number.isNaN(value)) {
      throw new SchemaError(`${path}: row ${i + 2}: column '${name}' is not numeric: ${raw}`);
    }
    return value;
  });
}

export interface RunManifest {
  butterflyVelocity: number | null;
}

/** Pull the wavefront-speed estimate out of a run manifest. */
export function readManifest(path: string): RunManifest {
  const doc = JSON.parse(readFileSync(path, "utf-8")) as {
    extras?: { butterfly_velocity?: unknown };
  };
  const value = doc.extras?.butterfly_velocity;
  return { butterflyVelocity: typeof value === "number" ? value : null };
}

export function defaultManifestPath(csvPath: string): string {
  return csvPath.endsWith(".csv")
    ? `${csvPath.slice(0, -4)}.manifest.json`
    : `${csvPath}.manifest.json`;
}
