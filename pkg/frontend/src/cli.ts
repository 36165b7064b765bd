#!/usr/bin/env node
/** qwfig: render figure PNGs from simulator CSV outputs.
 *
 * One subcommand per figure kind; exit code 2 on usage or schema errors,
 * including a named column diff when a CSV is missing columns.
 */

import { writeFileSync } from "node:fs";
import { parseArgs } from "node:util";
import { SchemaError } from "./csv.js";
import { renderGramHeatmap } from "./figures/gramHeatmap.js";
import { renderIprCurves, renderKCurves, renderNormsCurve } from "./figures/curves.js";
import { renderOtocHeatmap } from "./figures/otocHeatmap.js";

const KINDS = ["otoc-heatmap", "ipr-curves", "gram-heatmap", "norms-curve", "k-curves"] as const;

const USAGE = `usage: qwfig <kind> --input data.csv [--input more.csv] --out figure.png
kinds: ${KINDS.join(", ")}
options:
  --input PATH     input CSV (repeatable for the curve figures)
  --out PATH       output PNG path
  --pair XY        correlator pair to plot (otoc-heatmap; default: first in file)
  --cap VALUE      heatmap color cap (otoc-heatmap; default 0.25)
  --manifest PATH  run manifest for guide lines (default: <input>.manifest.json)`;

export function run(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      allowPositionals: true,
      options: {
        input: { type: "string", multiple: true },
        out: { type: "string" },
        pair: { type: "string" },
        cap: { type: "string" },
        manifest: { type: "string" },
        help: { type: "boolean" },
      },
    });
  } catch (error) {
    console.error(`qwfig: ${(error as Error).message}`);
    console.error(USAGE);
    return 2;
  }
  if (parsed.values.help) {
    console.log(USAGE);
    return 0;
  }
  const kind = parsed.positionals[0];
  const inputs = parsed.values.input ?? [];
  const out = parsed.values.out;
  if (!kind || !(KINDS as readonly string[]).includes(kind) || inputs.length === 0 || !out) {
    console.error(USAGE);
    return 2;
  }
  try {
    const png = render(kind, inputs, parsed.values);
    writeFileSync(out, png);
    console.log(out);
    return 0;
  } catch (error) {
    if (error instanceof SchemaError || (error as NodeJS.ErrnoException).code === "ENOENT") {
      console.error(`qwfig: ${(error as Error).message}`);
      return 2;
    }
    console.error(`qwfig: ${(error as Error).message}`);
    return 1;
  }
}

function render(
  kind: string,
  inputs: string[],
  values: { pair?: string; cap?: string; manifest?: string },
): Buffer {
  switch (kind) {
    case "otoc-heatmap": {
      const spec: Parameters<typeof renderOtocHeatmap>[0] = { input: inputs[0] as string };
      if (values.pair !== undefined) spec.pair = values.pair;
      if (values.manifest !== undefined) spec.manifest = values.manifest;
      if (values.cap !== undefined) {
        const cap = Number(values.cap);
        if (Number.isNaN(cap)) throw new SchemaError(`--cap is not numeric: ${values.cap}`);
        spec.cap = cap;
      }
      return renderOtocHeatmap(spec);
    }
    case "ipr-curves":
      return renderIprCurves(inputs);
    case "k-curves":
      return renderKCurves(inputs);
    case "norms-curve":
      return renderNormsCurve(inputs);
    case "gram-heatmap":
      return renderGramHeatmap(inputs[0] as string);
    default:
      throw new SchemaError(`unknown figure kind ${kind}`);
  }
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url.endsWith(process.argv[1].split("/").pop() as string);
if (invokedDirectly) {
  process.exit(run(process.argv.slice(2)));
}
