#!/usr/bin/env node
/** render_figures <figure-id> --in <csv...> --out <path> */

import { render, FigureId } from "./figures.js";
import { SchemaError } from "./csv.js";

const USAGE = "usage: render_figures <fig2|fig3|fig4|fig5> --in <csv...> --out <path>";

export function runCli(argv: string[]): number {
  const positional: string[] = [];
  const inputs: string[] = [];
  let output: string | undefined;

  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === "--in") {
      while (i + 1 < argv.length && !argv[i + 1].startsWith("--")) {
        inputs.push(argv[++i]);
      }
    } else if (arg === "--out") {
      output = argv[++i];
    } else if (arg.startsWith("--")) {
      console.error(`unknown flag ${arg}\n${USAGE}`);
      return 2;
    } else {
      positional.push(arg);
    }
  }

  if (positional.length !== 1 || !output || inputs.length === 0) {
    console.error(USAGE);
    return 2;
  }

  try {
    render({ figure: positional[0] as FigureId, inputs, output });
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`error: ${(err as Error).message}`);
      return 2;
    }
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
  console.log(`wrote ${output}`);
  return 0;
}

// invoked as a script (bin or node dist/cli.js)
if (import.meta.url === `file://${process.argv[1]}`) {
  process.exit(runCli(process.argv.slice(2)));
}
