#!/usr/bin/env node
/**
 * Render SVG figures from a simulator run directory.
 *
 *   gecsim-figures render --run <dir> --figure gec --out gec.svg
 *   gecsim-figures render-all --run <dir> --out-dir figures/
 */

import { mkdirSync, writeFileSync } from "node:fs";
import { join } from "node:path";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { FIGURES, renderFromRunDir, type FigureName } from "./figures.js";
import { SchemaError } from "./schemas.js";

function fail(message: string): never {
  console.error(`error: ${message}`);
  process.exit(1);
}

await yargs(hideBin(process.argv))
  .command(
    "render",
    "render one figure style",
    (y) =>
      y
        .option("run", { type: "string", demandOption: true, describe: "run directory with CSV/JSON outputs" })
        .option("figure", { choices: FIGURES, demandOption: true })
        .option("ell", { type: "number", describe: "cut position for the entropy figure" })
        .option("out", { type: "string", demandOption: true }),
    (argv) => {
      try {
        writeFileSync(argv.out, renderFromRunDir(argv.run, argv.figure as FigureName, argv.ell));
        console.log(`wrote ${argv.out}`);
      } catch (err) {
        if (err instanceof SchemaError) fail(err.message);
        throw err;
      }
    }
  )
  .command(
    "render-all",
    "render every figure style into a directory",
    (y) =>
      y
        .option("run", { type: "string", demandOption: true })
        .option("out-dir", { type: "string", demandOption: true })
        .option("ell", { type: "number" }),
    (argv) => {
      mkdirSync(argv.outDir, { recursive: true });
      for (const figure of FIGURES) {
        try {
          const path = join(argv.outDir, `${figure}.svg`);
          writeFileSync(path, renderFromRunDir(argv.run, figure, argv.ell));
          console.log(`wrote ${path}`);
        } catch (err) {
          if (err instanceof SchemaError) fail(`${figure}: ${err.message}`);
          throw err;
        }
      }
    }
  )
  .demandCommand(1)
  .strict()
  .help()
  .parse();
