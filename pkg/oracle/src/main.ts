/** Emit every golden-vector suite as CSV files. Usage: main.js [--out DIR] [suite...] */

import * as fs from "fs";
import * as path from "path";

import { SUITES, toCsv } from "./suites";

function main(argv: string[]): number {
  let outDir = "golden";
  const picked: string[] = [];
  for (let i = 0; i < argv.length; i += 1) {
    if (argv[i] === "--out") {
      outDir = argv[i + 1];
      i += 1;
    } else {
      picked.push(argv[i]);
    }
  }
  const names = picked.length > 0 ? picked : Object.keys(SUITES);
  fs.mkdirSync(outDir, { recursive: true });
  for (const name of names) {
    const suite = SUITES[name];
    if (!suite) {
      console.error(`unknown suite: ${name} (have ${Object.keys(SUITES).join(", ")})`);
      return 2;
    }
    const started = Date.now();
    const rows = suite();
    const file = path.join(outDir, `${name}.csv`);
    fs.writeFileSync(file, toCsv(rows));
    console.log(`${name}: ${rows.length} rows -> ${file} (${Date.now() - started} ms)`);
  }
  return 0;
}

process.exit(main(process.argv.slice(2)));
