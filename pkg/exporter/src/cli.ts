/** Standalone export script: --input corpus.jsonl --output trees.txt [--model id] */

import { parseArgs } from "node:util";

import { exportTrees, PINNED_MODEL } from "./exporter.js";

export function main(argv: string[]): number {
  let values;
  try {
    ({ values } = parseArgs({
      args: argv,
      options: {
        input: { type: "string", short: "i" },
        output: { type: "string", short: "o" },
        model: { type: "string", default: PINNED_MODEL },
      },
    }));
  } catch (error) {
    console.error(String(error));
    return 2;
  }
  if (!values.input || !values.output) {
    console.error(
      "usage: export --input <corpus.jsonl> --output <trees.txt> [--model <id>]"
    );
    return 2;
  }
  try {
    const report = exportTrees({
      input: values.input,
      output: values.output,
      model: values.model,
    });
    console.log(
      `exported ${report.sentences} trees for ${report.records} records (model ${report.model})`
    );
    for (const note of report.diagnostics) {
      console.error(`  ${note}`);
    }
    return 0;
  } catch (error) {
    console.error(String(error instanceof Error ? error.message : error));
    return 1;
  }
}

if (import.meta.url === `file://${process.argv[1]}`) {
  process.exit(main(process.argv.slice(2)));
}
