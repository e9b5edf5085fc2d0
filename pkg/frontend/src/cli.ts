#!/usr/bin/env node
/** `render --spec <file>` or `render --csv <file> --kind <k> --out <png>`. */

import { FIGURE_KINDS, parseSpecFile, render, validateSpec, type FigureKind } from "./figure.js";

function usage(): string {
  return [
    "usage: irsdm-figures render --spec <file.json>",
    "       irsdm-figures render --csv <file.csv> --kind <kind> --out <file.png>",
    `kinds: ${FIGURE_KINDS.join(", ")}`,
  ].join("\n");
}

function parseFlags(argv: string[]): Map<string, string> {
  const flags = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    if (!argv[i].startsWith("--") || i + 1 >= argv.length) {
      throw new Error(usage());
    }
    flags.set(argv[i].slice(2), argv[i + 1]);
  }
  return flags;
}

export function main(argv: string[]): number {
  try {
    if (argv[0] !== "render") {
      throw new Error(usage());
    }
    const flags = parseFlags(argv.slice(1));
    const spec = flags.has("spec")
      ? parseSpecFile(flags.get("spec")!)
      : validateSpec({
          csv: flags.get("csv")!,
          kind: flags.get("kind") as FigureKind,
          out: flags.get("out")!,
        });
    render(spec);
    console.log(`wrote ${spec.out}`);
    return 0;
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : err}`);
    return 1;
  }
}

if (process.argv[1] && process.argv[1].endsWith("cli.js")) {
  process.exit(main(process.argv.slice(2)));
}
