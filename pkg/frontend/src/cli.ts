/**
 * Adapter CLI:
 *   conllu      --resolved <resolved.jsonl> --out <dir>
 *   coref       --articles <articles.jsonl> --out <coref.jsonl>
 *   embed-serve [--port 8756]
 *   generate    --ft1 <ft1.txt> --ft2-train <ft2_train.txt>
 *               --prompts <prompts.jsonl> --out <generated.jsonl>
 *               [--per-job N] [--seed S]
 */

import * as fs from "node:fs";

import { loadConfig } from "./config.js";
import { parseToConllu } from "./conllu.js";
import { emitCoref } from "./coref.js";
import { finetuneAndGenerate } from "./generate.js";
import { serveEmbed } from "./server.js";

function parseFlags(argv: string[]): Map<string, string> {
  const flags = new Map<string, string>();
  for (let i = 0; i < argv.length; i++) {
    if (argv[i].startsWith("--")) {
      flags.set(argv[i].slice(2), argv[i + 1] ?? "");
      i++;
    }
  }
  return flags;
}

function need(flags: Map<string, string>, name: string): string {
  const v = flags.get(name);
  if (!v) {
    console.error(`missing --${name}`);
    process.exit(1);
  }
  return v;
}

function main(): void {
  const [command, ...rest] = process.argv.slice(2);
  const flags = parseFlags(rest);
  const cfg = loadConfig(
    flags.has("max-tokens") ? { maxGenerationTokens: Number(flags.get("max-tokens")) } : {},
  );

  switch (command) {
    case "conllu": {
      const results = parseToConllu(need(flags, "resolved"), need(flags, "out"));
      console.log(JSON.stringify({ docs: results.length, model: cfg.parserModel }));
      break;
    }
    case "coref": {
      const docs = emitCoref(need(flags, "articles"), need(flags, "out"));
      console.log(JSON.stringify({ docs, model: cfg.corefModel }));
      break;
    }
    case "embed-serve": {
      serveEmbed(Number(flags.get("port") ?? 8756), cfg);
      break;
    }
    case "generate": {
      const result = finetuneAndGenerate(
        need(flags, "ft1"),
        need(flags, "ft2-train"),
        need(flags, "prompts"),
        need(flags, "out"),
        cfg,
        {
          perJob: flags.has("per-job") ? Number(flags.get("per-job")) : undefined,
          seed: flags.get("seed"),
        },
      );
      const manifest = need(flags, "out").replace(/\.jsonl$/, "") + ".training.json";
      fs.writeFileSync(manifest, JSON.stringify(result.stages, null, 2) + "\n");
      console.log(JSON.stringify({ records: result.records, model: cfg.generatorModel }));
      break;
    }
    default:
      console.error("usage: cli <conllu|coref|embed-serve|generate> [flags]");
      process.exit(1);
  }
}

main();
