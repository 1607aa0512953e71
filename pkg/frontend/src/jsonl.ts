import * as fs from "node:fs";

export function readJsonl(path: string): any[] {
  const out: any[] = [];
  for (const line of fs.readFileSync(path, "utf-8").split("\n")) {
    const trimmed = line.trim();
    if (trimmed) out.push(JSON.parse(trimmed));
  }
  return out;
}

export function writeJsonl(path: string, records: unknown[]): void {
  const body = records.map((r) => JSON.stringify(r)).join("\n");
  fs.writeFileSync(path, body.length ? body + "\n" : "", "utf-8");
}
