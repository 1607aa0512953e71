/**
 * Sentence splitting mirroring the pipeline's splitter, so that CoNLL-U
 * block indices line up with the entity mention sentence indices recorded
 * in resolved.jsonl.
 */

const ABBREVIATIONS = new Set([
  "mr.", "mrs.", "ms.", "dr.", "prof.", "st.", "jr.", "sr.", "rev.",
  "gen.", "gov.", "sen.", "rep.", "capt.", "col.", "lt.", "sgt.",
  "vs.", "etc.", "e.g.", "i.e.", "cf.", "no.", "nos.", "pp.", "fig.",
  "u.s.", "u.k.", "u.n.", "a.m.", "p.m.", "inc.", "ltd.", "co.",
]);

const TERMINATORS = new Set([".", "!", "?"]);

function tokenBefore(text: string, idx: number): string {
  let start = idx;
  while (start > 0 && !/\s/.test(text[start - 1])) start--;
  return text.slice(start, idx + 1);
}

export function sentenceSpans(text: string): Array<[number, number]> {
  const spans: Array<[number, number]> = [];
  let start = 0;
  let i = 0;
  const n = text.length;
  while (i < n) {
    const ch = text[i];
    if (TERMINATORS.has(ch) && (i + 1 === n || /\s/.test(text[i + 1]))) {
      const token = tokenBefore(text, i).toLowerCase();
      if (!ABBREVIATIONS.has(token)) {
        spans.push([start, i + 1]);
        i += 1;
        while (i < n && /\s/.test(text[i])) i++;
        start = i;
        continue;
      }
    }
    i++;
  }
  if (start < n && text.slice(start).trim()) spans.push([start, n]);
  return spans.filter(([s, e]) => text.slice(s, e).trim().length > 0);
}

export function splitSentences(text: string): string[] {
  return sentenceSpans(text).map(([s, e]) => text.slice(s, e).trim());
}
