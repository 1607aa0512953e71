/**
 * Pronoun-to-name coreference clusters over raw articles.
 *
 * Each third-person pronoun links to the nearest preceding capitalized name
 * run; one cluster per representative with the pronoun character spans as
 * mentions. A document that defeats the heuristic simply gets no clusters.
 */

import { readJsonl, writeJsonl } from "./jsonl.js";

const PRONOUN_RE = /\b(He|She|They|Him|Her|Them|he|she|they|him|them)\b/g;
const NAME_RE = /(?:[A-Z][a-z'-]+)(?:\s[A-Z][a-z'-]+)*/g;

const NOT_NAMES = new Set([
  "The", "A", "An", "He", "She", "It", "They", "We", "I", "You", "His",
  "Her", "Their", "This", "That", "There", "But", "And", "Or", "If", "As",
  "At", "By", "For", "From", "In", "On", "Of", "To", "With", "When", "While",
  "Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday",
]);

interface NameHit {
  text: string;
  start: number;
  end: number;
}

export function findNames(text: string): NameHit[] {
  const hits: NameHit[] = [];
  for (const m of text.matchAll(NAME_RE)) {
    const words = m[0].split(/\s+/).filter((w) => !NOT_NAMES.has(w));
    if (words.length === 0) continue;
    const cleaned = words.join(" ");
    const start = m.index! + m[0].indexOf(words[0]);
    hits.push({ text: cleaned, start, end: start + cleaned.length });
  }
  return hits;
}

export interface Cluster {
  representative: string;
  mentions: Array<[number, number]>;
}

export function clustersForText(text: string): Cluster[] {
  const names = findNames(text);
  const byRep = new Map<string, Array<[number, number]>>();
  for (const m of text.matchAll(PRONOUN_RE)) {
    const pos = m.index!;
    let nearest: NameHit | undefined;
    for (const hit of names) {
      if (hit.end <= pos) nearest = hit;
      else break;
    }
    if (!nearest) continue;
    const spans = byRep.get(nearest.text) ?? [];
    spans.push([pos, pos + m[0].length]);
    byRep.set(nearest.text, spans);
  }
  return [...byRep.entries()].map(([representative, mentions]) => ({
    representative,
    mentions,
  }));
}

export function emitCoref(articlesPath: string, outPath: string): number {
  const records = [];
  for (const article of readJsonl(articlesPath)) {
    let clusters: Cluster[] = [];
    try {
      clusters = clustersForText(article.text);
    } catch (err) {
      console.error(`coref failed for ${article.id}: ${err}`);
    }
    records.push({ doc_id: article.id, clusters });
  }
  writeJsonl(outPath, records);
  return records.length;
}
