/**
 * Deterministic rule-based annotation of resolved documents to CoNLL-U.
 *
 * The tree shapes are simple (verb-rooted, forward noun attachment) but
 * every block is structurally valid: contiguous ids, one root, acyclic
 * heads, ten tab-separated columns. One output file per document; block
 * order follows the shared sentence splitter, keeping sentence indices
 * aligned with the entity mentions in resolved.jsonl.
 */

import * as fs from "node:fs";
import * as path from "node:path";

import { readJsonl } from "./jsonl.js";
import { splitSentences } from "./sentences.js";

const DETERMINERS = new Set(["the", "a", "an", "this", "that", "these", "those"]);
const PRONOUNS = new Set([
  "he", "she", "it", "they", "we", "i", "you", "him", "them", "us", "her",
  "his", "its", "their", "my", "our", "your", "who", "whom", "what", "everyone",
]);
const ADPOSITIONS = new Set([
  "in", "on", "at", "by", "for", "from", "with", "to", "of", "during",
  "after", "before", "across", "under", "over", "near", "between", "against",
]);
const CONJUNCTIONS = new Set(["and", "or", "but", "nor"]);
const AUXILIARIES = new Set([
  "is", "are", "was", "were", "be", "been", "being", "am",
  "has", "have", "had", "will", "would", "can", "could", "may", "might",
  "shall", "should", "must", "do", "does", "did",
]);

const VERB_LEMMAS: Record<string, string> = {
  said: "say", says: "say", won: "win", wins: "win", gave: "give", gives: "give",
  made: "make", makes: "make", took: "take", takes: "take", went: "go", goes: "go",
  thanked: "thank", praised: "praise", addressed: "address", lives: "live",
  lived: "live", remained: "remain", met: "meet", led: "lead", held: "hold",
  told: "tell", spoke: "speak", wrote: "write", came: "come", saw: "see",
  announced: "announce", visited: "visit", promised: "promise", launched: "launch",
  criticized: "criticize", urged: "urge", warned: "warn", claimed: "claim",
  stated: "state", described: "describe", elected: "elect", appointed: "appoint",
};

interface Tok {
  form: string;
  lemma: string;
  upos: string;
  head: number;
  deprel: string;
}

function tokenize(sentence: string): string[] {
  const matches = sentence.match(/[A-Za-z0-9'’⟨⟩-]+|[^\sA-Za-z0-9]/g);
  return matches ?? [];
}

function tagOne(form: string): string {
  const lower = form.toLowerCase();
  if (/^[^A-Za-z0-9]+$/.test(form)) return "PUNCT";
  if (/^[0-9]+([.,][0-9]+)?$/.test(form)) return "NUM";
  if (DETERMINERS.has(lower)) return "DET";
  if (PRONOUNS.has(lower)) return "PRON";
  if (ADPOSITIONS.has(lower)) return "ADP";
  if (CONJUNCTIONS.has(lower)) return "CCONJ";
  if (AUXILIARIES.has(lower)) return "AUX";
  if (lower in VERB_LEMMAS) return "VERB";
  if (lower.length > 4 && (lower.endsWith("ed") || lower.endsWith("ing"))) return "VERB";
  if (lower.length > 3 && lower.endsWith("ly")) return "ADV";
  if (/^[A-Z]/.test(form)) return "PROPN";
  return "NOUN";
}

function lemmaOf(form: string, upos: string): string {
  const lower = form.toLowerCase();
  if (upos === "PUNCT" || upos === "NUM") return form;
  if (VERB_LEMMAS[lower]) return VERB_LEMMAS[lower];
  if (AUXILIARIES.has(lower) && ["is", "are", "was", "were", "been", "being", "am"].includes(lower)) {
    return "be";
  }
  if (upos === "VERB") {
    if (lower.endsWith("ing") && lower.length > 5) return lower.slice(0, -3);
    if (lower.endsWith("ed") && lower.length > 4) return lower.slice(0, -2);
    if (lower.endsWith("s") && lower.length > 3) return lower.slice(0, -1);
  }
  return lower;
}

export function annotateSentence(sentence: string): Tok[] {
  const forms = tokenize(sentence);
  if (forms.length === 0) return [];
  const upos = forms.map(tagOne);

  let rootIdx = upos.findIndex((p) => p === "VERB");
  if (rootIdx < 0) rootIdx = upos.findIndex((p) => p === "AUX");
  if (rootIdx < 0) rootIdx = 0;
  const root = rootIdx + 1;

  const toks: Tok[] = forms.map((form, i) => ({
    form,
    lemma: lemmaOf(form, upos[i]),
    upos: upos[i],
    head: root,
    deprel: "dep",
  }));
  toks[rootIdx].head = 0;
  toks[rootIdx].deprel = "root";

  const nominal = (p: string) => p === "NOUN" || p === "PROPN" || p === "PRON";
  const nextNominal = (from: number): number => {
    for (let j = from + 1; j < toks.length; j++) {
      if (nominal(toks[j].upos)) return j;
      if (toks[j].upos === "PUNCT" || toks[j].upos === "VERB") break;
    }
    return -1;
  };

  let sawSubject = false;
  let sawObject = false;
  for (let i = 0; i < toks.length; i++) {
    if (i === rootIdx) continue;
    const t = toks[i];
    if (t.upos === "PUNCT") {
      t.deprel = "punct";
    } else if (t.upos === "DET" || (t.upos === "ADJ" as string)) {
      const n = nextNominal(i);
      if (n > i) {
        t.head = n + 1;
        t.deprel = t.upos === "DET" ? "det" : "amod";
      }
    } else if (t.upos === "ADP") {
      t.deprel = "prep";
      const n = nextNominal(i);
      if (n > i) {
        toks[n].head = i + 1;
        toks[n].deprel = "pobj";
      }
    } else if (t.upos === "AUX" && i < rootIdx) {
      t.deprel = "aux";
    } else if (t.upos === "ADV") {
      t.deprel = "advmod";
    } else if (t.upos === "CCONJ") {
      t.deprel = "cc";
    } else if (nominal(t.upos) && t.deprel === "dep") {
      if (i < rootIdx) {
        // final token of a pre-verb name run is the subject, the rest compound
        const runEnd = i + 1 < rootIdx && toks[i + 1].upos === "PROPN" && t.upos === "PROPN";
        if (runEnd) {
          t.head = i + 2;
          t.deprel = "compound";
        } else if (!sawSubject) {
          t.deprel = "nsubj";
          sawSubject = true;
        }
      } else if (!sawObject) {
        t.deprel = "obj";
        sawObject = true;
      }
    }
  }
  return toks;
}

export function toConlluBlock(toks: Tok[]): string {
  return toks
    .map((t, i) => [i + 1, t.form, t.lemma, t.upos, "_", "_", t.head, t.deprel, "_", "_"].join("\t"))
    .join("\n");
}

export interface ParseResult {
  docId: string;
  sentences: number;
  file: string;
}

export function parseToConllu(resolvedPath: string, outDir: string): ParseResult[] {
  fs.mkdirSync(outDir, { recursive: true });
  const results: ParseResult[] = [];
  for (const doc of readJsonl(resolvedPath)) {
    const docId: string = doc.doc_id;
    try {
      const sentences = splitSentences(doc.text);
      const blocks = sentences
        .map((s) => annotateSentence(s))
        .filter((toks) => toks.length > 0)
        .map(toConlluBlock);
      const file = path.join(outDir, `${docId}.conllu`);
      fs.writeFileSync(file, blocks.length ? blocks.join("\n\n") + "\n" : "", "utf-8");
      results.push({ docId, sentences: blocks.length, file });
    } catch (err) {
      console.error(`skipping ${docId}: ${err}`);
    }
  }
  return results;
}
