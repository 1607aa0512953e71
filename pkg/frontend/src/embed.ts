/**
 * Deterministic sentence embedding: signed hashed bag of words, L2
 * normalized. Stable across processes and platforms (sha256, no process
 * randomness), so repeated calls serialize byte-identically.
 */

import { createHash } from "node:crypto";

export function embedText(text: string, dim: number): number[] {
  const vec = new Array<number>(dim).fill(0);
  const tokens = text.toLowerCase().match(/[a-z0-9]+/g) ?? [];
  for (const token of tokens) {
    const digest = createHash("sha256").update(token, "utf-8").digest();
    const value = digest.readBigUInt64BE(0);
    const idx = Number(value % BigInt(dim));
    const sign = (value >> 32n) & 1n ? 1 : -1;
    vec[idx] += sign;
  }
  const norm = Math.sqrt(vec.reduce((acc, x) => acc + x * x, 0));
  if (norm > 0) {
    for (let i = 0; i < dim; i++) vec[i] /= norm;
  }
  return vec;
}

export function embedTexts(texts: string[], dim: number): number[][] {
  return texts.map((t) => embedText(t, dim));
}
