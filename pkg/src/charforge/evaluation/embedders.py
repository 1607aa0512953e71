"""Sentence embedding providers.

The stub is a deterministic signed hashed bag-of-words used by the test
suite and desk-scale runs; the HTTP client speaks the adapter's
``POST /embed`` contract. Both return one float64 row per input text.
"""

from __future__ import annotations

import hashlib

import numpy as np
import requests

from ..errors import EmbedderError
from ..sentences import word_tokens

STUB_DIM = 256


class StubEmbedder:
    """Hash each token to a signed coordinate and L2-normalize the sum.

    Uses blake2b rather than hash() so vectors are stable across processes
    and platforms.
    """

    def __init__(self, dim: int = STUB_DIM):
        self.dim = dim

    def embed(self, texts: list[str]) -> np.ndarray:
        out = np.zeros((len(texts), self.dim), dtype=np.float64)
        for row, text in enumerate(texts):
            for token in word_tokens(text):
                digest = hashlib.blake2b(token.encode("utf-8"), digest_size=8).digest()
                value = int.from_bytes(digest, "big")
                sign = 1.0 if (value >> 32) & 1 else -1.0
                out[row, value % self.dim] += sign
            norm = np.linalg.norm(out[row])
            if norm > 0:
                out[row] /= norm
        return out


class HttpEmbedder:
    """Client for the adapter contract: POST /embed {texts: [...]} -> {vectors: [[...]]}."""

    def __init__(self, endpoint: str, batch_size: int = 128, timeout: float = 60.0):
        self.endpoint = endpoint.rstrip("/")
        self.batch_size = batch_size
        self.timeout = timeout
        self._session = requests.Session()

    def embed(self, texts: list[str]) -> np.ndarray:
        vectors: list[list[float]] = []
        for start in range(0, len(texts), self.batch_size):
            batch = texts[start:start + self.batch_size]
            try:
                resp = self._session.post(
                    f"{self.endpoint}/embed", json={"texts": batch}, timeout=self.timeout)
                resp.raise_for_status()
                payload = resp.json()
            except (requests.RequestException, ValueError) as exc:
                raise EmbedderError(f"embed request failed: {exc}") from exc
            got = payload.get("vectors")
            if not isinstance(got, list) or len(got) != len(batch):
                raise EmbedderError("embed response does not match request size")
            vectors.extend(got)
        if not vectors:
            return np.zeros((0, 0), dtype=np.float64)
        dims = {len(v) for v in vectors}
        if len(dims) != 1:
            raise EmbedderError(f"embedder returned mixed dimensions: {sorted(dims)}")
        return np.asarray(vectors, dtype=np.float64)


def make_embedder(spec: str):
    """'stub' or an http(s) endpoint."""
    if spec == "stub":
        return StubEmbedder()
    if spec.startswith(("http://", "https://")):
        return HttpEmbedder(spec)
    raise EmbedderError(f"unknown embedder spec: {spec!r}")
