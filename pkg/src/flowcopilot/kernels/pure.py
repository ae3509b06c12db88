"""Pure-Python scoring kernels (reference semantics for the native build).

Embedding definition, shared verbatim by both backends:

* lowercase the text, slide a 3-character window over it (a non-empty
  text shorter than 3 chars contributes itself as the single gram;
  empty text gives the zero vector),
* hash each gram's UTF-8 bytes with 32-bit FNV-1a, bucket modulo 256,
* count grams per bucket, then L2-normalize the count vector.

Counts are exact integers and the squared norm is summed in integer
arithmetic, so normalization differs between backends by nothing at all.
"""

from __future__ import annotations

import math

DIM = 256

_FNV_OFFSET = 2166136261
_FNV_PRIME = 16777619
_MASK32 = 0xFFFFFFFF


def _fnv1a32(data: bytes) -> int:
    h = _FNV_OFFSET
    for b in data:
        h = ((h ^ b) * _FNV_PRIME) & _MASK32
    return h


def _embed_one(text: str) -> list[float]:
    counts = [0] * DIM
    t = text.lower()
    n = len(t)
    if n == 0:
        return [0.0] * DIM
    if n < 3:
        counts[_fnv1a32(t.encode("utf-8")) % DIM] += 1
    else:
        for i in range(n - 2):
            counts[_fnv1a32(t[i : i + 3].encode("utf-8")) % DIM] += 1
    sq = 0
    for c in counts:
        sq += c * c
    norm = math.sqrt(float(sq))
    return [c / norm for c in counts]


def embed_batch(texts: list[str]) -> list[list[float]]:
    """Embed each text into a unit (or zero) vector of dimension DIM."""
    return [_embed_one(t) for t in texts]


def cosine01_batch(query: list[float], docs: list[list[float]]) -> list[float]:
    """Cosine of the query against each doc, mapped from [-1, 1] to [0, 1].

    Works for any (consistent) dimension, normalized or not. Identical
    vectors score exactly 1.0 by construction; a zero vector scores a
    cosine of 0, which maps to 0.5. All reductions run in ascending
    index order so both backends agree bit for bit.
    """
    n = len(query)
    if n == 0:
        raise ValueError("query vector is empty")
    q = [float(x) for x in query]
    nq = 0.0
    for i in range(n):
        nq += q[i] * q[i]
    out = []
    for doc in docs:
        if len(doc) != n:
            raise ValueError(f"doc vector has dimension {len(doc)}, expected {n}")
        d = [float(x) for x in doc]
        if d == q:
            cos = 0.0 if nq == 0.0 else 1.0
        else:
            dot = 0.0
            nd = 0.0
            for i in range(n):
                dot += q[i] * d[i]
                nd += d[i] * d[i]
            if nq == 0.0 or nd == 0.0:
                cos = 0.0
            else:
                cos = dot / (math.sqrt(nq) * math.sqrt(nd))
                if cos > 1.0:
                    cos = 1.0
                elif cos < -1.0:
                    cos = -1.0
        out.append((cos + 1.0) / 2.0)
    return out
