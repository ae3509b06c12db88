#!/usr/bin/env python3
"""Benchmark the native scoring kernels against the pure-Python fallback.

Simulates the retrieval hot loop: embed a corpus of KB-sized
descriptions, then score queries against all of them.

    python benchmarks/bench_kernels.py [--docs 5000] [--queries 50]
"""

from __future__ import annotations

import argparse
import random
import time


def make_corpus(n_docs: int, seed: int = 0) -> list[str]:
    rng = random.Random(seed)
    vocab = (
        "image picture render style transfer upscale restore face swap video "
        "latent noise sampler scheduler mask depth pose sketch anime portrait "
        "landscape texture color light shadow detail fast batch seed model "
        "checkpoint lora adapter encode decode blend merge crop resize"
    ).split()
    return [
        " ".join(rng.choice(vocab) for _ in range(rng.randint(8, 40)))
        for _ in range(n_docs)
    ]


def bench(impl, name: str, docs: list[str], queries: list[str]) -> dict:
    t0 = time.perf_counter()
    doc_vecs = impl.embed_batch(docs)
    t1 = time.perf_counter()
    query_vecs = impl.embed_batch(queries)
    for qv in query_vecs:
        impl.cosine01_batch(qv, doc_vecs)
    t2 = time.perf_counter()
    return {
        "name": name,
        "embed_s": t1 - t0,
        "score_s": t2 - t1,
        "total_s": t2 - t0,
        "docs_per_s": len(docs) / (t1 - t0),
        "queries_per_s": len(queries) / (t2 - t1),
    }


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--docs", type=int, default=5000)
    parser.add_argument("--queries", type=int, default=50)
    args = parser.parse_args()

    from flowcopilot.kernels import pure

    docs = make_corpus(args.docs)
    queries = make_corpus(args.queries, seed=1)

    rows = [bench(pure, "pure", docs, queries)]
    try:
        from flowcopilot.kernels import _native

        rows.append(bench(_native, "native", docs, queries))
        sample = docs[:200]
        assert _native.embed_batch(sample) == pure.embed_batch(sample), "backend mismatch"
    except ImportError:
        print("native extension not built; benchmarking the fallback only\n")

    header = f"{'backend':<8} {'embed s':>9} {'score s':>9} {'docs/s':>10} {'queries/s':>10}"
    print(header)
    print("-" * len(header))
    for row in rows:
        print(
            f"{row['name']:<8} {row['embed_s']:>9.3f} {row['score_s']:>9.3f} "
            f"{row['docs_per_s']:>10.0f} {row['queries_per_s']:>10.1f}"
        )
    if len(rows) == 2:
        print(
            f"\nnative speedup: embed x{rows[0]['embed_s'] / rows[1]['embed_s']:.1f}, "
            f"scoring x{rows[0]['score_s'] / rows[1]['score_s']:.1f}"
        )


if __name__ == "__main__":
    main()
