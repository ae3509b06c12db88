"""Scoring kernels: hashed-trigram embeddings and batched cosine scores.

Every retrieval query scans the whole knowledge base, so these two
functions are the engine's hot loop. A Cython build (``_native``) is
picked at import when present; otherwise the pure-Python twin is used.
Both backends are bit-identical: counts are exact integers and all
floating-point reductions run in the same index order.

Set ``COPILOT_PURE_KERNELS=1`` to force the pure backend (used by the
benchmark and by tests that compare the two).
"""

import os

if os.environ.get("COPILOT_PURE_KERNELS") == "1":
    from . import pure as _impl

    BACKEND = "pure"
else:
    try:
        from . import _native as _impl  # type: ignore[attr-defined]

        BACKEND = "native"
    except ImportError:
        from . import pure as _impl

        BACKEND = "pure"

DIM = _impl.DIM
embed_batch = _impl.embed_batch
cosine01_batch = _impl.cosine01_batch

__all__ = ["BACKEND", "DIM", "embed_batch", "cosine01_batch"]
