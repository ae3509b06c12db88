"""Fixed-stride character chunking of source files for retrieval."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class CodeChunk:
    source_path: str
    start_offset: int
    end_offset: int
    text: str


def chunk_code(
    files: list[tuple[str, str]], chunk_size: int = 1200, overlap: int = 200
) -> list[CodeChunk]:
    """Cover each file with chunks of at most chunk_size characters.

    Consecutive chunks overlap by exactly ``overlap`` characters (stride
    = chunk_size - overlap); only the final chunk of a file may be
    shorter. Empty files produce no chunks.
    """
    if chunk_size <= 0:
        raise ValueError("chunk_size must be positive")
    if not 0 <= overlap < chunk_size:
        raise ValueError("overlap must satisfy 0 <= overlap < chunk_size")
    stride = chunk_size - overlap
    chunks: list[CodeChunk] = []
    for path, text in files:
        length = len(text)
        start = 0
        while start < length:
            end = min(start + chunk_size, length)
            chunks.append(CodeChunk(path, start, end, text[start:end]))
            if end >= length:
                break
            start += stride
    return chunks
