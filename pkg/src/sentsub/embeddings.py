"""Pretrained word-embedding loaders (GloVe text, word2vec binary) and the
immutable in-memory store serving token -> vector lookups."""
from __future__ import annotations

import logging
import struct
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, Optional

import numpy as np

from .errors import EmbeddingFormatError

log = logging.getLogger(__name__)

GLOVE_TEXT = "glove_text"
WORD2VEC_BINARY = "word2vec_binary"


@dataclass(frozen=True)
class LoadReport:
    path: str
    source_format: str
    n_entries: int
    n_duplicates: int
    dim: int


@dataclass(frozen=True)
class EmbeddingStore:
    """Immutable vocabulary -> d-dimensional vector table.

    The matrix is write-protected after construction; lookups return
    read-only views so the same bytes come back on every call.
    """

    dim: int
    vocab: Dict[str, int]
    matrix: np.ndarray  # shape (|V|, dim), float64
    source_format: str
    report: LoadReport = field(compare=False, default=None)

    def __post_init__(self):
        self.matrix.setflags(write=False)

    def __len__(self) -> int:
        return len(self.vocab)

    def __contains__(self, token: str) -> bool:
        return token in self.vocab

    def lookup(self, token: str) -> Optional[np.ndarray]:
        """Return the stored vector for `token`, or None if absent. Never raises."""
        idx = self.vocab.get(token)
        if idx is None:
            return None
        return self.matrix[idx]

    def tokens(self) -> Iterable[str]:
        return self.vocab.keys()

    def save_glove_text(self, path) -> None:
        """Write in GloVe text format with full round-trip float precision."""
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            for token, idx in self.vocab.items():
                values = " ".join(repr(float(v)) for v in self.matrix[idx])
                f.write(f"{token} {values}\n")

    def save_word2vec_binary(self, path) -> None:
        """Write in word2vec binary format (little-endian float32)."""
        with open(path, "wb") as f:
            f.write(f"{len(self.vocab)} {self.dim}\n".encode("utf-8"))
            for token, idx in self.vocab.items():
                f.write(token.encode("utf-8") + b" ")
                f.write(self.matrix[idx].astype("<f4").tobytes())
                f.write(b"\n")


def _finish(path, fmt: str, dim: int, vocab: Dict[str, int], rows, n_dup: int) -> EmbeddingStore:
    matrix = np.vstack(rows) if rows else np.empty((0, dim))
    if not np.all(np.isfinite(matrix)):
        raise EmbeddingFormatError(f"{path}: non-finite vector component")
    report = LoadReport(str(path), fmt, len(vocab), n_dup, dim)
    log.info(
        "loaded embeddings path=%s format=%s entries=%d duplicates=%d dim=%d",
        report.path, fmt, report.n_entries, n_dup, dim,
    )
    return EmbeddingStore(dim=dim, vocab=vocab, matrix=matrix,
                          source_format=fmt, report=report)


def load_glove_text(path, expected_dim: Optional[int] = None) -> EmbeddingStore:
    """Load a GloVe-style text file: one `token v1 v2 ... vd` entry per line.

    The dimension is inferred from the first line (or checked against
    `expected_dim`). Duplicate tokens keep the first occurrence.
    """
    vocab: Dict[str, int] = {}
    rows = []
    dim = expected_dim
    n_dup = 0
    with open(path, "r", encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.rstrip("\r\n")
            if not line:
                continue
            parts = line.split(" ")
            token, values = parts[0], parts[1:]
            if dim is None:
                dim = len(values)
                if dim == 0:
                    raise EmbeddingFormatError(f"{path}: line 1 has no vector components")
            if len(values) != dim:
                raise EmbeddingFormatError(
                    f"{path}: line {lineno}: expected {dim} components, got {len(values)}")
            try:
                vec = np.array([float(v) for v in values])
            except ValueError as e:
                raise EmbeddingFormatError(f"{path}: line {lineno}: {e}") from None
            if token in vocab:
                n_dup += 1
                continue
            vocab[token] = len(rows)
            rows.append(vec)
    if not rows:
        raise EmbeddingFormatError(f"{path}: no embedding entries found")
    return _finish(path, GLOVE_TEXT, dim, vocab, rows, n_dup)


def load_word2vec_binary(path) -> EmbeddingStore:
    """Load a word2vec binary file: ASCII `<count> <dim>` header, then per
    entry a space-terminated token followed by dim little-endian float32s,
    optionally followed by a newline."""
    data = Path(path).read_bytes()
    nl = data.find(b"\n")
    if nl < 0:
        raise EmbeddingFormatError(f"{path}: missing header line")
    try:
        count_s, dim_s = data[:nl].split()
        count, dim = int(count_s), int(dim_s)
    except ValueError:
        raise EmbeddingFormatError(f"{path}: unparseable header {data[:nl]!r}") from None
    if count <= 0 or dim <= 0:
        raise EmbeddingFormatError(f"{path}: empty store (header {count} {dim})")

    vocab: Dict[str, int] = {}
    rows = []
    n_dup = 0
    pos = nl + 1
    vec_bytes = 4 * dim
    for i in range(count):
        while pos < len(data) and data[pos:pos + 1] == b"\n":
            pos += 1
        sp = data.find(b" ", pos)
        if sp < 0:
            raise EmbeddingFormatError(f"{path}: truncated after {i} entries")
        token = data[pos:sp].decode("utf-8", errors="replace")
        pos = sp + 1
        if pos + vec_bytes > len(data):
            raise EmbeddingFormatError(f"{path}: truncated after {i} entries")
        vec = np.frombuffer(data, dtype="<f4", count=dim, offset=pos).astype(np.float64)
        pos += vec_bytes
        if token in vocab:
            n_dup += 1
            continue
        vocab[token] = len(rows)
        rows.append(vec)
    rest = data[pos:]
    if rest not in (b"", b"\n"):
        raise EmbeddingFormatError(
            f"{path}: {len(rest)} trailing bytes beyond the last entry")
    return _finish(path, WORD2VEC_BINARY, dim, vocab, rows, n_dup)
