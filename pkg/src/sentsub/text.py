"""Sentence -> token pipeline: normalization, function-word filtering, and
stacking word vectors into a d x m matrix."""
from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from typing import AbstractSet, List

import numpy as np

from .embeddings import EmbeddingStore
from .errors import UnrepresentableSentenceError


@dataclass
class TokenizedSentence:
    raw: str
    tokens: List[str]
    n_raw: int  # token count before function-word filtering
    oov: List[str] = field(default_factory=list)  # filled at embedding time


def _strip_punct(token: str) -> str:
    start, end = 0, len(token)
    while start < end and unicodedata.category(token[start]).startswith("P"):
        start += 1
    while end > start and unicodedata.category(token[end - 1]).startswith("P"):
        end -= 1
    return token[start:end]


def tokenize(raw: str) -> TokenizedSentence:
    """NFC-normalize, lowercase, split on whitespace, and strip leading and
    trailing punctuation from each token. Tokens emptied by stripping are
    dropped; empty input yields an empty token list."""
    text = unicodedata.normalize("NFC", raw).lower()
    tokens = [t for t in (_strip_punct(p) for p in text.split()) if t]
    return TokenizedSentence(raw=raw, tokens=tokens, n_raw=len(tokens))


def filter_function_words(sent: TokenizedSentence,
                          stoplist: AbstractSet[str]) -> TokenizedSentence:
    """Drop stoplist tokens, preserving order and duplicates (multiset
    semantics: duplicated content words keep duplicated columns)."""
    kept = [t for t in sent.tokens if t not in stoplist]
    return TokenizedSentence(raw=sent.raw, tokens=kept, n_raw=sent.n_raw,
                             oov=list(sent.oov))


def embed_sentence(sent: TokenizedSentence, store: EmbeddingStore) -> np.ndarray:
    """Stack v(w) for each in-vocabulary token into a d x m matrix.

    OOV tokens are recorded in `sent.oov` and skipped. Raises
    UnrepresentableSentenceError when no token has a vector.
    """
    cols = []
    oov = []
    for token in sent.tokens:
        vec = store.lookup(token)
        if vec is None:
            oov.append(token)
        else:
            cols.append(vec)
    sent.oov = oov
    if not cols:
        raise UnrepresentableSentenceError(
            f"no representable content in {sent.raw!r} "
            f"({len(sent.tokens)} tokens, {len(oov)} out of vocabulary)")
    return np.column_stack(cols)
