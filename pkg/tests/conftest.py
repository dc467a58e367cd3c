import numpy as np
import pytest

from sentsub.embeddings import EmbeddingStore, GLOVE_TEXT


def make_store(vectors: dict) -> EmbeddingStore:
    """Build an in-memory store from {token: vector}."""
    tokens = list(vectors)
    matrix = np.array([np.asarray(vectors[t], dtype=np.float64) for t in tokens])
    return EmbeddingStore(
        dim=matrix.shape[1],
        vocab={t: i for i, t in enumerate(tokens)},
        matrix=matrix,
        source_format=GLOVE_TEXT,
    )


@pytest.fixture
def toy_store():
    """Deterministic random store: 40 tokens, dim 10."""
    rng = np.random.default_rng(42)
    return make_store({f"w{i}": rng.uniform(-1, 1, size=10) for i in range(40)})
