"""Sentence representations (subspace and average baselines) and pairwise
similarity scoring."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .embeddings import EmbeddingStore
from .errors import DimensionMismatchError, ZeroNormAverageError
from .linalg import OrthonormalBasis, energy_fraction, principal_angle_cosines, top_components
from .text import TokenizedSentence, embed_sentence

DEFAULT_RANK = 4


@dataclass(frozen=True)
class SubspaceRep:
    """A sentence as the span of the top principal directions of its stacked
    word-vector matrix."""

    basis: OrthonormalBasis
    requested_rank: int
    n_words: int  # in-vocabulary tokens stacked
    energy_captured: float

    @property
    def rank(self) -> int:
        return self.basis.rank


@dataclass(frozen=True)
class AverageRep:
    """A sentence as the unnormalized mean of its word vectors."""

    vector: np.ndarray
    n_words: int

    @property
    def is_zero(self) -> bool:
        return float(np.linalg.norm(self.vector)) == 0.0


@dataclass(frozen=True)
class SimilarityResult:
    score: float
    sigmas: Tuple[float, ...]  # principal-angle cosines (subspace method only)
    method: str  # "subspace" | "average"


def build_subspace(sent: TokenizedSentence, store: EmbeddingStore,
                   rank: int = DEFAULT_RANK, center: bool = False) -> SubspaceRep:
    """Stack the sentence's word vectors and keep the top `rank` principal
    directions as an orthonormal basis."""
    a = embed_sentence(sent, store)
    basis = top_components(a, rank, center=center)
    return SubspaceRep(
        basis=basis,
        requested_rank=rank,
        n_words=a.shape[1],
        energy_captured=energy_fraction(a, basis.rank, center=center),
    )


def subspace_similarity(r1: SubspaceRep, r2: SubspaceRep,
                        normalize: bool = False) -> SimilarityResult:
    """sqrt of the sum of squared principal-angle cosines between the two
    subspaces. Raw by default; `normalize` divides by sqrt(min rank) to land
    in [0, 1]."""
    sigmas = principal_angle_cosines(r1.basis, r2.basis)
    score = math.sqrt(float(np.sum(sigmas ** 2)))
    if normalize:
        score /= math.sqrt(min(r1.rank, r2.rank))
    return SimilarityResult(score=score, sigmas=tuple(float(s) for s in sigmas),
                            method="subspace")


def build_average(sent: TokenizedSentence, store: EmbeddingStore) -> AverageRep:
    a = embed_sentence(sent, store)
    return AverageRep(vector=a.mean(axis=1), n_words=a.shape[1])


def average_similarity(a1: AverageRep, a2: AverageRep) -> SimilarityResult:
    """Standard cosine similarity between the two mean vectors."""
    if a1.vector.shape != a2.vector.shape:
        raise DimensionMismatchError(
            f"average vectors differ in dimension: "
            f"{a1.vector.shape[0]} vs {a2.vector.shape[0]}")
    if a1.is_zero or a2.is_zero:
        raise ZeroNormAverageError("zero-norm average vector; cosine undefined")
    score = float(a1.vector @ a2.vector
                  / (np.linalg.norm(a1.vector) * np.linalg.norm(a2.vector)))
    return SimilarityResult(score=score, sigmas=(), method="average")
