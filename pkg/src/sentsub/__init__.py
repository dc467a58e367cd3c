"""Sentence similarity via low-rank word-vector subspaces.

A sentence is represented by the span of the top principal directions of
its stacked word vectors; two sentences are compared through the cosines
of the principal angles between their subspaces.
"""
from .analysis import (
    EnergyStudyResult,
    UnigramModel,
    build_unigram,
    energy_study,
    random_sentences,
)
from .config import RunConfig
from .embeddings import (
    EmbeddingStore,
    load_glove_text,
    load_word2vec_binary,
)
from .errors import (
    DatasetFormatError,
    DimensionMismatchError,
    EmbeddingFormatError,
    NumericalError,
    SentsubError,
    UnrepresentableSentenceError,
    ZeroNormAverageError,
    ZeroVarianceError,
)
from .linalg import (
    OrthonormalBasis,
    energy_fraction,
    principal_angle_cosines,
    svd,
    top_components,
)
from .represent import (
    AverageRep,
    SimilarityResult,
    SubspaceRep,
    average_similarity,
    build_average,
    build_subspace,
    subspace_similarity,
)
from .stopwords import DEFAULT_STOPWORDS, load_stoplist
from .sts import (
    EvalReport,
    EvalRow,
    StsPair,
    evaluate,
    load_manifest,
    load_sts_dataset,
    pearson,
)
from .text import (
    TokenizedSentence,
    embed_sentence,
    filter_function_words,
    tokenize,
)

__version__ = "0.1.0"
