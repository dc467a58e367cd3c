"""Geometric verification: how much energy the top principal components
capture over a sentence corpus, against a random unigram baseline."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .embeddings import EmbeddingStore
from .errors import NumericalError, UnrepresentableSentenceError
from .linalg import singular_values
from .text import TokenizedSentence, embed_sentence

HISTOGRAM_BINS = 20  # uniform over [0, 1]


@dataclass(frozen=True)
class EnergyStudyResult:
    """Mean/std/histogram of the energy fraction at each requested rank,
    over one population of sentences."""

    ranks: Tuple[int, ...]
    means: Tuple[float, ...]
    stds: Tuple[float, ...]
    histograms: Tuple[Tuple[int, ...], ...]  # per rank, HISTOGRAM_BINS counts
    n_sentences: int
    n_skipped: int


def energy_study(sentences: Iterable[TokenizedSentence],
                 store: EmbeddingStore,
                 ranks: Sequence[int],
                 center: bool = False) -> EnergyStudyResult:
    """Compute the top-N energy fraction of every representable sentence, for
    each N in `ranks`, and aggregate. Unrepresentable sentences are skipped
    with a count."""
    ranks = tuple(sorted(set(int(n) for n in ranks)))
    if not ranks or ranks[0] < 1:
        raise ValueError(f"ranks must be positive integers, got {ranks}")
    fractions: List[List[float]] = [[] for _ in ranks]
    n_skipped = 0
    for sent in sentences:
        try:
            a = embed_sentence(sent, store)
        except UnrepresentableSentenceError:
            n_skipped += 1
            continue
        s2 = singular_values(a, center=center) ** 2
        total = float(s2.sum())
        if total <= 0.0:
            n_skipped += 1
            continue
        cum = np.cumsum(s2) / total
        for i, n in enumerate(ranks):
            fractions[i].append(min(float(cum[min(n, len(cum)) - 1]), 1.0))
    n_sentences = len(fractions[0])
    if n_sentences == 0:
        raise NumericalError("no representable sentences in corpus")
    hists = []
    for vals in fractions:
        counts, _ = np.histogram(vals, bins=HISTOGRAM_BINS, range=(0.0, 1.0))
        hists.append(tuple(int(c) for c in counts))
    return EnergyStudyResult(
        ranks=ranks,
        means=tuple(float(np.mean(v)) for v in fractions),
        stds=tuple(float(np.std(v)) for v in fractions),
        histograms=tuple(hists),
        n_sentences=n_sentences,
        n_skipped=n_skipped,
    )


@dataclass(frozen=True)
class UnigramModel:
    """Relative-frequency unigram distribution over in-store tokens."""

    tokens: Tuple[str, ...]
    probs: np.ndarray

    def __post_init__(self):
        self.probs.setflags(write=False)

    def prob(self, token: str) -> float:
        try:
            return float(self.probs[self.tokens.index(token)])
        except ValueError:
            return 0.0


def build_unigram(corpus: Iterable[str],
                  store: Optional[EmbeddingStore] = None) -> UnigramModel:
    """Maximum-likelihood unigram over the corpus tokens, restricted to
    tokens the embedding store knows (so sampled sentences are embeddable)."""
    counts = Counter(corpus)
    if store is not None:
        counts = Counter({t: c for t, c in counts.items() if t in store})
    if not counts:
        raise ValueError("empty corpus (or no token overlaps the store)")
    items = sorted(counts.items())
    total = sum(c for _, c in items)
    return UnigramModel(
        tokens=tuple(t for t, _ in items),
        probs=np.array([c / total for _, c in items]),
    )


def random_sentences(model: UnigramModel, lengths: Sequence[int],
                     seed: int = 0) -> List[TokenizedSentence]:
    """Draw i.i.d. pseudo-sentences of the requested lengths; deterministic
    for a fixed seed."""
    if any(m < 1 for m in lengths):
        raise ValueError("sentence lengths must be positive")
    rng = np.random.default_rng(seed)
    out = []
    for m in lengths:
        idx = rng.choice(len(model.tokens), size=int(m), p=model.probs)
        tokens = [model.tokens[i] for i in idx]
        out.append(TokenizedSentence(raw=" ".join(tokens), tokens=tokens,
                                     n_raw=len(tokens)))
    return out


def study_to_csv(results: Dict[str, EnergyStudyResult], fingerprint: str,
                 seed: int) -> Tuple[str, str]:
    """Render populations ("real", "random", ...) as the summary CSV and the
    per-bin histogram CSV."""
    summary = ["rank,population,mean,std,n"]
    hist = ["rank,population,bin_lo,bin_hi,count"]
    width = 1.0 / HISTOGRAM_BINS
    for pop in sorted(results):
        r = results[pop]
        for i, n in enumerate(r.ranks):
            summary.append(
                f"{n},{pop},{r.means[i]:.6f},{r.stds[i]:.6f},{r.n_sentences}")
            for b, count in enumerate(r.histograms[i]):
                hist.append(f"{n},{pop},{b * width:.2f},{(b + 1) * width:.2f},{count}")
    trailer = f"# fingerprint={fingerprint} seed={seed}"
    summary.append(trailer)
    hist.append(trailer)
    return "\n".join(summary) + "\n", "\n".join(hist) + "\n"
