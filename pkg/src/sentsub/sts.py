"""SemEval-style STS evaluation harness: dataset loading, Pearson's
correlation, and Table-shaped reports over methods x datasets."""
from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .config import RunConfig
from .embeddings import EmbeddingStore
from .errors import (
    UNSCOREABLE_ERRORS,
    DatasetFormatError,
    ZeroVarianceError,
)
from .represent import (
    average_similarity,
    build_average,
    build_subspace,
    subspace_similarity,
)
from .text import filter_function_words, tokenize

# A scoring method: ("subspace", rank) or ("average", None).
Method = Tuple[str, Optional[int]]


@dataclass(frozen=True)
class StsPair:
    s1: str
    s2: str
    gold: Optional[float]  # human score in [0, 5], absent on blank gs lines


@dataclass(frozen=True)
class EvalRow:
    dataset: str
    method: str
    rank: Optional[int]
    pearson_x100: Optional[float]  # None when fewer than 2 scoreable pairs
    n_scored: int
    n_skipped: int


@dataclass(frozen=True)
class EvalReport:
    rows: Tuple[EvalRow, ...]
    config: Dict[str, object]
    fingerprint: str
    dataset_stats: Dict[str, float]  # mean pre-filter token count per dataset

    def to_csv(self) -> str:
        lines = ["dataset,method,rank,pearson_x100,n_scored,n_skipped"]
        for r in self.rows:
            rank = "" if r.rank is None else str(r.rank)
            p = "NA" if r.pearson_x100 is None else f"{r.pearson_x100:.4f}"
            lines.append(f"{r.dataset},{r.method},{rank},{p},{r.n_scored},{r.n_skipped}")
        lines.append(f"# fingerprint={self.fingerprint}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {
            "fingerprint": self.fingerprint,
            "config": self.config,
            "dataset_stats": self.dataset_stats,
            "rows": [
                {
                    "dataset": r.dataset,
                    "method": r.method,
                    "rank": r.rank,
                    "pearson_x100": r.pearson_x100,
                    "n_scored": r.n_scored,
                    "n_skipped": r.n_skipped,
                }
                for r in self.rows
            ],
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _read_lines(path) -> List[str]:
    text = Path(path).read_text(encoding="utf-8")
    return text.split("\n")[:-1] if text.endswith("\n") else text.split("\n")


def load_sts_dataset(input_path, gs_path) -> List[StsPair]:
    """Read `sentence1 TAB sentence2` lines and the parallel gold-score file.

    Pairs are aligned by line number; a blank gs line means no gold score.
    """
    input_lines = [ln.rstrip("\r") for ln in _read_lines(input_path)]
    gs_lines = [ln.rstrip("\r") for ln in _read_lines(gs_path)]
    if len(input_lines) != len(gs_lines):
        raise DatasetFormatError(
            f"{input_path} has {len(input_lines)} lines but "
            f"{gs_path} has {len(gs_lines)}")
    pairs = []
    for lineno, (line, gs) in enumerate(zip(input_lines, gs_lines), start=1):
        fields = line.split("\t")
        if len(fields) < 2:
            raise DatasetFormatError(
                f"{input_path}: line {lineno}: expected `s1 TAB s2`")
        gold: Optional[float] = None
        if gs.strip():
            try:
                gold = float(gs.strip())
            except ValueError:
                raise DatasetFormatError(
                    f"{gs_path}: line {lineno}: malformed score {gs!r}") from None
            if not 0.0 <= gold <= 5.0:
                raise DatasetFormatError(
                    f"{gs_path}: line {lineno}: score {gold} outside [0, 5]")
        pairs.append(StsPair(s1=fields[0], s2=fields[1], gold=gold))
    return pairs


def load_manifest(path) -> List[Tuple[str, Path, Path]]:
    """Dataset registry: `name TAB input_path TAB gs_path` per line, paths
    resolved relative to the manifest's directory."""
    base = Path(path).parent
    entries = []
    for lineno, line in enumerate(_read_lines(path), start=1):
        line = line.rstrip("\r")
        if not line or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise DatasetFormatError(
                f"{path}: line {lineno}: expected `name TAB input TAB gs`")
        name, inp, gs = fields
        entries.append((name, base / inp, base / gs))
    return entries


def pearson(pred: Sequence[float], gold: Sequence[float]) -> float:
    """Sample Pearson correlation coefficient between two equal-length lists."""
    x = np.asarray(pred, dtype=np.float64)
    y = np.asarray(gold, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError(f"length mismatch: {x.shape} vs {y.shape}")
    if x.size < 2:
        raise ValueError(f"need at least 2 observations, got {x.size}")
    dx = x - x.mean()
    dy = y - y.mean()
    vx = float(dx @ dx)
    vy = float(dy @ dy)
    if vx == 0.0 or vy == 0.0:
        raise ZeroVarianceError("correlation undefined: constant input")
    return float(dx @ dy) / math.sqrt(vx * vy)


class _RepCache:
    """Per-dataset cache of sentence representations; unscoreable sentences
    cache as None so they are skipped consistently."""

    def __init__(self, store: EmbeddingStore, config: RunConfig):
        self.store = store
        self.config = config
        self._tokenized: Dict[str, object] = {}
        self._reps: Dict[Tuple[str, str, Optional[int]], object] = {}

    def tokenized(self, sentence: str):
        sent = self._tokenized.get(sentence)
        if sent is None:
            sent = tokenize(sentence)
            if self.config.stopword_filter:
                sent = filter_function_words(sent, self.config.stoplist)
            self._tokenized[sentence] = sent
        return sent

    def rep(self, sentence: str, method: Method):
        key = (sentence, method[0], method[1])
        if key not in self._reps:
            sent = self.tokenized(sentence)
            try:
                if method[0] == "subspace":
                    rep = build_subspace(sent, self.store, rank=method[1],
                                         center=self.config.center)
                else:
                    rep = build_average(sent, self.store)
            except UNSCOREABLE_ERRORS:
                rep = None
            self._reps[key] = rep
        return self._reps[key]


def _score_pair(cache: _RepCache, method: Method, normalize: bool,
                pair: StsPair) -> Optional[float]:
    r1 = cache.rep(pair.s1, method)
    r2 = cache.rep(pair.s2, method)
    if r1 is None or r2 is None:
        return None
    try:
        if method[0] == "subspace":
            return subspace_similarity(r1, r2, normalize=normalize).score
        return average_similarity(r1, r2).score
    except UNSCOREABLE_ERRORS:
        return None


def evaluate(datasets: Sequence[Tuple[str, Sequence[StsPair]]],
             methods: Sequence[Method],
             store: EmbeddingStore,
             config: RunConfig) -> EvalReport:
    """Score every gold-bearing pair with every method and correlate against
    the gold scores. Unscoreable pairs are skipped with counts, never imputed.
    Row order is deterministic: dataset, then method name, then rank."""
    if not datasets or not methods:
        raise ValueError("need at least one dataset and one method")
    rows = []
    stats: Dict[str, float] = {}
    for name, pairs in sorted(datasets, key=lambda d: d[0]):
        cache = _RepCache(store, config)
        lengths = [cache.tokenized(s).n_raw for p in pairs for s in (p.s1, p.s2)]
        stats[name] = float(np.mean(lengths)) if lengths else 0.0
        for method in sorted(methods, key=lambda m: (m[0], m[1] or 0)):
            # warm the cache sequentially so worker threads only read it
            for pair in pairs:
                if pair.gold is not None:
                    cache.rep(pair.s1, method)
                    cache.rep(pair.s2, method)
            scoreable = [p for p in pairs if p.gold is not None]
            if config.workers > 1:
                with ThreadPoolExecutor(max_workers=config.workers) as pool:
                    scores = list(pool.map(
                        lambda p: _score_pair(cache, method, config.normalize, p),
                        scoreable))
            else:
                scores = [_score_pair(cache, method, config.normalize, p)
                          for p in scoreable]
            preds = [s for s in scores if s is not None]
            golds = [p.gold for p, s in zip(scoreable, scores) if s is not None]
            n_scored = len(preds)
            n_skipped = len(pairs) - n_scored
            value: Optional[float] = None
            if n_scored >= 2:
                try:
                    value = 100.0 * pearson(preds, golds)
                except ZeroVarianceError:
                    value = None
            rows.append(EvalRow(
                dataset=name,
                method=method[0],
                rank=method[1],
                pearson_x100=value,
                n_scored=n_scored,
                n_skipped=n_skipped,
            ))
    return EvalReport(rows=tuple(rows), config=config.describe(),
                      fingerprint=config.fingerprint, dataset_stats=stats)
