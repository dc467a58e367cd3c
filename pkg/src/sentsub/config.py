"""Run configuration shared by the CLI, the STS harness, and the energy
study. The fingerprint makes every report self-describing."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Dict, FrozenSet

from .stopwords import DEFAULT_STOPWORDS, stoplist_digest

TOKENIZER_ID = "nfc-lower-ws-punctstrip"


@dataclass(frozen=True)
class RunConfig:
    rank: int = 4
    stopword_filter: bool = True
    stoplist: FrozenSet[str] = field(default=DEFAULT_STOPWORDS)
    center: bool = False
    normalize: bool = False
    seed: int = 0
    workers: int = 1
    output: str = "csv"  # csv | json

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError(f"rank must be >= 1, got {self.rank}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")

    def describe(self) -> Dict[str, object]:
        """Everything that can change a score, in a stable serializable form."""
        return {
            "tokenizer": TOKENIZER_ID,
            "stopword_filter": self.stopword_filter,
            "stoplist_sha256": stoplist_digest(self.stoplist),
            "center": self.center,
            "normalize": self.normalize,
            "rank": self.rank,
            "seed": self.seed,
        }

    @property
    def fingerprint(self) -> str:
        payload = json.dumps(self.describe(), sort_keys=True).encode("utf-8")
        return hashlib.sha256(payload).hexdigest()[:16]
