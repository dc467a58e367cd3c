"""Embedded English function-word list used to filter tokens before stacking.

The list is fixed and shipped with the package so results are auditable;
`sentsub stoplist` dumps it, and `--stoplist <path>` overrides it.
"""
from __future__ import annotations

import hashlib
from typing import FrozenSet

DEFAULT_STOPWORDS: FrozenSet[str] = frozenset("""
a about above after again against all am an and any are aren't as at
be because been before being below between both but by
can cannot could couldn't
did didn't do does doesn't doing don't down during
each few for from further
had hadn't has hasn't have haven't having he her here hers herself him
himself his how
i if in into is isn't it it's its itself
just me more most mustn't my myself
no nor not of off on once only or other ought our ours ourselves out over own
same shan't she should shouldn't so some such
than that the their theirs them themselves then there these they this those
through to too
under until up very
was wasn't we were weren't what when where which while who whom why will with
won't would wouldn't
you your yours yourself yourselves
""".split())


def load_stoplist(path) -> FrozenSet[str]:
    """Read a stoplist override: one token per line, UTF-8, blanks ignored."""
    with open(path, "r", encoding="utf-8") as f:
        tokens = [line.strip() for line in f]
    return frozenset(t for t in tokens if t)


def stoplist_digest(stoplist: FrozenSet[str]) -> str:
    """Stable hash of a stoplist, for config fingerprints."""
    payload = "\n".join(sorted(stoplist)).encode("utf-8")
    return hashlib.sha256(payload).hexdigest()[:16]
