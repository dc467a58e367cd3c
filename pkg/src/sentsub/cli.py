"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 data/format error, 3 numerical
failure.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional

from . import analysis, sts
from .config import RunConfig
from .embeddings import EmbeddingStore, load_glove_text, load_word2vec_binary
from .errors import (
    DatasetFormatError,
    EmbeddingFormatError,
    NumericalError,
    SentsubError,
    UnrepresentableSentenceError,
    ZeroNormAverageError,
)
from .represent import (
    average_similarity,
    build_average,
    build_subspace,
    subspace_similarity,
)
from .stopwords import DEFAULT_STOPWORDS, load_stoplist
from .text import filter_function_words, tokenize

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERICAL = 3

STOPLIST_ENV = "SUBSPACE_STS_STOPLIST"


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; this CLI reserves 2 for
    # data errors.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common_flags(p: argparse.ArgumentParser, needs_store: bool = True):
    p.add_argument("--embeddings", required=needs_store,
                   help="path to the embedding file")
    p.add_argument("--format", choices=("glove", "w2v-bin"), default="glove",
                   help="embedding file format (default: glove)")
    p.add_argument("--dim", type=int, default=None,
                   help="expected embedding dimension (glove only)")
    p.add_argument("--rank", type=int, default=4,
                   help="subspace rank N (default: 4)")
    p.add_argument("--no-stopword-filter", action="store_true",
                   help="keep function words when stacking")
    p.add_argument("--stoplist", default=None,
                   help="stoplist file overriding the embedded list "
                        f"(or ${STOPLIST_ENV})")
    p.add_argument("--center", action="store_true",
                   help="subtract the column mean before PCA")
    p.add_argument("--normalize", action="store_true",
                   help="divide subspace scores by sqrt(min rank)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--output", choices=("csv", "json"), default="csv")


def _build_config(args) -> RunConfig:
    stoplist = DEFAULT_STOPWORDS
    path = args.stoplist or os.environ.get(STOPLIST_ENV)
    if path:
        stoplist = load_stoplist(path)
    return RunConfig(
        rank=args.rank,
        stopword_filter=not args.no_stopword_filter,
        stoplist=stoplist,
        center=args.center,
        normalize=args.normalize,
        seed=args.seed,
        workers=args.workers,
        output=args.output,
    )


def _load_store(args) -> EmbeddingStore:
    if args.format == "w2v-bin":
        return load_word2vec_binary(args.embeddings)
    return load_glove_text(args.embeddings, expected_dim=args.dim)


def _prepare(raw: str, config: RunConfig):
    sent = tokenize(raw)
    if config.stopword_filter:
        sent = filter_function_words(sent, config.stoplist)
    return sent


def cmd_sim(args) -> int:
    config = _build_config(args)
    store = _load_store(args)
    s1 = _prepare(args.s1, config)
    s2 = _prepare(args.s2, config)
    if args.method == "subspace":
        r1 = build_subspace(s1, store, rank=config.rank, center=config.center)
        r2 = build_subspace(s2, store, rank=config.rank, center=config.center)
        result = subspace_similarity(r1, r2, normalize=config.normalize)
        print(f"method=subspace rank={config.rank} n_eff={r1.rank},{r2.rank}")
        print("sigmas=" + ",".join(f"{s:.10f}" for s in result.sigmas))
    else:
        a1 = build_average(s1, store)
        a2 = build_average(s2, store)
        result = average_similarity(a1, a2)
        print("method=average")
    print(f"score={result.score:.10f}")
    return EXIT_OK


def cmd_eval(args) -> int:
    config = _build_config(args)
    store = _load_store(args)
    methods: List[sts.Method] = []
    for name in args.methods.split(","):
        name = name.strip()
        if name == "subspace":
            methods.append(("subspace", config.rank))
        elif name == "average":
            methods.append(("average", None))
        else:
            raise DatasetFormatError(f"unknown method {name!r}")
    datasets = [(name, sts.load_sts_dataset(inp, gs))
                for name, inp, gs in sts.load_manifest(args.manifest)]
    report = sts.evaluate(datasets, methods, store, config)
    text = report.to_json() if config.output == "json" else report.to_csv()
    Path(args.report).write_text(text, encoding="utf-8")
    for row in report.rows:
        p = "undefined" if row.pearson_x100 is None else f"{row.pearson_x100:.2f}"
        print(f"{row.dataset} {row.method} pearson_x100={p} "
              f"scored={row.n_scored} skipped={row.n_skipped}")
    print(f"report written to {args.report} (fingerprint={report.fingerprint})")
    return EXIT_OK


def cmd_energy(args) -> int:
    config = _build_config(args)
    store = _load_store(args)
    ranks = [int(n) for n in args.ranks.split(",")]
    lines = Path(args.corpus).read_text(encoding="utf-8").splitlines()
    sentences = [_prepare(line, config) for line in lines if line.strip()]
    if not sentences:
        raise DatasetFormatError(f"{args.corpus}: no sentences")
    results = {"real": analysis.energy_study(sentences, store, ranks,
                                             center=config.center)}
    if args.random_baseline:
        if args.unigram_from:
            corpus_tokens = [
                t for line in Path(args.unigram_from).read_text(
                    encoding="utf-8").splitlines()
                for t in _prepare(line, config).tokens]
        else:
            corpus_tokens = [t for s in sentences for t in s.tokens]
        model = analysis.build_unigram(corpus_tokens, store)
        lengths = [len([t for t in s.tokens if t in store])
                   for s in sentences]
        lengths = [m for m in lengths if m >= 1]
        fake = analysis.random_sentences(model, lengths, seed=config.seed)
        results["random"] = analysis.energy_study(fake, store, ranks,
                                                  center=config.center)
    summary, hist = analysis.study_to_csv(results, config.fingerprint,
                                          config.seed)
    out = Path(args.out)
    summary_path = out.with_name(out.name + ".csv")
    hist_path = out.with_name(out.name + "_hist.csv")
    summary_path.write_text(summary, encoding="utf-8")
    hist_path.write_text(hist, encoding="utf-8")
    for pop in sorted(results):
        r = results[pop]
        means = " ".join(f"N={n}:{m:.4f}" for n, m in zip(r.ranks, r.means))
        print(f"{pop}: {means} (n={r.n_sentences}, skipped={r.n_skipped})")
    print(f"wrote {summary_path} and {hist_path}")
    return EXIT_OK


def cmd_inspect(args) -> int:
    config = _build_config(args)
    store = _load_store(args)
    sent = tokenize(args.sentence)
    print("tokens=" + ",".join(sent.tokens))
    if config.stopword_filter:
        sent = filter_function_words(sent, config.stoplist)
    print("filtered=" + ",".join(sent.tokens))
    try:
        rep = build_subspace(sent, store, rank=config.rank, center=config.center)
    except UnrepresentableSentenceError:
        print("oov=" + ",".join(sent.oov))
        print("unrepresentable: no in-vocabulary tokens")
        return EXIT_OK
    print("oov=" + ",".join(sent.oov))
    print(f"n_eff={rep.rank}")
    print("component_energy=" +
          ",".join(f"{e:.6f}" for e in rep.basis.component_energy))
    print(f"energy_captured={rep.energy_captured:.6f}")
    return EXIT_OK


def cmd_stoplist(args) -> int:
    for token in sorted(DEFAULT_STOPWORDS):
        print(token)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sentsub",
                     description="Sentence similarity via word-vector subspaces")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("sim", help="score one sentence pair")
    _common_flags(p)
    p.add_argument("--method", choices=("subspace", "average"), default="subspace")
    p.add_argument("s1")
    p.add_argument("s2")
    p.set_defaults(func=cmd_sim)

    p = sub.add_parser("eval", help="run the STS evaluation over a manifest")
    _common_flags(p)
    p.add_argument("--manifest", required=True,
                   help="dataset registry: name TAB input TAB gs per line")
    p.add_argument("--methods", default="subspace,average")
    p.add_argument("--report", required=True, help="output report path")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("energy", help="energy-fraction study over a corpus")
    _common_flags(p)
    p.add_argument("--corpus", required=True,
                   help="UTF-8 text, one sentence per line")
    p.add_argument("--ranks", default="3,4,5")
    p.add_argument("--random-baseline", action="store_true")
    p.add_argument("--unigram-from", default=None,
                   help="estimate the unigram model from this file instead "
                        "of the corpus")
    p.add_argument("--out", required=True, help="output path prefix")
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("inspect", help="diagnostics for one sentence")
    _common_flags(p)
    p.add_argument("sentence")
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("stoplist", help="dump the embedded stopword list")
    p.set_defaults(func=cmd_stoplist)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s %(message)s")
    try:
        return args.func(args)
    except (EmbeddingFormatError, DatasetFormatError,
            UnrepresentableSentenceError, ZeroNormAverageError,
            FileNotFoundError, IsADirectoryError, ValueError) as e:
        print(f"sentsub: error: {e}", file=sys.stderr)
        return EXIT_DATA
    except (NumericalError, SentsubError) as e:
        print(f"sentsub: numerical error: {e}", file=sys.stderr)
        return EXIT_NUMERICAL


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
