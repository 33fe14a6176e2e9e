"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 analysis/data error. The
SCALECHECK_LOG environment variable sets the logging level by name.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from .corpus import apply_unk, tokenize_chars, tokenize_words
from .errors import ScalecheckError
from .generators import (
    NgramModel,
    Pcfg,
    PyParams,
    SeededRng,
    SimonParams,
    ngram_generate,
    ngram_perplexity,
    ngram_train,
    pcfg_generate,
    pcfg_induce,
    py_generate,
    simon_generate,
)
from .report import (
    NOT_APPLICABLE,
    AnalysisFailure,
    AnalyzeConfig,
    analyze_all,
    emit_plot_data,
    fmt6,
    report_from_json,
    report_to_json,
    summary_table,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2

TOKENS_PER_LINE = 1000

log = logging.getLogger("scalecheck")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _read_text(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write_text(path: str, text: str):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="scalecheck", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="run the five scaling analyses on a text file")
    p.add_argument("--input", required=True, help="word-level text file (UTF-8)")
    p.add_argument("--char-input", help="text file analyzed at character level")
    p.add_argument("--taylor-l", type=int, default=5620)
    p.add_argument("--lrc-q", type=int, default=16)
    p.add_argument("--unk-min-freq", type=int)
    p.add_argument("--out", default="scalecheck_out", help="output directory")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.add_argument("--name", help="row label (default: input file name)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("generate", help="sample text from a stochastic model")
    p.add_argument("--model", required=True, choices=("simon", "py", "ngram", "pcfg"))
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--model-file", help="trained n-gram model path")
    p.add_argument("--grammar", help="grammar file path")
    p.add_argument("--length", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-depth", type=int, default=200)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("train-ngram", help="count n-grams from a text file")
    p.add_argument("--input", required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--discount", type=float, default=0.75)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_train_ngram)

    p = sub.add_parser("perplexity", help="score a text file with a trained model")
    p.add_argument("--model", required=True)
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_perplexity)

    p = sub.add_parser("pcfg-induce", help="read a grammar off a bracketed treebank")
    p.add_argument("--treebank", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_pcfg_induce)

    p = sub.add_parser("report", help="assemble a summary table from report files")
    p.add_argument("--inputs", nargs="+", required=True)
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_report)

    return parser


def cmd_analyze(args) -> int:
    seq = tokenize_words(_read_text(args.input))
    if args.unk_min_freq is not None:
        seq = apply_unk(seq, args.unk_min_freq)
    char_seq = tokenize_chars(_read_text(args.char_input)) if args.char_input else None
    cfg = AnalyzeConfig(taylor_l=args.taylor_l, lrc_q=args.lrc_q)
    name = args.name or os.path.basename(args.input)
    report = analyze_all(
        seq,
        char_seq,
        cfg,
        model_name=name,
        extra_metadata={
            "input_path": args.input,
            "char_input_path": args.char_input,
            "unk_min_freq": args.unk_min_freq,
            "seed": None,
        },
    )
    os.makedirs(args.out, exist_ok=True)
    _write_text(os.path.join(args.out, "report.json"), report_to_json(report))
    for cell_name, cell in report.cells().items():
        if cell is NOT_APPLICABLE or isinstance(cell, AnalysisFailure):
            continue
        dest = os.path.join(args.out, f"{cell_name}.tsv")
        for path in emit_plot_data(cell, dest):
            log.info("wrote %s", path)
    table = summary_table([report], args.format)
    _write_text(os.path.join(args.out, f"summary.{args.format}"), table)
    sys.stdout.write(table)
    return EXIT_DATA if report.has_failures else EXIT_OK


def cmd_generate(args) -> int:
    if args.seed < 0:
        raise _UsageError("--seed must be a nonnegative integer")
    rng = SeededRng(args.seed)
    meta = {
        "command": "generate",
        "format_version": 1,
        "model": args.model,
        "length": args.length,
        "seed": args.seed,
        "rng": SeededRng.algorithm,
    }
    if args.model == "simon":
        if args.a is None:
            raise _UsageError("simon requires --a")
        seq = simon_generate(SimonParams(args.a), args.length, rng)
        meta["a"] = args.a
    elif args.model == "py":
        if args.a is None or args.b is None:
            raise _UsageError("py requires --a and --b")
        seq = py_generate(PyParams(args.a, args.b), args.length, rng)
        meta["a"] = args.a
        meta["b"] = args.b
    elif args.model == "ngram":
        if not args.model_file:
            raise _UsageError("ngram requires --model-file")
        model = NgramModel.load(args.model_file)
        seq = ngram_generate(model, args.length, rng)
        meta["model_file"] = args.model_file
        meta["order"] = model.order
        meta["discount"] = model.discount
    else:
        if not args.grammar:
            raise _UsageError("pcfg requires --grammar")
        grammar = Pcfg.load(args.grammar)
        gen = pcfg_generate(grammar, args.length, rng, max_depth=args.max_depth)
        seq = gen.sequence
        meta["grammar"] = args.grammar
        meta["max_depth"] = args.max_depth
        meta["abandoned_derivations"] = gen.abandoned
    meta["token_count"] = len(seq)
    meta["vocab_size"] = seq.vocab_size

    symbols = seq.symbols()
    with open(args.out, "w", encoding="utf-8") as fh:
        for i in range(0, len(symbols), TOKENS_PER_LINE):
            fh.write(" ".join(symbols[i : i + TOKENS_PER_LINE]))
            fh.write("\n")
    _write_text(args.out + ".meta.json", json.dumps(meta, indent=2) + "\n")
    log.info("wrote %d tokens to %s", len(seq), args.out)
    return EXIT_OK


def cmd_train_ngram(args) -> int:
    seq = tokenize_words(_read_text(args.input))
    model = ngram_train(seq, args.order, args.discount)
    model.save(args.out)
    log.info("saved order-%d model (%d tokens) to %s", args.order, len(seq), args.out)
    return EXIT_OK


def cmd_perplexity(args) -> int:
    model = NgramModel.load(args.model)
    seq = tokenize_words(_read_text(args.input))
    sys.stdout.write(fmt6(ngram_perplexity(model, seq)) + "\n")
    return EXIT_OK


def cmd_pcfg_induce(args) -> int:
    grammar = pcfg_induce(_read_text(args.treebank))
    grammar.save(args.out)
    log.info("induced grammar with %d nonterminals", len(grammar.productions))
    return EXIT_OK


def cmd_report(args) -> int:
    reports = [report_from_json(_read_text(p)) for p in args.inputs]
    table = summary_table(reports, args.format)
    _write_text(args.out, table)
    sys.stdout.write(table)
    return EXIT_OK


def main(argv=None) -> int:
    logging.basicConfig(
        level=os.environ.get("SCALECHECK_LOG", "WARNING").upper(),
        format="%(levelname)s %(name)s: %(message)s",
    )
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ScalecheckError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (OSError, UnicodeDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
