"""Command-line pipeline: prepare, stats, train, predict, eval, sweep-k, pr-curve.

Exit codes: 0 success, 1 usage or configuration error, 2 data error.
All file writes are atomic, so interrupted runs never leave partial
artifacts at their target paths.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

import numpy as np

from . import __version__
from .corpus import (
    CorpusStats,
    corpus_stats,
    extract_candidates,
    filter_unknown,
    format_stats_table,
    parse_column_file,
    read_candidates_tsv,
    write_candidates_tsv,
)
from .errors import ConfigError, DataFormatError
from .evaluate import (
    evaluate,
    format_confusion_tsv,
    format_pr_curve_tsv,
    format_report,
    format_report_tsv,
    format_sweep_tsv,
    pr_curve,
    sweep_k,
)
from .features import FeatureSpace
from .multiclass import load_ova_model, save_ova_model, train_ova
from .train import TrainConfig
from .util import atomic_write, format_g17

log = logging.getLogger("fmnec")

MODEL_FILE = "ova_model.txt"
SPACE_FILE = "feature_space.txt"
REPORT_TXT = "report.txt"
REPORT_TSV = "report.tsv"
CONFUSION_TSV = "confusion.tsv"


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; this tool reserves 2 for
    # data errors, so usage problems are remapped to exit code 1
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_train_flags(sp):
    sp.add_argument("--k", type=int, default=5, help="factorization dimension (0 = linear)")
    sp.add_argument("--lr", type=float, default=0.05, help="SGD learning rate")
    sp.add_argument("--reg-w", type=float, default=1e-4, help="L2 coefficient for linear weights")
    sp.add_argument("--reg-v", type=float, default=1e-4, help="L2 coefficient for factor rows")
    sp.add_argument("--epochs", type=int, default=100)
    sp.add_argument("--init-sd", type=float, default=0.1, help="std-dev of factor initialization")
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--loss", choices=("hinge", "logistic"), default="hinge")
    sp.add_argument("--no-shuffle", action="store_true", help="visit instances in file order")


def _train_config(args) -> TrainConfig:
    return TrainConfig(
        k=args.k,
        learning_rate=args.lr,
        reg_w=args.reg_w,
        reg_v=args.reg_v,
        epochs=args.epochs,
        init_sd=args.init_sd,
        seed=args.seed,
        shuffle=not args.no_shuffle,
        loss=args.loss,
    )


def _require_files(*paths):
    for path in paths:
        if not os.path.isfile(path):
            raise ConfigError(f"input file not found: {path}")


def _read_candidates(path, need_gold=False):
    _require_files(path)
    candidates = read_candidates_tsv(path)
    if not candidates:
        raise ConfigError(f"candidates file is empty: {path}")
    if need_gold and any(c.gold_tag is None for c in candidates):
        raise DataFormatError("every candidate needs a gold tag here", path=str(path))
    return candidates


def _load_model_and_space(args):
    _require_files(args.model, args.space)
    model = load_ova_model(args.model)
    space = FeatureSpace.load(args.space)
    if model.n != len(space):
        raise ConfigError(
            f"model dimension {model.n} does not match feature space size {len(space)}"
        )
    return model, space


def _score_candidates(model, space, candidates):
    """Raw score matrix (candidates x labels) plus argmax tags."""
    scores = np.empty((len(candidates), len(model.labels)))
    preds = []
    for row, candidate in enumerate(candidates):
        x = space.vectorize_candidate(candidate)
        scores[row] = [score for _, score in model.predict_scores(x)]
        preds.append(model.labels[int(np.argmax(scores[row]))])
    return scores, preds


def cmd_prepare(args):
    _require_files(args.train, *(p for p in (args.dev, args.test) if p))
    os.makedirs(args.out, exist_ok=True)
    train_candidates = extract_candidates(
        parse_column_file(args.train, args.token_col, args.tag_col)
    )
    if not train_candidates:
        raise ConfigError(f"no candidates found in {args.train}")
    write_candidates_tsv(os.path.join(args.out, "train.candidates.tsv"), train_candidates)
    stats = {"training": corpus_stats(train_candidates)}
    for split, path in (("dev", args.dev), ("test", args.test)):
        if not path:
            continue
        raw = extract_candidates(parse_column_file(path, args.token_col, args.tag_col))
        kept = filter_unknown(raw, train_candidates)
        log.info("%s: %d candidates, %d kept by the unknown filter", split, len(raw), len(kept))
        write_candidates_tsv(os.path.join(args.out, f"{split}.candidates.tsv"), kept)
        stats[split] = corpus_stats(kept) if kept else CorpusStats({})
    print(format_stats_table(stats))
    return 0


def cmd_stats(args):
    stats = {}
    for path in args.candidates:
        candidates = _read_candidates(path, need_gold=True)
        stats[os.path.basename(path)] = corpus_stats(candidates)
    print(format_stats_table(stats))
    return 0


def cmd_train(args):
    candidates = _read_candidates(args.candidates, need_gold=True)
    space = FeatureSpace.fit(candidates)
    data = [(space.vectorize_candidate(c), c.gold_tag) for c in candidates]
    config = _train_config(args)

    def on_epoch(label, epoch, mean_loss):
        log.info("label %s epoch %d mean loss %.6f", label, epoch + 1, mean_loss)

    model = train_ova(data, len(space), config, on_epoch=on_epoch)
    os.makedirs(args.out, exist_ok=True)
    model_path = os.path.join(args.out, MODEL_FILE)
    space_path = os.path.join(args.out, SPACE_FILE)
    save_ova_model(model, model_path)
    space.save(space_path)
    log.info("wrote %s and %s", model_path, space_path)
    return 0


def cmd_predict(args):
    model, space = _load_model_and_space(args)
    candidates = _read_candidates(args.candidates)
    scores, preds = _score_candidates(model, space, candidates)
    with atomic_write(args.out) as fh:
        fh.write("# pred\tgold\t" + "\t".join(model.labels) + "\n")
        for row, candidate in enumerate(candidates):
            cells = [preds[row], candidate.gold_tag or ""]
            cells.extend(format_g17(v) for v in scores[row])
            fh.write("\t".join(cells) + "\n")
    return 0


def _safe_tag(tag: str) -> str:
    return "".join(ch if ch.isalnum() or ch in "-_." else "_" for ch in tag)


def _write_pr_curves(model, gold, scores, out_dir):
    written = 0
    for col, label in enumerate(model.labels):
        if label == "O":
            continue
        flags = [tag == label for tag in gold]
        if not any(flags):
            log.warning("no gold %s instances, skipping its PR curve", label)
            continue
        points = pr_curve(list(zip(scores[:, col].tolist(), flags)))
        path = os.path.join(out_dir, f"pr_{_safe_tag(label)}.tsv")
        with atomic_write(path) as fh:
            fh.write(format_pr_curve_tsv(points))
        written += 1
    if not written:
        raise ConfigError("no entity tag has gold instances; nothing to plot")
    return written


def cmd_eval(args):
    model, space = _load_model_and_space(args)
    candidates = _read_candidates(args.candidates, need_gold=True)
    gold = [c.gold_tag for c in candidates]
    scores, preds = _score_candidates(model, space, candidates)
    report = evaluate(gold, preds)
    os.makedirs(args.out, exist_ok=True)
    with atomic_write(os.path.join(args.out, REPORT_TXT)) as fh:
        fh.write(format_report(report) + "\n")
    with atomic_write(os.path.join(args.out, REPORT_TSV)) as fh:
        fh.write(format_report_tsv(report))
    with atomic_write(os.path.join(args.out, CONFUSION_TSV)) as fh:
        fh.write(format_confusion_tsv(report))
    if args.pr_curves:
        _write_pr_curves(model, gold, scores, args.out)
    print(format_report(report))
    return 0


def cmd_pr_curve(args):
    model, space = _load_model_and_space(args)
    candidates = _read_candidates(args.candidates, need_gold=True)
    gold = [c.gold_tag for c in candidates]
    scores, _ = _score_candidates(model, space, candidates)
    os.makedirs(args.out, exist_ok=True)
    written = _write_pr_curves(model, gold, scores, args.out)
    log.info("wrote %d PR curve files to %s", written, args.out)
    return 0


def cmd_sweep_k(args):
    train_candidates = _read_candidates(args.train, need_gold=True)
    dev_candidates = _read_candidates(args.dev, need_gold=True)
    try:
        k_values = [int(part) for part in args.k_values.split(",") if part.strip()]
    except ValueError:
        raise ConfigError(f"--k-values must be comma-separated integers: {args.k_values!r}") from None
    space = FeatureSpace.fit(train_candidates)
    train = [(space.vectorize_candidate(c), c.gold_tag) for c in train_candidates]
    dev = [(space.vectorize_candidate(c), c.gold_tag) for c in dev_candidates]
    results = sweep_k(train, dev, len(space), k_values, _train_config(args))
    with atomic_write(args.out) as fh:
        fh.write(format_sweep_tsv(results))
    for k, f1 in results:
        print(f"k={k}\tmicro_f1={100.0 * f1:.2f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="fmnec",
        description="Sparse named-entity candidate classification with "
        "degree-2 factorization machines.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser,
                                metavar="command")

    sp = sub.add_parser("prepare", help="extract candidates from column corpora, filter unknowns")
    sp.add_argument("--train", required=True, help="training corpus (column format)")
    sp.add_argument("--dev", help="development corpus")
    sp.add_argument("--test", help="test corpus")
    sp.add_argument("--token-col", type=int, default=0, help="token column index")
    sp.add_argument("--tag-col", type=int, default=3, help="BIO tag column index")
    sp.add_argument("--out", required=True, help="output directory for candidates files")
    sp.set_defaults(func=cmd_prepare)

    sp = sub.add_parser("stats", help="print token/type counts for candidates files")
    sp.add_argument("candidates", nargs="+", help="candidates TSV files")
    sp.set_defaults(func=cmd_stats)

    sp = sub.add_parser("train", help="fit the feature space and train the multiclass model")
    sp.add_argument("--candidates", required=True, help="training candidates TSV")
    _add_train_flags(sp)
    sp.add_argument("--out", required=True, help="output directory for model and feature space")
    sp.set_defaults(func=cmd_train)

    sp = sub.add_parser("predict", help="tag candidates with a trained model")
    sp.add_argument("--model", required=True)
    sp.add_argument("--space", required=True)
    sp.add_argument("--candidates", required=True)
    sp.add_argument("--out", required=True, help="output predictions TSV")
    sp.set_defaults(func=cmd_predict)

    sp = sub.add_parser("eval", help="evaluate a trained model on gold candidates")
    sp.add_argument("--model", required=True)
    sp.add_argument("--space", required=True)
    sp.add_argument("--candidates", required=True)
    sp.add_argument("--pr-curves", action="store_true", help="also write per-tag PR curves")
    sp.add_argument("--out", required=True, help="output directory for report files")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("sweep-k", help="train per k value and report dev micro-F1")
    sp.add_argument("--train", required=True, help="training candidates TSV")
    sp.add_argument("--dev", required=True, help="development candidates TSV")
    sp.add_argument("--k-values", required=True, help="comma-separated k values, e.g. 0,1,2,5,8")
    _add_train_flags(sp)
    sp.add_argument("--out", required=True, help="output two-column TSV")
    sp.set_defaults(func=cmd_sweep_k)

    sp = sub.add_parser("pr-curve", help="write per-tag precision-recall curve files")
    sp.add_argument("--model", required=True)
    sp.add_argument("--space", required=True)
    sp.add_argument("--candidates", required=True)
    sp.add_argument("--out", required=True, help="output directory")
    sp.set_defaults(func=cmd_pr_curve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO, format="%(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (DataFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
