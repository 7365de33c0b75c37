"""Command-line interface: split, train, predict, evaluate, features.

Exit codes: 0 success, 2 input or usage error, 3 numeric or model error.
Human-readable messages go to standard error; machine-readable JSON goes
to standard output or the file named by --out.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import logging
import os
import sys

import numpy as np

from .corpus import CorpusError, load_instances, load_labeled, merge_balance_split, write_instances, write_truth
from .embeddings import EmbeddingDimensionError, EmbeddingFormatError, load_embeddings
from .features import HANDCRAFTED_NAMES, LEXICON_FILENAMES, HeadlineFeaturizer, feature_names, featurize_dataset
from .metrics import EvaluationError, evaluate
from .model import LeastSquaresRegressor, ModelDimensionError, ModelLoadError, load_model, save_model
from .pipeline import score_instances
from .text import STOPWORDS_FILENAME, packaged_bytes

logger = logging.getLogger("headline_scorer")

DEFAULT_SEED = 42
DEFAULT_TRAIN_FRACTION = 0.8
DEFAULT_THRESHOLD = 0.5
DEFAULT_EMBEDDING_DIM = 300

SPLIT_FILES = {
    "train_instances": "train-instances.jsonl",
    "train_truth": "train-truth.jsonl",
    "validation_instances": "validation-instances.jsonl",
    "validation_truth": "validation-truth.jsonl",
    "summary": "summary.json",
}


def _write_or_stdout(text: str, out_path) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _counts_entry(dataset) -> dict:
    return {"counts": dataset.class_counts(), "total": len(dataset)}


def cmd_split(args) -> int:
    if len(args.instances) != 2 or len(args.truth) != 2:
        raise ValueError(
            "split requires exactly two --instances and two --truth files (one pair per corpus)"
        )
    corpora = [
        load_labeled(inst, truth) for inst, truth in zip(args.instances, args.truth)
    ]
    train, validation = merge_balance_split(
        corpora[0], corpora[1], train_fraction=args.train_fraction, seed=args.seed
    )

    os.makedirs(args.out, exist_ok=True)
    write_instances(train, os.path.join(args.out, SPLIT_FILES["train_instances"]))
    write_truth(train, os.path.join(args.out, SPLIT_FILES["train_truth"]))
    write_instances(validation, os.path.join(args.out, SPLIT_FILES["validation_instances"]))
    write_truth(validation, os.path.join(args.out, SPLIT_FILES["validation_truth"]))

    merged_counts = {
        key: corpora[0].class_counts()[key] + corpora[1].class_counts()[key]
        for key in corpora[0].class_counts()
    }
    balanced_counts = {
        key: train.class_counts()[key] + validation.class_counts()[key]
        for key in train.class_counts()
    }
    summary = {
        "seed": args.seed,
        "train_fraction": args.train_fraction,
        "inputs": [
            {"instances": inst, "truth": truth, **_counts_entry(ds)}
            for (inst, truth, ds) in zip(args.instances, args.truth, corpora)
        ],
        "merged": {"counts": merged_counts, "total": sum(merged_counts.values())},
        "balanced": {"counts": balanced_counts, "total": sum(balanced_counts.values())},
        "train": _counts_entry(train),
        "validation": _counts_entry(validation),
        "files": SPLIT_FILES,
    }
    text = json.dumps(summary, ensure_ascii=False, indent=2) + "\n"
    with open(os.path.join(args.out, SPLIT_FILES["summary"]), "w", encoding="utf-8") as fh:
        fh.write(text)
    sys.stdout.write(text)
    return 0


def _data_checksums() -> dict[str, str]:
    names = (STOPWORDS_FILENAME,) + LEXICON_FILENAMES
    return {name: hashlib.sha256(packaged_bytes(name)).hexdigest() for name in names}


def cmd_train(args) -> int:
    dataset = load_labeled(args.instances, args.truth)
    if len(dataset) == 0:
        raise CorpusError("instances and truth share no ids; nothing to train on")
    table = load_embeddings(args.embeddings, expected_dim=args.dims)
    X, y = featurize_dataset(dataset, table)
    regressor = LeastSquaresRegressor().fit(X, y)
    residuals = y - regressor.predict(X)
    training_mse = float(np.sum(residuals * residuals) / len(y))

    metadata = {
        "embeddings": {
            "file": os.path.basename(str(args.embeddings)),
            "dimension": table.dimension,
            "vocab_size": len(table),
        },
        "data_sha256": _data_checksums(),
        "n_training_records": len(dataset),
        "seed": args.seed,
    }
    save_model(regressor, args.model, metadata=metadata)
    logger.info("wrote model to %s", args.model)
    report = {
        "n": len(dataset),
        "feature_dimension": X.shape[1],
        "training_mse": training_mse,
    }
    sys.stdout.write(json.dumps(report, ensure_ascii=False) + "\n")
    return 0


def cmd_predict(args) -> int:
    model = load_model(args.model)
    embedding_dim = model.n_features_in_ - len(HANDCRAFTED_NAMES)
    if embedding_dim <= 0:
        raise ModelDimensionError(
            f"model feature dimension {model.n_features_in_} leaves no room "
            f"for the {len(HANDCRAFTED_NAMES)} handcrafted features"
        )
    try:
        table = load_embeddings(args.embeddings, expected_dim=embedding_dim)
    except EmbeddingDimensionError as exc:
        raise ModelDimensionError(str(exc)) from exc

    instances = load_instances(args.instances)
    featurizer = HeadlineFeaturizer(embeddings=table).fit()
    predictions = score_instances(instances, featurizer, model)
    lines = "".join(
        json.dumps({"id": p.id, "clickbaitScore": p.clamped_score}, ensure_ascii=False) + "\n"
        for p in predictions
    )
    _write_or_stdout(lines, args.out)
    logger.info("scored %d instance(s)", len(predictions))
    return 0


def cmd_evaluate(args) -> int:
    report = evaluate(args.predictions, args.truth, threshold=args.threshold)
    text = report.to_json() + "\n"
    sys.stdout.write(text)
    if args.out is not None:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


def cmd_features(args) -> int:
    instances = load_instances(args.instances)
    table = load_embeddings(args.embeddings, expected_dim=args.dims)
    featurizer = HeadlineFeaturizer(embeddings=table).fit()

    def write_csv(stream) -> None:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(feature_names(table.dimension))
        for instance in instances:
            writer.writerow(featurizer.transform_one(instance.post_text).tolist())

    if args.out is None:
        write_csv(sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_csv(fh)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="headline-scorer",
        description="Score headlines for clickbait: corpus splitting, training, "
        "prediction, and evaluation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_split = sub.add_parser("split", help="merge two corpora, balance classes, split train/validation")
    p_split.add_argument("--instances", action="append", required=True,
                         help="instances JSONL (give twice, one per corpus)")
    p_split.add_argument("--truth", action="append", required=True,
                         help="truth JSONL (give twice, matching --instances order)")
    p_split.add_argument("--out", required=True, help="output directory")
    p_split.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_split.add_argument("--train-fraction", type=float, default=DEFAULT_TRAIN_FRACTION)
    p_split.set_defaults(func=cmd_split)

    p_train = sub.add_parser("train", help="fit the linear model and write a model file")
    p_train.add_argument("--instances", required=True)
    p_train.add_argument("--truth", required=True)
    p_train.add_argument("--embeddings", required=True)
    p_train.add_argument("--model", required=True, help="path for the output model JSON")
    p_train.add_argument("--dims", type=int, default=DEFAULT_EMBEDDING_DIM,
                         help="required embedding dimension (default 300)")
    p_train.add_argument("--seed", type=int, default=DEFAULT_SEED,
                         help="recorded in model metadata")
    p_train.set_defaults(func=cmd_train)

    p_predict = sub.add_parser("predict", help="score instances with a trained model")
    p_predict.add_argument("--model", required=True)
    p_predict.add_argument("--instances", required=True)
    p_predict.add_argument("--embeddings", required=True)
    p_predict.add_argument("--out", help="predictions JSONL path (default: stdout)")
    p_predict.set_defaults(func=cmd_predict)

    p_eval = sub.add_parser("evaluate", help="compare a predictions file against truth")
    p_eval.add_argument("--predictions", required=True)
    p_eval.add_argument("--truth", required=True)
    p_eval.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p_eval.add_argument("--out", help="also write the report JSON here")
    p_eval.set_defaults(func=cmd_evaluate)

    p_features = sub.add_parser("features", help="dump the feature matrix as CSV")
    p_features.add_argument("--instances", required=True)
    p_features.add_argument("--embeddings", required=True)
    p_features.add_argument("--dims", type=int, default=DEFAULT_EMBEDDING_DIM,
                            help="required embedding dimension (default 300)")
    p_features.add_argument("--out", help="CSV path (default: stdout)")
    p_features.set_defaults(func=cmd_features)

    return parser


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ModelLoadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except np.linalg.LinAlgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (OSError, CorpusError, EmbeddingFormatError, EvaluationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
