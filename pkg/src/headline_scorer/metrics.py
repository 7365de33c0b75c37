"""Regression and classification metrics for scored headlines.

All variance-based quantities use the population convention (divide by n),
which makes nmse = 1 - r2 an exact identity. The code computes r2 from the
residual and total sums of squares and then derives nmse as 1.0 - r2, so
the identity holds bit for bit rather than merely to rounding.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .corpus import ClassLabel, TruthLabel, load_truth


class EvaluationError(ValueError):
    """Raised when an evaluation cannot be computed from the given inputs."""


class Confusion(NamedTuple):
    tp: int
    fp: int
    tn: int
    fn: int


class RegressionMetrics(NamedTuple):
    mse: float
    mae: float
    median_ae: float
    nmse: float | None
    explained_variance: float | None
    r2: float | None


class ClassificationMetrics(NamedTuple):
    precision: float
    recall: float
    f1: float
    accuracy: float
    confusion: Confusion


@dataclass(frozen=True)
class MetricsReport:
    """The full evaluation report: ten statistics plus confusion counts."""

    mse: float
    median_ae: float
    mae: float
    nmse: float | None
    explained_variance: float | None
    r2: float | None
    precision: float
    recall: float
    f1: float
    accuracy: float
    confusion: Confusion
    n: int

    def to_dict(self) -> dict:
        return {
            "mse": self.mse,
            "median_ae": self.median_ae,
            "mae": self.mae,
            "nmse": self.nmse,
            "explained_variance": self.explained_variance,
            "r2": self.r2,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "accuracy": self.accuracy,
            "confusion": {
                "tp": self.confusion.tp,
                "fp": self.confusion.fp,
                "tn": self.confusion.tn,
                "fn": self.confusion.fn,
            },
            "n": self.n,
        }

    def to_json(self) -> str:
        # None becomes null; no NaN can reach here by construction.
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2)


def _as_finite_vector(values, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def _median(sorted_values: np.ndarray) -> float:
    n = len(sorted_values)
    mid = n // 2
    if n % 2 == 1:
        return float(sorted_values[mid])
    return float((sorted_values[mid - 1] + sorted_values[mid]) / 2.0)


def regression_metrics(y, yhat) -> RegressionMetrics:
    """Compute mse, mae, median_ae, nmse, explained_variance, r2.

    Requires n >= 2. When the truth values have zero variance the three
    variance-normalized metrics are undefined and returned as None.
    """
    y = _as_finite_vector(y, "y")
    yhat = _as_finite_vector(yhat, "yhat")
    if len(y) != len(yhat):
        raise ValueError(f"length mismatch: {len(y)} truth values vs {len(yhat)} predictions")
    n = len(y)
    if n < 2:
        raise ValueError("regression metrics require at least 2 records")

    residuals = y - yhat
    abs_errors = np.abs(residuals)
    mse = float(np.sum(residuals * residuals) / n)
    mae = float(np.sum(abs_errors) / n)
    median_ae = _median(np.sort(abs_errors))

    sse = float(np.sum(residuals * residuals))
    y_mean = float(np.sum(y) / n)
    sst = float(np.sum((y - y_mean) ** 2))
    if sst == 0.0:
        return RegressionMetrics(mse, mae, median_ae, None, None, None)

    r2 = 1.0 - sse / sst
    nmse = 1.0 - r2
    resid_mean = float(np.sum(residuals) / n)
    resid_var = float(np.sum((residuals - resid_mean) ** 2) / n)
    explained_variance = 1.0 - resid_var / (sst / n)
    return RegressionMetrics(mse, mae, median_ae, nmse, explained_variance, r2)


def _is_positive(label) -> bool:
    if isinstance(label, ClassLabel):
        return label is ClassLabel.CLICKBAIT
    return ClassLabel.from_string(label) is ClassLabel.CLICKBAIT


def f1_score(precision: float, recall: float) -> float:
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def classification_metrics(labels, scores, threshold: float = 0.5) -> ClassificationMetrics:
    """Threshold scores into classes and compare against true labels.

    Predicted class is clickbait iff score >= threshold; clickbait is the
    positive class. Degenerate denominators yield 0, never an error.
    """
    labels = list(labels)
    scores = _as_finite_vector(scores, "scores")
    if len(labels) != len(scores):
        raise ValueError(f"length mismatch: {len(labels)} labels vs {len(scores)} scores")
    if not labels:
        raise ValueError("classification metrics require at least 1 record")

    tp = fp = tn = fn = 0
    for label, score in zip(labels, scores):
        truth_positive = _is_positive(label)
        predicted_positive = score >= threshold
        if predicted_positive and truth_positive:
            tp += 1
        elif predicted_positive:
            fp += 1
        elif truth_positive:
            fn += 1
        else:
            tn += 1

    precision = tp / (tp + fp) if tp + fp > 0 else 0.0
    recall = tp / (tp + fn) if tp + fn > 0 else 0.0
    accuracy = (tp + tn) / len(labels)
    return ClassificationMetrics(
        precision=precision,
        recall=recall,
        f1=f1_score(precision, recall),
        accuracy=accuracy,
        confusion=Confusion(tp, fp, tn, fn),
    )


def load_predictions(path) -> dict[str, float]:
    """Read a predictions JSONL file into an id -> clamped score mapping.

    Each line must be an object with "id" and a finite numeric
    "clickbaitScore". Scores are clamped into [0, 1] on read; evaluation
    is defined on clamped scores regardless of what a scorer emitted.
    """
    scores: dict[str, float] = {}
    with open(path, encoding="utf-8-sig") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise EvaluationError(f"{path}:{lineno}: malformed JSON: {exc.msg}") from exc
            if not isinstance(record, dict):
                raise EvaluationError(f"{path}:{lineno}: each line must be a JSON object")
            if "id" not in record or "clickbaitScore" not in record:
                raise EvaluationError(
                    f"{path}:{lineno}: prediction needs 'id' and 'clickbaitScore' fields"
                )
            instance_id = record["id"]
            if isinstance(instance_id, bool) or not isinstance(instance_id, (str, int)):
                raise EvaluationError(f"{path}:{lineno}: id must be a string or integer")
            instance_id = str(instance_id)
            score = record["clickbaitScore"]
            if isinstance(score, bool) or not isinstance(score, (int, float)):
                raise EvaluationError(f"{path}:{lineno}: clickbaitScore must be a number")
            score = float(score)
            if not math.isfinite(score):
                raise EvaluationError(f"{path}:{lineno}: clickbaitScore must be finite")
            if instance_id in scores:
                raise EvaluationError(f"{path}:{lineno}: duplicate prediction id {instance_id!r}")
            scores[instance_id] = min(1.0, max(0.0, score))
    return scores


def evaluate_records(
    truths: Sequence[TruthLabel], scores: dict[str, float], threshold: float = 0.5
) -> MetricsReport:
    """Join truth records with predicted scores by id and compute all metrics.

    Records are paired in truth order; truth records without a prediction
    and predictions without a truth record are dropped from the join. At
    least two shared ids are required.
    """
    seen: set[str] = set()
    joined_y: list[float] = []
    joined_scores: list[float] = []
    joined_labels: list[ClassLabel] = []
    for truth in truths:
        if truth.id in seen:
            raise EvaluationError(f"duplicate truth id {truth.id!r}")
        seen.add(truth.id)
        if truth.id not in scores:
            continue
        joined_y.append(truth.mean)
        joined_scores.append(scores[truth.id])
        joined_labels.append(truth.class_label)

    n = len(joined_y)
    if n < 2:
        raise EvaluationError(
            f"evaluation requires at least 2 shared ids between predictions and truth, found {n}"
        )
    unmatched_truth = len(truths) - n
    unmatched_predictions = len(scores) - n
    if unmatched_truth or unmatched_predictions:
        warnings.warn(
            f"evaluation join dropped {unmatched_truth} truth record(s) and "
            f"{unmatched_predictions} prediction(s) with no counterpart",
            stacklevel=2,
        )

    reg = regression_metrics(joined_y, joined_scores)
    cls = classification_metrics(joined_labels, joined_scores, threshold=threshold)
    return MetricsReport(
        mse=reg.mse,
        median_ae=reg.median_ae,
        mae=reg.mae,
        nmse=reg.nmse,
        explained_variance=reg.explained_variance,
        r2=reg.r2,
        precision=cls.precision,
        recall=cls.recall,
        f1=cls.f1,
        accuracy=cls.accuracy,
        confusion=cls.confusion,
        n=n,
    )


def evaluate(predictions_path, truth_path, threshold: float = 0.5) -> MetricsReport:
    """Evaluate a predictions file against a truth file."""
    scores = load_predictions(predictions_path)
    truths = load_truth(truth_path)
    return evaluate_records(truths, scores, threshold=threshold)
