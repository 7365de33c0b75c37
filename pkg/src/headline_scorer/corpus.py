"""Corpus ingestion: JSONL loading, truth joining, and the balanced split.

Instances and truth labels live in separate JSONL files keyed by id. The
split procedure concatenates two labeled corpora, downsamples the majority
class to the minority count, shuffles, and cuts train/validation by a
half-up rounded fraction. All randomness flows through the repo's own
generator so a seed pins the split bytes.
"""

from __future__ import annotations

import enum
import json
import logging
import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path

from .rng import Xorshift64Star

logger = logging.getLogger(__name__)

MEAN_TOLERANCE = 1e-6


class CorpusError(ValueError):
    """Base class for corpus loading and splitting failures."""


class CorpusFormatError(CorpusError):
    """A line could not be parsed (bad JSON, missing/ill-typed fields)."""


class CorpusValidationError(CorpusError):
    """Parsed values violate their domain (e.g. a mean outside [0, 1])."""


class DuplicateIdError(CorpusError):
    """The same id occurs twice within one input."""


class BalanceError(CorpusError):
    """Class balancing is impossible because one class is empty."""


class ClassLabel(enum.Enum):
    CLICKBAIT = "clickbait"
    NO_CLICKBAIT = "no-clickbait"

    @classmethod
    def from_string(cls, value: str) -> "ClassLabel":
        for member in cls:
            if member.value == value:
                return member
        raise CorpusValidationError(f"unknown class label: {value!r}")


@dataclass(frozen=True)
class Instance:
    """One tweet post: id plus headline text; other fields ride along unused."""

    id: str
    post_text: str
    extra: dict = field(default_factory=dict)


@dataclass(frozen=True)
class TruthLabel:
    id: str
    judgments: tuple[float, ...]
    mean: float
    class_label: ClassLabel


@dataclass(frozen=True)
class LabeledDataset:
    """Instances joined to their truth labels, in a fixed record order."""

    records: tuple[tuple[Instance, TruthLabel], ...]
    provenance: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.records)

    def class_counts(self) -> dict[str, int]:
        counts = {label.value: 0 for label in ClassLabel}
        for _, truth in self.records:
            counts[truth.class_label.value] += 1
        return counts


def _parse_jsonl(path):
    """Yield (lineno, object) for each non-blank line of a JSONL file."""
    with open(path, encoding="utf-8-sig") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusFormatError(f"{path}:{lineno}: malformed JSON: {exc.msg}") from exc
            if not isinstance(obj, dict):
                raise CorpusFormatError(f"{path}:{lineno}: expected a JSON object")
            yield lineno, obj


def _normalize_id(obj: dict, path, lineno: int) -> str:
    value = obj.get("id")
    if isinstance(value, bool) or value is None:
        raise CorpusFormatError(f"{path}:{lineno}: missing id field")
    if isinstance(value, str):
        normalized = value.strip()
    elif isinstance(value, (int, float)):
        normalized = str(value)
    else:
        raise CorpusFormatError(f"{path}:{lineno}: id must be a string or number")
    if not normalized:
        raise CorpusFormatError(f"{path}:{lineno}: missing id field")
    return normalized


def load_instances(path) -> list[Instance]:
    """Load instances from JSONL: one object per line with id and postText.

    A postText given as a list of strings is joined with single spaces; a
    missing postText is tolerated as the empty string.
    """
    instances = []
    for lineno, obj in _parse_jsonl(path):
        instance_id = _normalize_id(obj, path, lineno)
        raw_text = obj.get("postText", "")
        if isinstance(raw_text, str):
            post_text = raw_text
        elif isinstance(raw_text, list) and all(isinstance(part, str) for part in raw_text):
            post_text = " ".join(raw_text)
        else:
            raise CorpusFormatError(
                f"{path}:{lineno}: postText must be a string or an array of strings"
            )
        extra = {k: v for k, v in obj.items() if k not in ("id", "postText")}
        instances.append(Instance(id=instance_id, post_text=post_text, extra=extra))
    logger.info("loaded %d instances from %s", len(instances), path)
    return instances


def load_truth(path) -> list[TruthLabel]:
    """Load truth labels from JSONL (id, truthJudgments, truthMean, truthClass).

    Judgments may be stored as integers or reals; both normalize to float.
    A stored mean that disagrees with the judgment average beyond 1e-6, or a
    stored class that disagrees with mean > 0.5, is reported as a warning,
    not an error; the stored values win.
    """
    labels = []
    mean_mismatches = []
    class_mismatches = []
    for lineno, obj in _parse_jsonl(path):
        label_id = _normalize_id(obj, path, lineno)

        raw_judgments = obj.get("truthJudgments", [])
        if not isinstance(raw_judgments, list) or any(
            isinstance(j, bool) or not isinstance(j, (int, float)) for j in raw_judgments
        ):
            raise CorpusFormatError(f"{path}:{lineno}: truthJudgments must be an array of numbers")
        judgments = tuple(float(j) for j in raw_judgments)
        if any(not 0.0 <= j <= 1.0 for j in judgments):
            raise CorpusValidationError(f"{path}:{lineno}: judgment outside [0, 1]")

        raw_mean = obj.get("truthMean")
        if isinstance(raw_mean, bool) or not isinstance(raw_mean, (int, float)):
            raise CorpusFormatError(f"{path}:{lineno}: missing or non-numeric truthMean")
        mean = float(raw_mean)
        if not 0.0 <= mean <= 1.0:
            raise CorpusValidationError(f"{path}:{lineno}: truthMean {mean} outside [0, 1]")

        raw_class = obj.get("truthClass")
        if not isinstance(raw_class, str):
            raise CorpusFormatError(f"{path}:{lineno}: missing truthClass")
        class_label = ClassLabel.from_string(raw_class)

        if judgments and abs(mean - sum(judgments) / len(judgments)) > MEAN_TOLERANCE:
            mean_mismatches.append(label_id)
        implied = ClassLabel.CLICKBAIT if mean > 0.5 else ClassLabel.NO_CLICKBAIT
        if implied is not class_label:
            class_mismatches.append(label_id)

        labels.append(TruthLabel(id=label_id, judgments=judgments, mean=mean, class_label=class_label))

    if mean_mismatches:
        warnings.warn(
            f"{path}: {len(mean_mismatches)} truth records where truthMean does not match "
            f"the judgment average (first: {mean_mismatches[0]})"
        )
    if class_mismatches:
        warnings.warn(
            f"{path}: {len(class_mismatches)} truth records where truthClass disagrees with "
            f"truthMean > 0.5 (first: {class_mismatches[0]}); keeping the stored class"
        )
    logger.info("loaded %d truth labels from %s", len(labels), path)
    return labels


def join(instances, truths, provenance=()) -> LabeledDataset:
    """Join instances and truth labels on id, in instance order.

    Ids present in only one input are dropped with a warning naming the
    counts. Duplicate ids within either input are an error.
    """
    truth_by_id = {}
    for truth in truths:
        if truth.id in truth_by_id:
            raise DuplicateIdError(f"duplicate id in truth input: {truth.id}")
        truth_by_id[truth.id] = truth

    seen = set()
    records = []
    for instance in instances:
        if instance.id in seen:
            raise DuplicateIdError(f"duplicate id in instance input: {instance.id}")
        seen.add(instance.id)
        truth = truth_by_id.get(instance.id)
        if truth is not None:
            records.append((instance, truth))

    unmatched_instances = len(seen) - len(records)
    unmatched_truths = len(truth_by_id) - len(records)
    if unmatched_instances or unmatched_truths:
        warnings.warn(
            f"dropped {unmatched_instances} instances without truth and "
            f"{unmatched_truths} truth labels without instance"
        )
    return LabeledDataset(records=tuple(records), provenance=tuple(provenance))


def load_labeled(instances_path, truth_path) -> LabeledDataset:
    """Load and join an instances file and a truth file."""
    return join(
        load_instances(instances_path),
        load_truth(truth_path),
        provenance=(Path(instances_path).name, Path(truth_path).name),
    )


def _round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


def merge_balance_split(
    a: LabeledDataset,
    b: LabeledDataset,
    train_fraction: float = 0.8,
    seed: int = 42,
) -> tuple[LabeledDataset, LabeledDataset]:
    """Concatenate two corpora, balance classes, and split train/validation.

    All minority-class records are kept; the majority class is downsampled
    uniformly without replacement to the same count. The balanced pool is
    shuffled and the first round(train_fraction * size) records (half-up)
    become the training set. One seeded generator drives both the sampling
    and the shuffle, so a seed fixes the split exactly.
    """
    if not 0.0 < train_fraction < 1.0:
        raise ValueError(f"train_fraction must be in (0, 1), got {train_fraction}")

    records = a.records + b.records
    clickbait_idx = [
        i for i, (_, truth) in enumerate(records) if truth.class_label is ClassLabel.CLICKBAIT
    ]
    other_idx = [
        i for i, (_, truth) in enumerate(records) if truth.class_label is ClassLabel.NO_CLICKBAIT
    ]
    if not clickbait_idx or not other_idx:
        raise BalanceError("cannot balance: one class is empty after merge")

    if len(clickbait_idx) <= len(other_idx):
        minority, majority = clickbait_idx, other_idx
    else:
        minority, majority = other_idx, clickbait_idx

    rng = Xorshift64Star(seed)
    picked = rng.sample(len(majority), len(minority))
    keep = sorted(minority + [majority[j] for j in picked])
    pool = [records[i] for i in keep]
    rng.shuffle(pool)

    n_train = _round_half_up(train_fraction * len(pool))
    provenance = a.provenance + b.provenance
    train = LabeledDataset(records=tuple(pool[:n_train]), provenance=provenance)
    validation = LabeledDataset(records=tuple(pool[n_train:]), provenance=provenance)
    logger.info(
        "balanced pool of %d records (%d per class); train %d, validation %d",
        len(pool), len(minority), len(train), len(validation),
    )
    return train, validation


def write_instances(dataset: LabeledDataset, path) -> None:
    """Write the dataset's instances as JSONL, extra fields included."""
    with open(path, "w", encoding="utf-8") as fh:
        for instance, _ in dataset.records:
            obj = {"id": instance.id, "postText": [instance.post_text], **instance.extra}
            fh.write(json.dumps(obj, ensure_ascii=False, sort_keys=True) + "\n")


def write_truth(dataset: LabeledDataset, path) -> None:
    """Write the dataset's truth labels as JSONL in the canonical field set."""
    with open(path, "w", encoding="utf-8") as fh:
        for _, truth in dataset.records:
            obj = {
                "id": truth.id,
                "truthJudgments": list(truth.judgments),
                "truthMean": truth.mean,
                "truthClass": truth.class_label.value,
            }
            fh.write(json.dumps(obj, ensure_ascii=False, sort_keys=True) + "\n")
