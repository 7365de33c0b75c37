"""Shared fixtures: tiny embedding tables, corpus file writers."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from headline_scorer.embeddings import EmbeddingTable

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

FIXTURES_DIR = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES_DIR


@pytest.fixture
def tiny_table() -> EmbeddingTable:
    return EmbeddingTable(
        dimension=2,
        vectors={
            "a": np.array([1.0, 2.0], dtype=np.float32),
            "b": np.array([3.0, 4.0], dtype=np.float32),
        },
    )


def write_jsonl(path, rows) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row, ensure_ascii=False) + "\n")
    return path


@pytest.fixture
def jsonl_writer(tmp_path):
    def write(name, rows):
        return write_jsonl(tmp_path / name, rows)

    return write


def truth_row(instance_id, mean, judgments=None):
    """Build a consistent truth JSONL row from an id and target mean."""
    if judgments is None:
        judgments = [mean] * 5
    label = "clickbait" if mean > 0.5 else "no-clickbait"
    return {
        "id": instance_id,
        "truthJudgments": judgments,
        "truthMean": mean,
        "truthClass": label,
    }


@pytest.fixture
def corpus_writer(tmp_path):
    """Write paired instances/truth files from (id, text, mean) triples."""

    def write(prefix, triples):
        instances = [{"id": i, "postText": [text]} for i, text, _ in triples]
        truths = [truth_row(i, mean) for i, _, mean in triples]
        inst_path = write_jsonl(tmp_path / f"{prefix}-instances.jsonl", instances)
        truth_path = write_jsonl(tmp_path / f"{prefix}-truth.jsonl", truths)
        return inst_path, truth_path

    return write


@pytest.fixture
def embedding_writer(tmp_path):
    """Write a plain-text embedding file from (token, vector) pairs."""

    def write(rows, name="embeddings.txt"):
        path = tmp_path / name
        lines = [
            token + " " + " ".join(repr(float(v)) for v in vector)
            for token, vector in rows
        ]
        path.write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")
        return path

    return write
