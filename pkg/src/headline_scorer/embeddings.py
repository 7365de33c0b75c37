"""Word-embedding table: text-format loader and mean pooling.

The file format is one token per line followed by D space-separated
decimal components (the format published GloVe vectors ship in). Vectors
are stored in single precision to keep a 400k x 300 table around 0.5 GB
of headroom; means are accumulated in double precision.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass

import numpy as np

from .text import Token

logger = logging.getLogger(__name__)


class EmbeddingFormatError(ValueError):
    """The embedding file is malformed (wrong arity, non-numeric, empty)."""


class EmbeddingDimensionError(EmbeddingFormatError):
    """The file's vector width disagrees with the expected dimension."""


@dataclass(frozen=True)
class EmbeddingTable:
    """Lowercase token -> vector map with a single fixed dimension."""

    dimension: int
    vectors: dict

    def __contains__(self, token: str) -> bool:
        return token in self.vectors

    def __len__(self) -> int:
        return len(self.vectors)

    def get(self, token: str):
        return self.vectors.get(token)


def load_embeddings(path, expected_dim: int | None = None) -> EmbeddingTable:
    """Load an embedding table from text format.

    The dimension is inferred from the first line and must match
    expected_dim when given. Duplicate tokens (after lowercasing) keep the
    first occurrence and produce one aggregate warning.
    """
    vectors: dict = {}
    dimension = None
    duplicates = 0
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.split()
            if not parts:
                continue
            token = parts[0].lower()
            try:
                vector = np.asarray(parts[1:], dtype=np.float32)
            except ValueError as exc:
                raise EmbeddingFormatError(
                    f"{path}:{lineno}: non-numeric vector component"
                ) from exc
            if dimension is None:
                if len(vector) == 0:
                    raise EmbeddingFormatError(f"{path}:{lineno}: line has no vector components")
                dimension = len(vector)
                if expected_dim is not None and dimension != expected_dim:
                    raise EmbeddingDimensionError(
                        f"{path}: dimension {dimension} does not match expected {expected_dim}"
                    )
            elif len(vector) != dimension:
                raise EmbeddingFormatError(
                    f"{path}:{lineno}: expected {dimension} components, found {len(vector)}"
                )
            if not np.all(np.isfinite(vector)):
                raise EmbeddingFormatError(f"{path}:{lineno}: non-finite vector component")
            if token in vectors:
                duplicates += 1
                continue
            vectors[token] = vector
    if dimension is None:
        raise EmbeddingFormatError(f"{path}: embedding file is empty")
    if duplicates:
        warnings.warn(f"{path}: {duplicates} duplicate tokens ignored (first occurrence kept)")
    logger.info("loaded %d embeddings of dimension %d from %s", len(vectors), dimension, path)
    return EmbeddingTable(dimension=dimension, vectors=vectors)


def average_embedding(tokens: list[Token], table: EmbeddingTable) -> np.ndarray:
    """Mean of the table vectors for in-vocabulary tokens.

    Tokens absent from the table are skipped and do not enter the
    denominator; with no in-vocabulary token the result is the zero vector.
    Summation follows token order, in double precision.
    """
    total = np.zeros(table.dimension, dtype=np.float64)
    found = 0
    for token in tokens:
        vector = table.vectors.get(token.lower)
        if vector is not None:
            total += vector
            found += 1
    if found:
        total /= found
    return total
