"""Feature extraction: seven hand-crafted headline signals plus the pooled
embedding, assembled into one fixed-order vector.

Vector layout (for a D-dimensional embedding table the total is 7 + D):

    0  n_words            token count
    1  n_stopwords        tokens found in the stopword list
    2  avg_word_len       mean characters per token surface (0 if no tokens)
    3  has_question_form  a question word occurs anywhere in the headline
    4  starts_with_digit  first token begins with a decimal digit
    5  has_gerund         "-ing" suffix heuristic with an exception list
    6  has_superlative    "-est" suffix heuristic plus irregulars, minus
                          an exclusion list
    7+ mean embedding
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from ._validation import check_texts
from .corpus import LabeledDataset
from .embeddings import EmbeddingTable, average_embedding
from .text import (
    StopwordList,
    Token,
    count_stopwords,
    default_stopwords,
    packaged_text,
    read_word_list,
    tokenize,
)

HANDCRAFTED_NAMES = (
    "n_words",
    "n_stopwords",
    "avg_word_len",
    "has_question_form",
    "starts_with_digit",
    "has_gerund",
    "has_superlative",
)

QUESTION_WORDS_FILENAME = "question_words.txt"
GERUND_EXCEPTIONS_FILENAME = "gerund_exceptions.txt"
SUPERLATIVE_IRREGULARS_FILENAME = "superlative_irregulars.txt"
SUPERLATIVE_EXCLUSIONS_FILENAME = "superlative_exclusions.txt"

LEXICON_FILENAMES = (
    QUESTION_WORDS_FILENAME,
    GERUND_EXCEPTIONS_FILENAME,
    SUPERLATIVE_IRREGULARS_FILENAME,
    SUPERLATIVE_EXCLUSIONS_FILENAME,
)


@dataclass(frozen=True)
class FeatureLexicons:
    """Word lists backing the question/gerund/superlative heuristics."""

    question_words: frozenset[str]
    gerund_exceptions: frozenset[str]
    superlative_irregulars: frozenset[str]
    superlative_exclusions: frozenset[str]


@lru_cache(maxsize=1)
def default_lexicons() -> FeatureLexicons:
    """The lexicons bundled with the package."""
    return FeatureLexicons(
        question_words=read_word_list(
            packaged_text(QUESTION_WORDS_FILENAME), QUESTION_WORDS_FILENAME
        ),
        gerund_exceptions=read_word_list(
            packaged_text(GERUND_EXCEPTIONS_FILENAME), GERUND_EXCEPTIONS_FILENAME
        ),
        superlative_irregulars=read_word_list(
            packaged_text(SUPERLATIVE_IRREGULARS_FILENAME), SUPERLATIVE_IRREGULARS_FILENAME
        ),
        superlative_exclusions=read_word_list(
            packaged_text(SUPERLATIVE_EXCLUSIONS_FILENAME), SUPERLATIVE_EXCLUSIONS_FILENAME
        ),
    )


@dataclass(frozen=True)
class HandcraftedFeatures:
    n_words: int
    n_stopwords: int
    avg_word_len: float
    has_question_form: int
    starts_with_digit: int
    has_gerund: int
    has_superlative: int

    def as_array(self) -> np.ndarray:
        return np.array(
            [
                self.n_words,
                self.n_stopwords,
                self.avg_word_len,
                self.has_question_form,
                self.starts_with_digit,
                self.has_gerund,
                self.has_superlative,
            ],
            dtype=np.float64,
        )


def _is_gerund(lower: str, lex: FeatureLexicons) -> bool:
    return lower.endswith("ing") and len(lower) >= 5 and lower not in lex.gerund_exceptions


def _is_superlative(lower: str, lex: FeatureLexicons) -> bool:
    if lower in lex.superlative_irregulars:
        return True
    return lower.endswith("est") and len(lower) >= 4 and lower not in lex.superlative_exclusions


def _handcrafted_from_tokens(
    tokens: list[Token], stops: StopwordList, lex: FeatureLexicons
) -> HandcraftedFeatures:
    n_words = len(tokens)
    if n_words == 0:
        return HandcraftedFeatures(0, 0, 0.0, 0, 0, 0, 0)
    return HandcraftedFeatures(
        n_words=n_words,
        n_stopwords=count_stopwords(tokens, stops),
        avg_word_len=sum(len(t.surface) for t in tokens) / n_words,
        has_question_form=int(any(t.lower in lex.question_words for t in tokens)),
        starts_with_digit=int(tokens[0].surface[0].isdecimal()),
        has_gerund=int(any(_is_gerund(t.lower, lex) for t in tokens)),
        has_superlative=int(any(_is_superlative(t.lower, lex) for t in tokens)),
    )


def extract_handcrafted(
    text: str,
    stops: StopwordList | None = None,
    lex: FeatureLexicons | None = None,
) -> HandcraftedFeatures:
    """Compute the seven hand-crafted features for one headline."""
    stops = stops if stops is not None else default_stopwords()
    lex = lex if lex is not None else default_lexicons()
    return _handcrafted_from_tokens(tokenize(text), stops, lex)


def assemble(
    hc: HandcraftedFeatures,
    emb: np.ndarray,
    expected_dim: int | None = None,
) -> np.ndarray:
    """Concatenate hand-crafted features and the mean embedding."""
    emb = np.asarray(emb, dtype=np.float64)
    if emb.ndim != 1:
        raise ValueError(f"embedding must be 1-dimensional, got shape {emb.shape}")
    if expected_dim is not None and emb.shape[0] != expected_dim:
        raise ValueError(f"embedding has length {emb.shape[0]}, expected {expected_dim}")
    return np.concatenate([hc.as_array(), emb])


def feature_names(dimension: int) -> list[str]:
    """Column names for a feature matrix built over a D-dimensional table."""
    return list(HANDCRAFTED_NAMES) + [f"emb_{i:03d}" for i in range(dimension)]


class HeadlineFeaturizer(TransformerMixin, BaseEstimator):
    """Transformer mapping headline strings to (7 + D)-dimensional rows.

    Stateless apart from configuration; fit only resolves the bundled
    stopword list and lexicons when none are supplied.
    """

    def __init__(self, embeddings=None, stopwords=None, lexicons=None):
        self.embeddings = embeddings
        self.stopwords = stopwords
        self.lexicons = lexicons

    def fit(self, X=None, y=None):
        if not isinstance(self.embeddings, EmbeddingTable):
            raise ValueError("embeddings must be an EmbeddingTable")
        self.stopwords_ = self.stopwords if self.stopwords is not None else default_stopwords()
        self.lexicons_ = self.lexicons if self.lexicons is not None else default_lexicons()
        self.n_features_out_ = 7 + self.embeddings.dimension
        return self

    def _check_fitted(self):
        if not hasattr(self, "stopwords_"):
            raise NotFittedError("HeadlineFeaturizer is not fitted; call fit first")

    def transform(self, X) -> np.ndarray:
        self._check_fitted()
        texts = check_texts(X)
        out = np.empty((len(texts), self.n_features_out_), dtype=np.float64)
        for i, headline in enumerate(texts):
            out[i] = self.transform_one(headline)
        return out

    def transform_one(self, headline: str) -> np.ndarray:
        self._check_fitted()
        tokens = tokenize(headline)
        hc = _handcrafted_from_tokens(tokens, self.stopwords_, self.lexicons_)
        emb = average_embedding(tokens, self.embeddings)
        return assemble(hc, emb, expected_dim=self.embeddings.dimension)

    def get_feature_names_out(self, input_features=None):
        self._check_fitted()
        return np.asarray(feature_names(self.embeddings.dimension), dtype=object)


def featurize_dataset(
    ds: LabeledDataset,
    table: EmbeddingTable,
    stops: StopwordList | None = None,
    lex: FeatureLexicons | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Feature matrix and target vector for a labeled dataset, in record order."""
    featurizer = HeadlineFeaturizer(table, stops, lex).fit()
    X = featurizer.transform([instance.post_text for instance, _ in ds.records])
    y = np.array([truth.mean for _, truth in ds.records], dtype=np.float64)
    return X, y
