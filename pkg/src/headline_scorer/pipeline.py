"""End-to-end scorer: featurization composed with the linear model."""

from __future__ import annotations

from typing import Iterable

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.exceptions import NotFittedError

from ._validation import check_texts, check_vector
from .corpus import Instance
from .features import HeadlineFeaturizer
from .model import LeastSquaresRegressor, Prediction, clamp_unit


class ClickbaitScorer(RegressorMixin, BaseEstimator):
    """Featurize headlines and regress clickbait scores in one estimator.

    Parameters mirror HeadlineFeaturizer: an EmbeddingTable is required at
    fit time, stopwords and lexicons default to the bundled lists.
    predict returns scores clamped into [0, 1].
    """

    def __init__(self, embeddings=None, stopwords=None, lexicons=None):
        self.embeddings = embeddings
        self.stopwords = stopwords
        self.lexicons = lexicons

    def fit(self, X, y):
        texts = check_texts(X)
        y = check_vector(y, length=len(texts))
        self.featurizer_ = HeadlineFeaturizer(
            embeddings=self.embeddings,
            stopwords=self.stopwords,
            lexicons=self.lexicons,
        ).fit(texts)
        features = self.featurizer_.transform(texts)
        self.regressor_ = LeastSquaresRegressor().fit(features, y)
        self.n_features_in_ = 1
        return self

    def _check_fitted(self):
        if not hasattr(self, "regressor_"):
            raise NotFittedError("ClickbaitScorer is not fitted; call fit first")

    def predict(self, X) -> np.ndarray:
        self._check_fitted()
        texts = check_texts(X)
        raw = self.regressor_.predict(self.featurizer_.transform(texts))
        return np.clip(raw, 0.0, 1.0)


def score_instances(
    instances: Iterable[Instance],
    featurizer: HeadlineFeaturizer,
    regressor: LeastSquaresRegressor,
) -> list[Prediction]:
    """Score instances one by one, preserving input order."""
    predictions = []
    for instance in instances:
        x = featurizer.transform_one(instance.post_text)
        raw = float(x @ regressor.coef_ + regressor.intercept_)
        predictions.append(
            Prediction(id=instance.id, raw_score=raw, clamped_score=clamp_unit(raw))
        )
    return predictions
