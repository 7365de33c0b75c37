"""Unregularized least-squares regression with JSON model persistence.

The solve goes through an orthogonal rank-revealing decomposition (LAPACK
SVD via numpy.linalg.lstsq) rather than normal equations: the embedding
columns are correlated and squaring the condition number would cost real
precision. Rank-deficient systems get the minimum-norm solution, with
singular values below max(n, d+1) * eps * sigma_max treated as zero.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.exceptions import NotFittedError

from ._validation import check_matrix, check_vector

MODEL_FORMAT_VERSION = 1


class ModelLoadError(ValueError):
    """Base class for model-file loading failures."""


class ModelFormatError(ModelLoadError):
    """The file is not a well-formed model document."""


class ModelVersionError(ModelLoadError):
    """The file declares an unsupported format version."""


class ModelDimensionError(ModelLoadError):
    """Weight count and declared feature dimension disagree."""


def clamp_unit(x: float) -> float:
    """Clamp a score into [0, 1]."""
    return min(1.0, max(0.0, x))


@dataclass(frozen=True)
class Prediction:
    id: str
    raw_score: float
    clamped_score: float


class LeastSquaresRegressor(RegressorMixin, BaseEstimator):
    """Ordinary least squares with an intercept and no penalty.

    Fitted attributes: coef_ (weight per feature), intercept_, rank_ (rank
    of the intercept-augmented design matrix), n_features_in_, and
    metadata_ (provenance dict carried through save/load).
    """

    def fit(self, X, y):
        X = check_matrix(X)
        y = check_vector(y, length=X.shape[0])
        if X.shape[0] < 1:
            raise ValueError("fit requires at least one sample")
        design = np.hstack([X, np.ones((X.shape[0], 1))])
        rcond = max(design.shape) * np.finfo(np.float64).eps
        theta, _, rank, _ = np.linalg.lstsq(design, y, rcond=rcond)
        self.coef_ = theta[:-1]
        self.intercept_ = float(theta[-1])
        self.rank_ = int(rank)
        self.n_features_in_ = X.shape[1]
        self.metadata_ = getattr(self, "metadata_", {})
        return self

    def _check_fitted(self):
        if not hasattr(self, "coef_"):
            raise NotFittedError("LeastSquaresRegressor is not fitted; call fit first")

    def predict(self, X) -> np.ndarray:
        self._check_fitted()
        X = check_matrix(X, n_features=self.n_features_in_)
        return X @ self.coef_ + self.intercept_

    @property
    def feature_dimension(self) -> int:
        self._check_fitted()
        return self.n_features_in_


def predict_score(model: LeastSquaresRegressor, x, instance_id: str = "") -> Prediction:
    """Score a single feature vector, returning raw and clamped values."""
    x = check_vector(np.asarray(x, dtype=np.float64), name="x", length=model.feature_dimension)
    raw = float(x @ model.coef_ + model.intercept_)
    return Prediction(id=instance_id, raw_score=raw, clamped_score=clamp_unit(raw))


def _format_float(value: float) -> str:
    # 17 significant digits round-trips any double; force a decimal point
    # so values like -0.0 survive as floats.
    text = f"{float(value):.17g}"
    if not any(c in text for c in ".eE"):
        text += ".0"
    return text


def save_model(model: LeastSquaresRegressor, path, metadata: dict | None = None) -> None:
    """Serialize a fitted model to JSON with 17-significant-digit numbers.

    The written file is deterministic for a given model and metadata, so
    repeated training runs on identical inputs produce identical bytes.
    """
    model._check_fitted()
    weights = np.asarray(model.coef_, dtype=np.float64)
    if not (np.all(np.isfinite(weights)) and np.isfinite(model.intercept_)):
        raise ValueError("model parameters must be finite")
    meta = metadata if metadata is not None else getattr(model, "metadata_", {}) or {}
    document = "".join(
        [
            "{",
            f'"format_version": {MODEL_FORMAT_VERSION}, ',
            f'"feature_dimension": {int(model.n_features_in_)}, ',
            f'"intercept": {_format_float(model.intercept_)}, ',
            '"weights": [', ", ".join(_format_float(w) for w in weights), "], ",
            '"metadata": ', json.dumps(meta, sort_keys=True, ensure_ascii=False),
            "}",
        ]
    )
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(document + "\n")


def _reject_constant(name):
    raise ModelFormatError(f"non-finite number in model file: {name}")


def load_model(path) -> LeastSquaresRegressor:
    """Load a model written by save_model; round-trips parameters bit-exactly."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        document = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"{path}: malformed model file: {exc.msg}") from exc
    if not isinstance(document, dict):
        raise ModelFormatError(f"{path}: model file must contain a JSON object")

    if "format_version" not in document:
        raise ModelFormatError(f"{path}: missing format_version")
    version = document["format_version"]
    if version != MODEL_FORMAT_VERSION:
        raise ModelVersionError(
            f"{path}: unsupported format_version {version!r}, expected {MODEL_FORMAT_VERSION}"
        )

    dimension = document.get("feature_dimension")
    if isinstance(dimension, bool) or not isinstance(dimension, int) or dimension <= 0:
        raise ModelFormatError(f"{path}: feature_dimension must be a positive integer")

    raw_weights = document.get("weights")
    if not isinstance(raw_weights, list) or any(
        isinstance(w, bool) or not isinstance(w, (int, float)) for w in raw_weights
    ):
        raise ModelFormatError(f"{path}: weights must be an array of numbers")
    if len(raw_weights) != dimension:
        raise ModelDimensionError(
            f"{path}: {len(raw_weights)} weights for declared dimension {dimension}"
        )
    weights = np.asarray(raw_weights, dtype=np.float64)

    intercept = document.get("intercept")
    if isinstance(intercept, bool) or not isinstance(intercept, (int, float)):
        raise ModelFormatError(f"{path}: intercept must be a number")
    if not (np.all(np.isfinite(weights)) and np.isfinite(intercept)):
        raise ModelFormatError(f"{path}: model parameters must be finite")

    metadata = document.get("metadata", {})
    if not isinstance(metadata, dict):
        raise ModelFormatError(f"{path}: metadata must be an object")

    model = LeastSquaresRegressor()
    model.coef_ = weights
    model.intercept_ = float(intercept)
    model.n_features_in_ = dimension
    model.rank_ = -1  # unknown after deserialization
    model.metadata_ = metadata
    return model
