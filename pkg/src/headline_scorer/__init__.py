"""Clickbait scoring for tweet headlines.

Hand-crafted text features plus averaged pre-trained word embeddings feed
an unregularized linear regression that predicts a clickbait score in
[0, 1] per headline. The package exposes sklearn-style estimators
(HeadlineFeaturizer, LeastSquaresRegressor, ClickbaitScorer), corpus and
embedding loaders, the evaluation metric suite, and a CLI entry point.
"""

from .corpus import (
    BalanceError,
    ClassLabel,
    CorpusError,
    CorpusFormatError,
    CorpusValidationError,
    DuplicateIdError,
    Instance,
    LabeledDataset,
    TruthLabel,
    join,
    load_instances,
    load_labeled,
    load_truth,
    merge_balance_split,
    write_instances,
    write_truth,
)
from .embeddings import (
    EmbeddingDimensionError,
    EmbeddingFormatError,
    EmbeddingTable,
    average_embedding,
    load_embeddings,
)
from .features import (
    HANDCRAFTED_NAMES,
    FeatureLexicons,
    HandcraftedFeatures,
    HeadlineFeaturizer,
    default_lexicons,
    extract_handcrafted,
    feature_names,
    featurize_dataset,
)
from .metrics import (
    ClassificationMetrics,
    Confusion,
    EvaluationError,
    MetricsReport,
    RegressionMetrics,
    classification_metrics,
    evaluate,
    evaluate_records,
    load_predictions,
    regression_metrics,
)
from .model import (
    LeastSquaresRegressor,
    ModelDimensionError,
    ModelFormatError,
    ModelLoadError,
    ModelVersionError,
    Prediction,
    clamp_unit,
    load_model,
    predict_score,
    save_model,
)
from .pipeline import ClickbaitScorer, score_instances
from .text import StopwordList, Token, count_stopwords, default_stopwords, tokenize

__version__ = "0.1.0"

__all__ = [
    "BalanceError",
    "ClassLabel",
    "ClassificationMetrics",
    "ClickbaitScorer",
    "Confusion",
    "CorpusError",
    "CorpusFormatError",
    "CorpusValidationError",
    "DuplicateIdError",
    "EmbeddingDimensionError",
    "EmbeddingFormatError",
    "EmbeddingTable",
    "EvaluationError",
    "FeatureLexicons",
    "HANDCRAFTED_NAMES",
    "HandcraftedFeatures",
    "HeadlineFeaturizer",
    "Instance",
    "LabeledDataset",
    "LeastSquaresRegressor",
    "MetricsReport",
    "ModelDimensionError",
    "ModelFormatError",
    "ModelLoadError",
    "ModelVersionError",
    "Prediction",
    "RegressionMetrics",
    "StopwordList",
    "Token",
    "TruthLabel",
    "average_embedding",
    "clamp_unit",
    "classification_metrics",
    "count_stopwords",
    "default_lexicons",
    "default_stopwords",
    "evaluate",
    "evaluate_records",
    "extract_handcrafted",
    "feature_names",
    "featurize_dataset",
    "join",
    "load_embeddings",
    "load_instances",
    "load_labeled",
    "load_model",
    "load_predictions",
    "load_truth",
    "merge_balance_split",
    "predict_score",
    "regression_metrics",
    "save_model",
    "score_instances",
    "tokenize",
    "write_instances",
    "write_truth",
    "__version__",
]
