"""Hard monotonic attention transducer for morphological inflection."""

from hardmono._core import (
    DataError,
    Model,
    NumericError,
    ShapeError,
    align_corpus,
    derive_actions,
    ensemble_predict,
    exact_match_accuracy,
    execute_actions,
    load_model,
    svd,
    train,
)

__all__ = [
    "DataError",
    "Model",
    "NumericError",
    "ShapeError",
    "align_corpus",
    "derive_actions",
    "ensemble_predict",
    "exact_match_accuracy",
    "execute_actions",
    "load_model",
    "svd",
    "train",
]
