"""Learning social influence from action logs, and predicting behavior with it."""

from ._socinf import (
    Dataset,
    DnnModel,
    InputError,
    SocinfError,
    combine_joint_probability,
    estimate,
    evaluate,
    ic_em_fit,
    lt_predict,
    roc_curve,
    synthesize,
    train_dnn,
)

__all__ = [
    "Dataset",
    "DnnModel",
    "InputError",
    "SocinfError",
    "combine_joint_probability",
    "estimate",
    "evaluate",
    "ic_em_fit",
    "lt_predict",
    "roc_curve",
    "synthesize",
    "train_dnn",
]

__version__ = "0.1.0"
